#include "cbc/homology.hpp"

#include <algorithm>
#include <sstream>

namespace cbc {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), offsets_(rows + 1, 0) {}

void SparseMatrix::add_row(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < entries.size();) {
        if (entries[i].first >= cols_) throw InvalidArgument("sparse entry column out of range");
        std::int64_t v = 0;
        std::size_t j = i;
        for (; j < entries.size() && entries[j].first == entries[i].first; ++j)
            if (__builtin_add_overflow(v, entries[j].second, &v)) throw Error("sparse entry overflow");
        if (v != 0) entries_.push_back({entries[i].first, v});
        i = j;
    }
    offsets_.push_back(entries_.size());
}

Matrix SparseMatrix::to_dense(Ring ring) const {
    Matrix m(ring, rows(), cols());
    for (std::size_t i = 0; i < rows(); ++i)
        for (auto [c, v] : row(i)) m(i, c) = Int(static_cast<long>(v));
    m.normalize();
    return m;
}

SparseMatrix SparseMatrix::from_dense(const Matrix& m) {
    SparseMatrix out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::vector<Entry> e;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Int& x = m(i, j);
            if (sgn(x) == 0) continue;
            if (!x.fits_slong_p()) throw Error("matrix entry too large for sparse storage");
            e.push_back({static_cast<std::uint32_t>(j), x.get_si()});
        }
        out.add_row(std::move(e));
    }
    return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& other) const {
    if (cols() != other.rows()) throw InvalidArgument("sparse product shape mismatch");
    SparseMatrix out(other.cols());
    std::vector<Entry> acc;
    for (std::size_t i = 0; i < rows(); ++i) {
        acc.clear();
        for (auto [k, v] : row(i))
            for (auto [c, w] : other.row(k)) {
                std::int64_t prod;
                if (__builtin_mul_overflow(v, w, &prod)) throw Error("sparse product overflow");
                acc.push_back({c, prod});
            }
        out.add_row(acc);
    }
    return out;
}

bool SparseMatrix::is_zero() const { return entries_.empty(); }

std::size_t ChainComplex::size(long d) const {
    if (d < min_degree || d > max_degree()) return 0;
    return sizes[static_cast<std::size_t>(d - min_degree)];
}

const SparseMatrix& ChainComplex::d(long degree) const {
    static const SparseMatrix empty;
    if (degree < min_degree || degree > max_degree()) return empty;
    return boundary[static_cast<std::size_t>(degree - min_degree)];
}

void ChainComplex::check() const {
    if (boundary.size() != sizes.size()) throw Error("chain complex: boundary count mismatch");
    for (long deg = min_degree; deg <= max_degree(); ++deg) {
        const auto& b = d(deg);
        if (b.rows() != size(deg) || b.cols() != size(deg - 1))
            throw Error("chain complex: boundary shape mismatch in degree " + std::to_string(deg));
        if (deg - 1 < min_degree) continue;
        const auto& b2 = d(deg - 1);
        std::vector<std::int64_t> acc(size(deg - 2), 0);
        std::vector<std::uint32_t> touched;
        for (std::size_t i = 0; i < b.rows(); ++i) {
            for (auto [k, v] : b.row(i))
                for (auto [c, w] : b2.row(k)) {
                    if (acc[c] == 0) touched.push_back(c);
                    acc[c] += v * w;
                }
            for (auto c : touched) {
                if (acc[c] != 0) throw Error("boundary squared is nonzero in degree " + std::to_string(deg));
            }
            touched.clear();
        }
    }
}

HomologyGroup HomologyProfile::at(long d) const {
    auto it = groups.find(d);
    return it == groups.end() ? HomologyGroup{} : it->second;
}

bool HomologyProfile::is_free() const {
    return std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.second.is_free(); });
}

HomologyProfile HomologyProfile::shifted(long k) const {
    HomologyProfile out;
    for (const auto& [d, g] : groups) out.groups[d + k] = g;
    return out;
}

HomologyProfile& HomologyProfile::operator+=(const HomologyProfile& other) {
    for (const auto& [d, g] : other.groups) {
        HomologyGroup& mine = groups[d];
        mine.betti += g.betti;
        if (g.torsion.empty()) continue;
        // invariant factors of the direct sum
        std::vector<Int> all = mine.torsion;
        all.insert(all.end(), g.torsion.begin(), g.torsion.end());
        Matrix diag(Ring::integers(), all.size(), all.size());
        for (std::size_t i = 0; i < all.size(); ++i) diag(i, i) = all[i];
        mine.torsion.clear();
        for (const Int& x : snf(diag))
            if (x != 1) mine.torsion.push_back(x);
    }
    return *this;
}

std::string HomologyProfile::to_string() const {
    if (groups.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [d, g] : groups) {
        if (!first) out << ", ";
        first = false;
        out << "H" << d << "=";
        bool any = false;
        if (g.betti) {
            out << "Z";
            if (g.betti > 1) out << "^" << g.betti;
            any = true;
        }
        for (const Int& t : g.torsion) {
            out << (any ? "+" : "") << "Z/" << t.get_str();
            any = true;
        }
    }
    return out.str();
}

ChainComplex chains(const SimplicialComplex& k) {
    ChainComplex c;
    c.min_degree = -1;
    c.sizes.push_back(1);
    c.boundary.emplace_back(0);
    c.boundary.back().add_row({});
    for (long d = 0; d <= k.dim(); ++d) {
        SparseMatrix b(d == 0 ? 1 : k.count(d - 1));
        Simplex face;
        for (std::size_t i = 0; i < k.count(d); ++i) {
            if (d == 0) {
                b.add_row({{0, 1}});
                continue;
            }
            auto s = k.simplex_view(d, i);
            std::vector<SparseMatrix::Entry> e;
            for (std::size_t j = 0; j < s.size(); ++j) {
                face.assign(s.begin(), s.end());
                face.erase(face.begin() + static_cast<long>(j));
                auto idx = k.index_of(face);
                if (!idx) throw Error("complex is not closed under faces");
                e.push_back({static_cast<std::uint32_t>(*idx), j % 2 ? -1 : 1});
            }
            b.add_row(std::move(e));
        }
        c.sizes.push_back(k.count(d));
        c.boundary.push_back(std::move(b));
    }
    c.check();
    return c;
}

ChainComplex relative_chains(const SimplicialComplex& x, const SimplicialComplex& y) {
    if (!is_subcomplex(y, x)) throw InvalidArgument("Y is not a subcomplex of X");
    // new index of each simplex of X, or -1 when it lies in Y
    std::vector<std::vector<long>> index(static_cast<std::size_t>(x.dim() + 1));
    for (long d = 0; d <= x.dim(); ++d) index[static_cast<std::size_t>(d)].assign(x.count(d), 0);
    Simplex t;
    for (long d = 0; d <= y.dim(); ++d)
        for (std::size_t i = 0; i < y.count(d); ++i) {
            t.clear();
            for (Vertex v : y.simplex_view(d, i)) t.push_back(*x.vertex_of(y.label(v)));
            index[static_cast<std::size_t>(d)][*x.index_of(t)] = -1;
        }
    ChainComplex c;
    c.min_degree = 0;
    for (long d = 0; d <= x.dim(); ++d) {
        auto& idx = index[static_cast<std::size_t>(d)];
        long next = 0;
        for (auto& v : idx) v = v < 0 ? -1 : next++;
        c.sizes.push_back(static_cast<std::size_t>(next));
    }
    for (long d = 0; d <= x.dim(); ++d) {
        SparseMatrix b(d == 0 ? 0 : c.size(d - 1));
        const auto& idx = index[static_cast<std::size_t>(d)];
        Simplex face;
        for (std::size_t i = 0; i < x.count(d); ++i) {
            if (idx[i] < 0) continue;
            std::vector<SparseMatrix::Entry> e;
            if (d > 0) {
                auto s = x.simplex_view(d, i);
                for (std::size_t j = 0; j < s.size(); ++j) {
                    face.assign(s.begin(), s.end());
                    face.erase(face.begin() + static_cast<long>(j));
                    long f = index[static_cast<std::size_t>(d - 1)][*x.index_of(face)];
                    if (f >= 0) e.push_back({static_cast<std::uint32_t>(f), j % 2 ? -1 : 1});
                }
            }
            b.add_row(std::move(e));
        }
        c.boundary.push_back(std::move(b));
    }
    if (c.sizes.empty()) {
        c.sizes.push_back(0);
        c.boundary.emplace_back(0);
    }
    c.check();
    return c;
}

HomologyProfile homology(const ChainComplex& c) {
    const long lo = c.min_degree, hi = c.max_degree();
    std::vector<SnfSummary> s;
    for (long d = lo; d <= hi; ++d) s.push_back(sparse_snf(c.d(d)));
    auto rank = [&](long d) -> long {
        if (d < lo || d > hi) return 0;
        return static_cast<long>(s[static_cast<std::size_t>(d - lo)].rank);
    };
    HomologyProfile out;
    long euler_chains = 0, euler_betti = 0;
    for (long d = lo; d <= hi; ++d) {
        HomologyGroup g;
        g.betti = static_cast<long>(c.size(d)) - rank(d) - rank(d + 1);
        if (d + 1 <= hi) g.torsion = s[static_cast<std::size_t>(d + 1 - lo)].divisors;
        long sign = ((d % 2) + 2) % 2 ? -1 : 1;
        euler_chains += sign * static_cast<long>(c.size(d));
        euler_betti += sign * g.betti;
        if (g.betti < 0) throw Error("negative betti number; boundary ranks inconsistent");
        if (!g.is_zero()) out.groups[d] = std::move(g);
    }
    if (euler_chains != euler_betti) throw Error("Euler characteristic mismatch");
    return out;
}

std::map<long, long> betti_mod_p(const ChainComplex& c, unsigned long p) {
    const long lo = c.min_degree, hi = c.max_degree();
    std::vector<long> r;
    for (long d = lo; d <= hi; ++d) r.push_back(static_cast<long>(sparse_rank_mod_p(c.d(d), p)));
    std::map<long, long> out;
    for (long d = lo; d <= hi; ++d) {
        long b = static_cast<long>(c.size(d)) - r[static_cast<std::size_t>(d - lo)] -
                 (d + 1 <= hi ? r[static_cast<std::size_t>(d + 1 - lo)] : 0);
        if (b) out[d] = b;
    }
    return out;
}

HomologyProfile reduced_homology(const SimplicialComplex& k) { return homology(chains(k)); }

HomologyProfile relative_homology(const SimplicialComplex& x, const SimplicialComplex& y) {
    return homology(relative_chains(x, y));
}

bool is_c_connected_homologically(const SimplicialComplex& k, long c) {
    auto h = reduced_homology(k);
    return std::none_of(h.groups.begin(), h.groups.end(), [&](const auto& g) { return g.first <= c; });
}

MorseReport morse_certify(const MorseInstance& inst) {
    MorseReport r;
    r.relative = relative_homology(inst.x, inst.y);
    for (std::size_t i = 0; i < inst.s.size(); ++i)
        r.wedge += reduced_homology(inst.links[i]).shifted(static_cast<long>(inst.s[i].size()));
    r.agree = r.relative == r.wedge;
    return r;
}

}  // namespace cbc
