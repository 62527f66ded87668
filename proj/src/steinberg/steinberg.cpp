#include "cbc/steinberg.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace cbc {

namespace {

using Id = SubspaceLattice::Id;

bool within_caps(std::size_t n, unsigned long p) { return p == 2 ? n <= 3 : n <= 2; }

}  // namespace

SteinbergModule::SteinbergModule(std::size_t n, unsigned long p) : n_(n), p_(p), model_(1, 0, n, p) {
    if (!within_caps(n, p)) throw CapExceeded("Steinberg module beyond the homology caps");
    ChainComplex c = model_.chain_complex();
    const long top = static_cast<long>(n);
    if (c.max_degree() != top) throw Error("flag model has unexpected top degree");
    cycles_ = left_kernel(c.d(top).to_dense(Ring::integers()));
    HomologyProfile h = homology(c);
    if (!h.is_free()) throw Error("torsion in the homology of the flag model: " + h.to_string());
    if (h.groups.size() != 1 || h.groups.begin()->first != top ||
        h.betti(top) != static_cast<long>(cycles_.rank()))
        throw Error("flag model homology is not concentrated in degree n: " + h.to_string());
}

std::vector<Int> SteinbergModule::express(const std::vector<Int>& chain) const {
    if (chain.size() != model_.count(static_cast<long>(n_))) throw InvalidArgument("chain has the wrong length");
    try {
        return coordinates(cycles_, chain);
    } catch (const InvalidArgument&) {
        throw Error("chain is not a cycle of the flag model");
    }
}

const SteinbergModule& st_module(std::size_t n, unsigned long p) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, unsigned long>, std::unique_ptr<SteinbergModule>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{n, p}];
    if (!slot) slot = std::make_unique<SteinbergModule>(n, p);
    return *slot;
}

Int steinberg_rank(std::size_t n, unsigned long p) {
    if (!is_prime(p)) throw InvalidArgument("p must be prime");
    if (within_caps(n, p)) return Int(static_cast<unsigned long>(st_module(n, p).rank()));
    Int r = 1;
    for (std::size_t i = 0; i < n * (n - 1) / 2; ++i) r *= p;
    return r;
}

std::vector<Int> st_multiply(const Submodule& a, const std::vector<Int>& x, const Submodule& b,
                             const std::vector<Int>& y) {
    const Ring ring = a.ring();
    if (!ring.is_field() || b.ring() != ring || a.ambient_rank() != b.ambient_rank())
        throw InvalidArgument("st_multiply needs subspaces of one F_p^N");
    const std::size_t r = a.rank(), s = b.rank(), t = r + s;
    const Submodule c = sum(a, b);
    if (c.rank() != t) throw InvalidArgument("st_multiply: the subspaces are not independent");
    const unsigned long p = ring.characteristic();
    const auto &sx = st_module(r, p), &sy = st_module(s, p), &sxy = st_module(t, p);
    if (x.size() != sx.rank() || y.size() != sy.rank()) throw InvalidArgument("st_multiply: coordinate length");

    // cycle representatives as sparse chains
    auto chain_of = [](const SteinbergModule& st, const std::vector<Int>& v) {
        std::map<std::size_t, Int> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (sgn(v[i]) == 0) continue;
            auto row = st.basis().row(i);
            for (std::size_t k = 0; k < row.size(); ++k)
                if (sgn(row[k]) != 0) out[k] += v[i] * row[k];
        }
        return out;
    };
    auto cx = chain_of(sx, x), cy = chain_of(sy, y);

    // coordinates of the bases of a and b in the canonical basis of a + b
    Matrix h(ring, t, t);
    for (std::size_t i = 0; i < r; ++i) {
        auto co = coordinates(c, a.basis().row(i));
        for (std::size_t k = 0; k < t; ++k) h(i, k) = co[k];
    }
    for (std::size_t j = 0; j < s; ++j) {
        auto co = coordinates(c, b.basis().row(j));
        for (std::size_t k = 0; k < t; ++k) h(r + j, k) = co[k];
    }
    const DModel& target = sxy.model();
    const auto perm = target.lattice().transform(h);
    const long rd = static_cast<long>(r), sd = static_cast<long>(s), td = static_cast<long>(t);

    std::vector<Int> out(target.count(td));
    for (const auto& [i, u] : cx)
        for (const auto& [j, v] : cy)
            for (auto [k, w] : mu_cells(sx.model(), sy.model(), target, sx.model().cell(rd, i), sy.model().cell(sd, j))) {
                auto moved = target.index_of(target.relabel(target.cell(td, k), perm));
                if (!moved) throw Error("transported cell is missing from the model");
                out[*moved] += u * v * Int(static_cast<long>(w));
            }
    return sxy.express(out);
}

Int gl_order(std::size_t n, unsigned long p) {
    if (!is_prime(p)) throw InvalidArgument("p must be prime");
    Int pn = 1, pi = 1, out = 1;
    for (std::size_t i = 0; i < n; ++i) pn *= p;
    for (std::size_t i = 0; i < n; ++i) {
        out *= pn - pi;
        pi *= p;
    }
    return out;
}

Int decomposition_count(std::size_t n, unsigned long p, const std::vector<std::size_t>& composition) {
    std::size_t total = 0;
    for (auto k : composition) total += k;
    if (total != n) throw InvalidArgument("composition does not sum to n");
    Int denom = 1;
    for (auto k : composition) denom *= gl_order(k, p);
    return gl_order(n, p) / denom;
}

std::vector<std::vector<Id>> enumerate_decompositions(std::size_t n, unsigned long p,
                                                     const std::vector<std::size_t>& composition) {
    std::size_t total = 0;
    for (auto k : composition) total += k;
    if (total != n) throw InvalidArgument("composition does not sum to n");
    if (n > 4) throw CapExceeded("decomposition enumeration too large");
    const auto& lat = SubspaceLattice::get(n, p);
    std::vector<std::vector<Id>> out;
    std::vector<Id> cur;
    auto rec = [&](auto& self, Id acc) -> void {
        if (cur.size() == composition.size()) {
            out.push_back(cur);
            return;
        }
        for (Id id : lat.of_rank(static_cast<unsigned>(composition[cur.size()]))) {
            if (lat.meet(acc, id) != lat.zero()) continue;
            cur.push_back(id);
            self(self, lat.join(acc, id));
            cur.pop_back();
        }
    };
    rec(rec, lat.zero());
    return out;
}

std::vector<std::vector<std::size_t>> compositions(std::size_t n, std::size_t q) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto& self, std::size_t left) -> void {
        if (cur.size() == q) {
            if (left == 0) out.push_back(cur);
            return;
        }
        for (std::size_t k = 1; k <= left; ++k) {
            cur.push_back(k);
            self(self, left - k);
            cur.pop_back();
        }
    };
    rec(rec, n);
    return out;
}

Int bar_basis_size(std::size_t n, unsigned long p, std::size_t q) {
    Int total = 0;
    for (const auto& comp : compositions(n, q)) {
        Int term = decomposition_count(n, p, comp);
        for (auto k : comp) term *= steinberg_rank(k, p);
        total += term;
    }
    return total;
}

Int bar_euler(std::size_t n, unsigned long p) {
    Int out = 0;
    for (std::size_t q = 0; q <= n; ++q) {
        Int s = bar_basis_size(n, p, q);
        if (q % 2) out -= s;
        else out += s;
    }
    return out;
}

GradedBarComplex bar_complex(std::size_t n, unsigned long p) {
    if (!within_caps(n, p)) throw CapExceeded("bar complex beyond the homology caps");
    GradedBarComplex g;
    g.n = n;
    g.p = p;
    const auto& lat = SubspaceLattice::get(n, p);
    std::vector<std::map<BarGenerator, std::size_t>> index;
    for (std::size_t q = 0; q <= n; ++q) {
        std::vector<BarGenerator> gens;
        for (const auto& comp : compositions(n, q)) {
            std::vector<std::size_t> ranks;
            for (auto k : comp) ranks.push_back(st_module(k, p).rank());
            for (const auto& parts : enumerate_decompositions(n, p, comp)) {
                BarGenerator b{parts, std::vector<std::size_t>(q, 0)};
                for (;;) {
                    gens.push_back(b);
                    std::size_t i = 0;
                    while (i < q && ++b.index[i] == ranks[i]) b.index[i++] = 0;
                    if (i == q) break;
                }
            }
        }
        std::sort(gens.begin(), gens.end());
        if (Int(static_cast<unsigned long>(gens.size())) != bar_basis_size(n, p, q))
            throw Error("bar complex basis size disagrees with the composition count");
        std::map<BarGenerator, std::size_t> idx;
        for (std::size_t i = 0; i < gens.size(); ++i) idx[gens[i]] = i;
        index.push_back(std::move(idx));
        g.basis.push_back(std::move(gens));
    }

    std::map<std::tuple<Id, Id, std::size_t, std::size_t>, std::vector<Int>> products;
    auto product = [&](Id a, std::size_t ia, Id b, std::size_t ib) -> const std::vector<Int>& {
        auto key = std::make_tuple(a, b, ia, ib);
        auto it = products.find(key);
        if (it != products.end()) return it->second;
        const Submodule &ma = lat.module(a), &mb = lat.module(b);
        std::vector<Int> x(st_module(ma.rank(), p).rank()), y(st_module(mb.rank(), p).rank());
        x[ia] = 1;
        y[ib] = 1;
        return products.emplace(key, st_multiply(ma, x, mb, y)).first->second;
    };

    g.complex.min_degree = 0;
    for (std::size_t q = 0; q <= n; ++q) {
        SparseMatrix m(q == 0 ? 0 : g.basis[q - 1].size());
        for (const auto& gen : g.basis[q]) {
            std::vector<SparseMatrix::Entry> row;
            for (std::size_t k = 1; k < q; ++k) {
                const auto& prod = product(gen.parts[k - 1], gen.index[k - 1], gen.parts[k], gen.index[k]);
                BarGenerator face;
                face.parts = gen.parts;
                face.index = gen.index;
                face.parts[k - 1] = lat.join(gen.parts[k - 1], gen.parts[k]);
                face.parts.erase(face.parts.begin() + static_cast<long>(k));
                face.index.erase(face.index.begin() + static_cast<long>(k));
                const long sign = k % 2 ? -1 : 1;
                for (std::size_t j = 0; j < prod.size(); ++j) {
                    if (sgn(prod[j]) == 0) continue;
                    face.index[k - 1] = j;
                    if (!prod[j].fits_slong_p()) throw Error("bar differential entry too large");
                    row.push_back({static_cast<std::uint32_t>(index[q - 1].at(face)), sign * prod[j].get_si()});
                }
            }
            m.add_row(std::move(row));
        }
        g.complex.sizes.push_back(g.basis[q].size());
        g.complex.boundary.push_back(std::move(m));
    }
    g.complex.check();
    return g;
}

bool TorProfile::koszul() const {
    for (const auto& [i, grp] : tor.groups)
        if (i != static_cast<long>(n) || !grp.is_free()) return false;
    return true;
}

TorProfile tor(std::size_t n, unsigned long p) {
    if (n == 0) throw InvalidArgument("tor needs n >= 1");
    TorProfile t;
    t.n = n;
    t.p = p;
    t.tor = homology(bar_complex(n, p).complex);
    t.model = model_homology(d_model(2, 0, n, p)).shifted(-static_cast<long>(n));
    t.tord_agrees = t.tor == t.model;
    auto b = tits(n, p);
    t.join_top_rank = reduced_homology(join(b, b)).betti(2 * static_cast<long>(n) - 3);
    t.join_agrees = t.tor.betti(static_cast<long>(n)) == t.join_top_rank;
    t.euler = bar_euler(n, p);
    Int chi = 0;
    for (const auto& [i, grp] : t.tor.groups) chi += (i % 2 ? -1 : 1) * grp.betti;
    t.euler_agrees = chi == t.euler;
    return t;
}

}  // namespace cbc
