#include "cbc/simpmodel.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>

namespace cbc {

namespace {

using Id = SubspaceLattice::Id;
using Slot = DModel::Slot;
using Cell = DModel::Cell;

// Strict flags 0 = V_0 < ... < V_q = top.
std::vector<Slot> strict_flags(const SubspaceLattice& lat) {
    std::vector<Slot> out;
    Slot cur{lat.zero()};
    auto rec = [&](auto& self) -> void {
        Id last = cur.back();
        if (last == lat.top()) {
            out.push_back(cur);
            return;
        }
        for (std::size_t x = 0; x < lat.size(); ++x) {
            auto id = static_cast<Id>(x);
            if (id == last || !lat.leq(last, id)) continue;
            cur.push_back(id);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

// Ordered splittings of top into nonzero parts.
std::vector<Slot> strict_splittings(const SubspaceLattice& lat) {
    std::vector<Slot> out;
    Slot cur;
    auto rec = [&](auto& self, Id acc, unsigned rank) -> void {
        if (rank == lat.n()) {
            out.push_back(cur);
            return;
        }
        for (std::size_t x = 0; x < lat.size(); ++x) {
            auto id = static_cast<Id>(x);
            if (id == lat.zero() || lat.meet(acc, id) != lat.zero()) continue;
            cur.push_back(id);
            self(self, lat.join(acc, id), rank + lat.rank(id));
            cur.pop_back();
        }
    };
    rec(rec, lat.zero(), 0);
    return out;
}

const SubspaceLattice& model_lattice(std::size_t n, unsigned long p) {
    if (!is_prime(p)) throw InvalidArgument("p must be prime");
    if (n > 4 || (p > 3 && n > 2)) throw CapExceeded("model ambient rank too large");
    return SubspaceLattice::get(n, p);
}

int sign_of(long e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

DModel::DModel(std::size_t a, std::size_t b, std::size_t n, unsigned long p, const Caps& caps)
    : a_(a), b_(b), n_(n), p_(p), lat_(&model_lattice(n, p)) {
    if (a + b == 0) throw InvalidArgument("need at least one slot");
    const auto& lat = *lat_;
    const std::vector<Slot> flags = strict_flags(lat), splits = strict_splittings(lat);
    LatticeCbp cbp(lat);
    std::vector<Cell> all;
    Cell cur;
    auto rec = [&](auto& self, std::size_t j, const LatticeCbp::Mask& mask) -> void {
        if (j == slots()) {
            all.push_back(cur);
            if (all.size() > caps.max_simplices) throw CapExceeded("model cell cap exceeded");
            return;
        }
        for (const Slot& s : j < a_ ? flags : splits) {
            auto m = mask;
            for (Id id : s) LatticeCbp::set(m, id);
            if (!cbp.holds_mask(m)) continue;
            cur.push_back(s);
            self(self, j + 1, m);
            cur.pop_back();
        }
    };
    rec(rec, 0, cbp.empty_mask());
    for (auto& c : all) {
        auto d = static_cast<std::size_t>(degree(c));
        if (cells_.size() <= d) cells_.resize(d + 1);
        cells_[d].push_back(std::move(c));
    }
    if (cells_.empty()) cells_.resize(1);
    index_.resize(cells_.size());
    for (std::size_t d = 0; d < cells_.size(); ++d) {
        std::sort(cells_[d].begin(), cells_[d].end());
        for (std::size_t i = 0; i < cells_[d].size(); ++i) index_[d][cells_[d][i]] = i;
    }
}

std::size_t DModel::count(long d) const {
    if (d < 0 || d > max_degree()) return 0;
    return cells_[static_cast<std::size_t>(d)].size();
}

std::size_t DModel::total_cells() const {
    std::size_t t = 0;
    for (const auto& c : cells_) t += c.size();
    return t;
}

std::optional<std::size_t> DModel::index_of(const Cell& c) const {
    if (c.size() != slots()) return std::nullopt;
    long d = degree(c);
    if (d < 0 || d > max_degree()) return std::nullopt;
    const auto& idx = index_[static_cast<std::size_t>(d)];
    auto it = idx.find(c);
    if (it == idx.end()) return std::nullopt;
    return it->second;
}

long DModel::slot_degree(const Cell& c, std::size_t j) const {
    long s = static_cast<long>(c[j].size());
    return is_flag_slot(j) ? s - 1 : s;
}

long DModel::degree(const Cell& c) const {
    long d = 0;
    for (std::size_t j = 0; j < c.size(); ++j) d += slot_degree(c, j);
    return d;
}

std::optional<Cell> DModel::face(const Cell& c, std::size_t j, std::size_t i) const {
    const auto q = static_cast<std::size_t>(slot_degree(c, j));
    if (i > q) throw InvalidArgument("face index out of range");
    if (i == 0 || i == q) return std::nullopt;
    Cell out = c;
    Slot& s = out[j];
    if (is_flag_slot(j)) {
        s.erase(s.begin() + static_cast<long>(i));
    } else {
        s[i - 1] = lat_->join(s[i - 1], s[i]);
        s.erase(s.begin() + static_cast<long>(i));
    }
    return out;
}

Cell DModel::relabel(const Cell& c, const std::vector<Id>& perm) const {
    Cell out = c;
    for (auto& s : out)
        for (auto& id : s) id = perm[id];
    return out;
}

ChainComplex DModel::chain_complex() const {
    ChainComplex out;
    out.min_degree = 0;
    for (long d = 0; d <= max_degree(); ++d) {
        SparseMatrix m(d == 0 ? 0 : count(d - 1));
        for (std::size_t k = 0; k < count(d); ++k) {
            const Cell& c = cell(d, k);
            std::vector<SparseMatrix::Entry> row;
            long before = 0;
            for (std::size_t j = 0; j < slots(); ++j) {
                const long q = slot_degree(c, j);
                for (long i = 1; i < q; ++i) {
                    auto f = face(c, j, static_cast<std::size_t>(i));
                    auto idx = index_of(*f);
                    if (!idx) throw Error("model face is missing from the model");
                    row.push_back({static_cast<std::uint32_t>(*idx), sign_of(before + i)});
                }
                before += q;
            }
            m.add_row(std::move(row));
        }
        out.sizes.push_back(count(d));
        out.boundary.push_back(std::move(m));
    }
    out.check();
    return out;
}

std::string DModel::dump() const {
    std::ostringstream out;
    out << "#model " << a_ << ' ' << b_ << ' ' << n_ << ' ' << p_ << '\n';
    for (long d = 0; d <= max_degree(); ++d)
        for (const Cell& c : cells_[static_cast<std::size_t>(d)]) {
            out << d;
            for (std::size_t j = 0; j < c.size(); ++j) {
                out << (j == 0 ? " " : " || ") << (is_flag_slot(j) ? "L" : "S");
                for (Id id : c[j]) out << " [" << to_inline(lat_->module(id)) << "]";
            }
            out << '\n';
        }
    return out.str();
}

DModel d_model(std::size_t a, std::size_t b, std::size_t n, unsigned long p, const Caps& caps) {
    return DModel(a, b, n, p, caps);
}

HomologyProfile model_homology(const DModel& d) { return homology(d.chain_complex()); }

const SparseMatrix& BasedChainMap::at(long degree) const {
    static const SparseMatrix empty;
    long i = degree - domain.min_degree;
    if (i < 0 || i >= static_cast<long>(maps.size())) return empty;
    return maps[static_cast<std::size_t>(i)];
}

void BasedChainMap::check() const {
    for (long d = domain.min_degree; d <= domain.max_degree(); ++d) {
        const SparseMatrix& f = at(d);
        if (f.rows() != domain.size(d) || f.cols() != codomain.size(d))
            throw Error("chain map shape mismatch in degree " + std::to_string(d));
        if (d == domain.min_degree) continue;
        // rows are images, so (boundary then f) against (f then boundary)
        SparseMatrix lhs = domain.d(d) * at(d - 1);
        SparseMatrix rhs = f * codomain.d(d);
        if (!(lhs == rhs)) throw Error("chain map does not commute with boundaries in degree " + std::to_string(d));
    }
}

TensorComplex tensor(const ChainComplex& x, const ChainComplex& y) {
    TensorComplex t;
    const long lo = x.min_degree + y.min_degree, hi = x.max_degree() + y.max_degree();
    t.complex.min_degree = lo;
    std::vector<std::map<std::tuple<long, std::size_t, std::size_t>, std::size_t>> index;
    for (long d = lo; d <= hi; ++d) {
        std::vector<std::tuple<long, std::size_t, std::size_t>> basis;
        for (long i = x.min_degree; i <= x.max_degree(); ++i)
            for (std::size_t u = 0; u < x.size(i); ++u)
                for (std::size_t v = 0; v < y.size(d - i); ++v) basis.emplace_back(i, u, v);
        std::map<std::tuple<long, std::size_t, std::size_t>, std::size_t> idx;
        for (std::size_t k = 0; k < basis.size(); ++k) idx[basis[k]] = k;
        index.push_back(std::move(idx));
        t.complex.sizes.push_back(basis.size());
        t.basis.push_back(std::move(basis));
    }
    for (long d = lo; d <= hi; ++d) {
        const auto& basis = t.basis[static_cast<std::size_t>(d - lo)];
        SparseMatrix m(d == lo ? 0 : t.complex.sizes[static_cast<std::size_t>(d - 1 - lo)]);
        for (const auto& [i, u, v] : basis) {
            std::vector<SparseMatrix::Entry> row;
            if (d > lo) {
                const auto& below = index[static_cast<std::size_t>(d - 1 - lo)];
                for (auto [c, w] : x.d(i).row(u))
                    row.push_back({static_cast<std::uint32_t>(below.at({i - 1, c, v})), w});
                for (auto [c, w] : y.d(d - i).row(v))
                    row.push_back({static_cast<std::uint32_t>(below.at({i, u, c})), sign_of(i) * w});
            }
            m.add_row(std::move(row));
        }
        t.complex.boundary.push_back(std::move(m));
    }
    t.complex.check();
    return t;
}

namespace {

// ids of U + W where U sits on the first m coordinates and W on the last n
struct BlockSum {
    std::vector<Id> table;
    std::size_t ny;

    BlockSum(const SubspaceLattice& lx, const SubspaceLattice& ly, const SubspaceLattice& lxy) : ny(ly.size()) {
        const std::size_t m = lx.n(), n = ly.n();
        table.resize(lx.size() * ly.size());
        for (std::size_t u = 0; u < lx.size(); ++u)
            for (std::size_t w = 0; w < ly.size(); ++w) {
                const Matrix& bu = lx.module(static_cast<Id>(u)).basis();
                const Matrix& bw = ly.module(static_cast<Id>(w)).basis();
                Matrix g(lxy.ring(), bu.rows() + bw.rows(), m + n);
                for (std::size_t i = 0; i < bu.rows(); ++i)
                    for (std::size_t c = 0; c < m; ++c) g(i, c) = bu(i, c);
                for (std::size_t i = 0; i < bw.rows(); ++i)
                    for (std::size_t c = 0; c < n; ++c) g(bu.rows() + i, m + c) = bw(i, c);
                table[u * ny + w] = lxy.id_of(canonicalize(std::move(g)));
            }
    }
    Id operator()(Id u, Id w) const { return table[u * ny + w]; }
};

const BlockSum& block_sum(const SubspaceLattice& lx, const SubspaceLattice& ly, const SubspaceLattice& lxy) {
    static std::map<std::tuple<std::size_t, std::size_t, unsigned long>, std::unique_ptr<BlockSum>> cache;
    auto key = std::make_tuple(lx.n(), ly.n(), lx.p());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<BlockSum>(lx, ly, lxy)).first;
    return *it->second;
}

// (p,q)-shuffles as step sequences (true = step of the first factor) with signs.
std::vector<std::pair<std::vector<bool>, int>> shuffles(long p, long q) {
    std::vector<std::pair<std::vector<bool>, int>> out;
    std::vector<bool> steps;
    auto rec = [&](auto& self, long i, long j, long inversions) -> void {
        if (i == p && j == q) {
            out.push_back({steps, sign_of(inversions)});
            return;
        }
        if (i < p) {
            steps.push_back(true);
            self(self, i + 1, j, inversions + j);
            steps.pop_back();
        }
        if (j < q) {
            steps.push_back(false);
            self(self, i, j + 1, inversions);
            steps.pop_back();
        }
    };
    rec(rec, 0, 0, 0);
    return out;
}

}  // namespace

std::vector<std::pair<std::size_t, std::int64_t>> mu_cells(const DModel& dx, const DModel& dy, const DModel& dxy,
                                                           const Cell& x, const Cell& y) {
    if (dx.a() != dy.a() || dx.b() != dy.b() || dxy.a() != dx.a() || dxy.b() != dx.b() || dx.p() != dy.p() ||
        dxy.p() != dx.p() || dxy.n() != dx.n() + dy.n())
        throw InvalidArgument("mu: incompatible models");
    const auto& sum = block_sum(dx.lattice(), dy.lattice(), dxy.lattice());
    const std::size_t k = dx.slots();
    // per slot, candidate output slots with shuffle signs
    std::vector<std::vector<std::pair<Slot, int>>> options(k);
    long koszul = 0;
    for (std::size_t j = 0; j < k; ++j) {
        const long p = dx.slot_degree(x, j), q = dy.slot_degree(y, j);
        for (std::size_t l = j + 1; l < k; ++l) koszul += q * dx.slot_degree(x, l);
        for (const auto& [steps, sgn] : shuffles(p, q)) {
            Slot s;
            std::size_t i = 0, t = 0;
            if (dx.is_flag_slot(j)) {
                s.push_back(sum(x[j][0], y[j][0]));
                for (bool st : steps) {
                    st ? ++i : ++t;
                    s.push_back(sum(x[j][i], y[j][t]));
                }
            } else {
                const Id zx = dx.lattice().zero(), zy = dy.lattice().zero();
                for (bool st : steps) s.push_back(st ? sum(x[j][i++], zy) : sum(zx, y[j][t++]));
            }
            options[j].push_back({std::move(s), sgn});
        }
    }
    std::vector<std::pair<std::size_t, std::int64_t>> out;
    Cell cur(k);
    auto rec = [&](auto& self, std::size_t j, int sgn) -> void {
        if (j == k) {
            auto idx = dxy.index_of(cur);
            if (!idx) throw Error("mu: product cell missing from the target model");
            out.push_back({*idx, sgn});
            return;
        }
        for (const auto& [s, e] : options[j]) {
            cur[j] = s;
            self(self, j + 1, sgn * e);
        }
    };
    rec(rec, 0, sign_of(koszul));
    return out;
}

BasedChainMap mu_chain(std::size_t a, std::size_t b, std::size_t m, std::size_t n, unsigned long p,
                       const Caps& caps) {
    DModel dx(a, b, m, p, caps), dy(a, b, n, p, caps), dxy(a, b, m + n, p, caps);
    BasedChainMap f;
    ChainComplex cx = dx.chain_complex(), cy = dy.chain_complex();
    TensorComplex t = tensor(cx, cy);
    f.domain = t.complex;
    f.codomain = dxy.chain_complex();
    for (long d = f.domain.min_degree; d <= f.domain.max_degree(); ++d) {
        SparseMatrix m(f.codomain.size(d));
        for (const auto& [i, u, v] : t.basis[static_cast<std::size_t>(d - f.domain.min_degree)]) {
            auto terms = mu_cells(dx, dy, dxy, dx.cell(i, u), dy.cell(d - i, v));
            std::vector<SparseMatrix::Entry> row;
            for (auto [c, w] : terms) row.push_back({static_cast<std::uint32_t>(c), w});
            m.add_row(std::move(row));
        }
        f.maps.push_back(std::move(m));
    }
    f.check();
    return f;
}

std::vector<SubspaceLattice::Id> block_swap(std::size_t m, std::size_t n, unsigned long p) {
    const auto& lat = model_lattice(m + n, p);
    Matrix g(lat.ring(), m + n, m + n);
    for (std::size_t i = 0; i < m; ++i) g(i, n + i) = 1;
    for (std::size_t i = 0; i < n; ++i) g(m + i, i) = 1;
    return lat.transform(g);
}

SuspensionReport check_suspension(std::size_t a, std::size_t b, std::size_t n, unsigned long p, const Caps& caps) {
    // D(0) is S^0 by convention while T(0) is empty, so rank 0 is excluded
    if (n == 0) throw InvalidArgument("suspension comparison needs n >= 1");
    SuspensionReport r;
    r.shift = static_cast<long>(a + b + 1);
    r.building = reduced_homology(higher_tits(a, b, n, p, Collection(Ring::prime_field(p), n), caps));
    r.model = model_homology(d_model(a, b, n, p, caps));
    r.agree = r.building.shifted(r.shift) == r.model;
    return r;
}

namespace {

// A possibly degenerate, non-basepoint simplex of D^{a,b}(A) for a summand A.
// Flag slots list V_0..V_q; splitting slots list all q + 2 parts.
struct Component {
    Id ambient;
    Cell slots;
};

// Weakly increasing flags 0 = V_0 <= ... <= V_q = top under A, all q.
void weak_flags(const SubspaceLattice& lat, Id top, long q, std::vector<Slot>& out) {
    Slot cur{lat.zero()};
    auto rec = [&](auto& self) -> void {
        if (static_cast<long>(cur.size()) == q) {
            if (lat.leq(cur.back(), top)) {
                cur.push_back(top);
                out.push_back(cur);
                cur.pop_back();
            }
            return;
        }
        for (std::size_t x = 0; x < lat.size(); ++x) {
            auto id = static_cast<Id>(x);
            if (!lat.leq(cur.back(), id) || !lat.leq(id, top)) continue;
            cur.push_back(id);
            self(self);
            cur.pop_back();
        }
    };
    if (q >= 1) rec(rec);
}

// Splittings (0, B_1, ..., B_q, 0) of A with the B_i possibly zero.
void weak_splittings(const SubspaceLattice& lat, Id top, long q, std::vector<Slot>& out) {
    Slot cur{lat.zero()};
    auto rec = [&](auto& self, Id acc) -> void {
        if (static_cast<long>(cur.size()) == q + 1) {
            if (acc == top) {
                cur.push_back(lat.zero());
                out.push_back(cur);
                cur.pop_back();
            }
            return;
        }
        for (std::size_t x = 0; x < lat.size(); ++x) {
            auto id = static_cast<Id>(x);
            if (!lat.leq(id, top) || lat.meet(acc, id) != lat.zero()) continue;
            cur.push_back(id);
            self(self, lat.join(acc, id));
            cur.pop_back();
        }
    };
    rec(rec, lat.zero());
}

std::vector<std::vector<Id>> decompositions(const SubspaceLattice& lat, std::size_t q) {
    std::vector<std::vector<Id>> out;
    std::vector<Id> cur;
    auto rec = [&](auto& self, Id acc) -> void {
        if (cur.size() == q) {
            if (acc == lat.top()) out.push_back(cur);
            return;
        }
        for (std::size_t x = 0; x < lat.size(); ++x) {
            auto id = static_cast<Id>(x);
            if (id == lat.zero() || lat.meet(acc, id) != lat.zero()) continue;
            cur.push_back(id);
            self(self, lat.join(acc, id));
            cur.pop_back();
        }
    };
    rec(rec, lat.zero());
    return out;
}

std::vector<std::vector<long>> multidegrees(std::size_t k, long lo, long total_max) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur;
    auto rec = [&](auto& self, long used) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (long d = lo; used + d <= total_max; ++d) {
            cur.push_back(d);
            self(self, used + d);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

class BarSide {
public:
    BarSide(const SubspaceLattice& lat, std::size_t a) : lat_(lat), a_(a), cbp_(lat_) {}

    std::vector<Component> components(Id ambient, const std::vector<long>& md) {
        std::vector<Component> out;
        Component cur{ambient, {}};
        auto rec = [&](auto& self, std::size_t j) -> void {
            if (j == md.size()) {
                auto mask = cbp_.empty_mask();
                LatticeCbp::set(mask, ambient);
                for (const auto& s : cur.slots)
                    for (Id id : s) LatticeCbp::set(mask, id);
                if (cbp_.holds_mask(mask)) out.push_back(cur);
                return;
            }
            std::vector<Slot> opts;
            if (j < a_)
                weak_flags(lat_, ambient, md[j], opts);
            else
                weak_splittings(lat_, ambient, md[j], opts);
            for (auto& s : opts) {
                cur.slots.push_back(std::move(s));
                self(self, j + 1);
                cur.slots.pop_back();
            }
        };
        rec(rec, 0);
        return out;
    }

    bool degenerate(const std::vector<Component>& tuple) const {
        for (std::size_t j = 0; j < tuple[0].slots.size(); ++j) {
            const std::size_t len = tuple[0].slots[j].size();
            if (j < a_) {
                for (std::size_t t = 0; t + 1 < len; ++t)
                    if (std::all_of(tuple.begin(), tuple.end(),
                                    [&](const Component& c) { return c.slots[j][t] == c.slots[j][t + 1]; }))
                        return true;
            } else {
                for (std::size_t t = 1; t + 1 < len; ++t)
                    if (std::all_of(tuple.begin(), tuple.end(),
                                    [&](const Component& c) { return c.slots[j][t] == lat_.zero(); }))
                        return true;
            }
        }
        return false;
    }

    // Sum of the components with the decomposition appended as a new splitting slot.
    Cell glue(const std::vector<Component>& tuple) const {
        Cell out;
        for (std::size_t j = 0; j < tuple[0].slots.size(); ++j) {
            Slot s = tuple[0].slots[j];
            for (std::size_t i = 1; i < tuple.size(); ++i)
                for (std::size_t t = 0; t < s.size(); ++t) s[t] = lat_.join(s[t], tuple[i].slots[j][t]);
            if (j >= a_) s = Slot(s.begin() + 1, s.end() - 1);
            out.push_back(std::move(s));
        }
        Slot parts;
        for (const auto& c : tuple) parts.push_back(c.ambient);
        out.push_back(std::move(parts));
        return out;
    }

    // Componentwise face in slot j; nullopt when some component hits the basepoint.
    std::optional<std::vector<Component>> face(const std::vector<Component>& tuple, std::size_t j,
                                               std::size_t i) const {
        std::vector<Component> out = tuple;
        for (auto& c : out) {
            Slot& s = c.slots[j];
            if (j < a_) {
                s.erase(s.begin() + static_cast<long>(i));
                if (s.front() != lat_.zero() || s.back() != c.ambient) return std::nullopt;
            } else {
                s[i] = lat_.join(s[i], s[i + 1]);
                s.erase(s.begin() + static_cast<long>(i) + 1);
                if (s.front() != lat_.zero() || s.back() != lat_.zero()) return std::nullopt;
            }
        }
        return out;
    }

    std::vector<Component> merge(const std::vector<Component>& tuple, std::size_t i) const {
        std::vector<Component> out(tuple.begin(), tuple.begin() + static_cast<long>(i));
        Component m = tuple[i];
        const Component& o = tuple[i + 1];
        m.ambient = lat_.join(m.ambient, o.ambient);
        for (std::size_t j = 0; j < m.slots.size(); ++j)
            for (std::size_t t = 0; t < m.slots[j].size(); ++t) m.slots[j][t] = lat_.join(m.slots[j][t], o.slots[j][t]);
        out.push_back(std::move(m));
        out.insert(out.end(), tuple.begin() + static_cast<long>(i) + 2, tuple.end());
        return out;
    }

private:
    const SubspaceLattice& lat_;
    std::size_t a_;
    LatticeCbp cbp_;
};

}  // namespace

BarModelReport check_bar_model(std::size_t a, std::size_t b, std::size_t n, unsigned long p, long cutoff,
                               const Caps& caps) {
    if (cutoff < 0) throw InvalidArgument("cutoff must be nonnegative");
    if (a + b == 0) throw InvalidArgument("need at least one slot");
    DModel target(a, b + 1, n, p, caps);
    const auto& lat = target.lattice();
    const std::size_t k = a + b;
    BarModelReport r;
    BarSide side(lat, a);
    std::set<Cell> images;

    auto classify = [&](const std::optional<std::vector<Component>>& t) -> std::optional<Cell> {
        if (!t || side.degenerate(*t)) return std::nullopt;
        return side.glue(*t);
    };
    auto same = [&](const std::optional<Cell>& lhs, const std::optional<Cell>& rhs) {
        ++r.faces_checked;
        if (lhs != rhs) ++r.face_mismatches;
    };

    if (n == 0) {
        r.counts[{0, 0}].first = 1;
        Cell unit;
        for (std::size_t j = 0; j < k; ++j) unit.push_back(j < a ? Slot{lat.zero()} : Slot{});
        unit.push_back(Slot{});
        if (!target.index_of(unit)) r.injective = false;
    }
    for (long q = 1; q <= cutoff && q <= static_cast<long>(n); ++q) {
        auto decs = decompositions(lat, static_cast<std::size_t>(q));
        for (const auto& md : multidegrees(k, 1, cutoff)) {
            long model_degree = 0;
            for (long d : md) model_degree += d;
            auto& cnt = r.counts[{q, model_degree}].first;
            for (const auto& dec : decs) {
                std::vector<std::vector<Component>> per;
                for (Id part : dec) per.push_back(side.components(part, md));
                std::vector<Component> tuple;
                auto rec = [&](auto& self, std::size_t i) -> void {
                    if (i == per.size()) {
                        if (side.degenerate(tuple)) return;
                        ++cnt;
                        Cell c = side.glue(tuple);
                        if (!target.index_of(c) || !images.insert(c).second) {
                            r.injective = false;
                            return;
                        }
                        for (std::size_t j = 0; j < k; ++j)
                            for (std::size_t f = 0; f <= static_cast<std::size_t>(md[j]); ++f)
                                same(classify(side.face(tuple, j, f)), target.face(c, j, f));
                        for (std::size_t f = 0; f <= static_cast<std::size_t>(q); ++f) {
                            std::optional<Cell> lhs;
                            if (f != 0 && f != static_cast<std::size_t>(q)) lhs = classify(side.merge(tuple, f - 1));
                            same(lhs, target.face(c, k, f));
                        }
                        return;
                    }
                    for (const auto& comp : per[i]) {
                        tuple.push_back(comp);
                        self(self, i + 1);
                        tuple.pop_back();
                    }
                };
                rec(rec, 0);
            }
        }
    }
    // model side: cells of D^{a,b+1} by (last slot degree, remaining degree)
    for (long d = 0; d <= target.max_degree(); ++d)
        for (std::size_t i = 0; i < target.count(d); ++i) {
            const Cell& c = target.cell(d, i);
            long q = target.slot_degree(c, k), rest = d - q;
            if (q > cutoff || rest > cutoff) continue;
            ++r.counts[{q, rest}].second;
        }
    for (const auto& [key, v] : r.counts)
        if (v.first != v.second) r.counts_match = false;
    return r;
}

}  // namespace cbc
