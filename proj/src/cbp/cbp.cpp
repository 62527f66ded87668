#include "cbc/cbp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cbc {

namespace {

void check_cap(std::size_t k, std::size_t cap) {
    if (k > cap) throw CapExceeded("collection of " + std::to_string(k) + " members exceeds subset cap " +
                                   std::to_string(cap));
}

std::vector<Submodule> all_intersections(const Collection& c) {
    const std::size_t N = std::size_t{1} << c.size();
    std::vector<Submodule> inter(N);
    inter[0] = Submodule::ambient(c.ring(), c.ambient_rank());
    for (std::size_t s = 1; s < N; ++s)
        inter[s] = intersect(inter[s & (s - 1)], c[static_cast<std::size_t>(__builtin_ctzll(s))]);
    return inter;
}

}  // namespace

Collection::Collection(Ring ring, std::size_t n, std::vector<Submodule> members)
    : ring_(ring), n_(n), members_(std::move(members)) {
    for (const Submodule& u : members_) {
        if (u.ring() != ring_ || u.ambient_rank() != n_) throw AmbientMismatch();
        if (!is_split(u)) throw NotSplit();
    }
}

Collection::Collection(std::vector<Submodule> members) : n_(0) {
    if (members.empty()) throw InvalidArgument("a collection without an explicit ambient needs a member");
    // read these before members is moved into the argument
    const Ring ring = members.front().ring();
    const std::size_t n = members.front().ambient_rank();
    *this = Collection(ring, n, std::move(members));
}

CorankTable corank_table(const Collection& c, std::size_t cap) {
    check_cap(c.size(), cap);
    CorankTable t;
    t.k = c.size();
    t.intersection = all_intersections(c);
    const std::size_t N = t.intersection.size();
    const Submodule zero = Submodule::zero(c.ring(), c.ambient_rank());
    t.F.resize(N);
    for (std::size_t s = 0; s < N; ++s) {
        Submodule lower = zero;
        for (std::size_t i = 0; i < t.k; ++i)
            if (!(s >> i & 1)) lower = sum(lower, t.intersection[s | (std::size_t{1} << i)]);
        t.F[s] = static_cast<long>(t.intersection[s].rank()) - static_cast<long>(lower.rank());
    }
    std::map<Submodule, std::size_t> index;
    for (const auto& u : t.intersection) index.emplace(u, 0);
    for (auto& [u, i] : index) {
        i = t.distinct.size();
        t.distinct.push_back(u);
    }
    t.module_of.resize(N);
    std::vector<std::size_t> fiber_union(t.distinct.size(), 0);
    for (std::size_t s = 0; s < N; ++s) {
        t.module_of[s] = index.at(t.intersection[s]);
        fiber_union[t.module_of[s]] |= s;
    }
    t.minimal.resize(N);
    for (std::size_t s = 0; s < N; ++s) t.minimal[s] = fiber_union[t.module_of[s]] == s;
    for (const Submodule& u : t.distinct) {
        Submodule lower = zero;
        for (const Submodule& v : t.distinct)
            if (v != u && contains(u, v)) lower = sum(lower, v);
        t.G.push_back(static_cast<long>(u.rank()) - static_cast<long>(lower.rank()));
    }
    return t;
}

IeVerdict ie_verdict(const Collection& c, bool check_split, std::size_t cap) {
    check_cap(c.size(), cap);
    SubmoduleAlgebra alg{c.ring(), c.ambient_rank()};
    return inclusion_exclusion(alg, c.members(), check_split && !c.ring().is_field());
}

bool has_cbp_ie(const Collection& c, std::size_t cap) { return ie_verdict(c, true, cap).holds; }

std::optional<CommonBasis> common_basis_greedy(const Collection& c, std::size_t cap) {
    check_cap(c.size(), cap);
    const std::size_t n = c.ambient_rank();
    const Ring ring = c.ring();
    std::vector<Submodule> distinct;
    {
        std::set<Submodule> seen;
        for (auto& u : all_intersections(c)) seen.insert(std::move(u));
        distinct.assign(seen.begin(), seen.end());
    }
    const std::size_t D = distinct.size();
    std::vector<std::vector<std::size_t>> below(D);
    for (std::size_t a = 0; a < D; ++a)
        for (std::size_t b = 0; b < D; ++b)
            if (a != b && contains(distinct[a], distinct[b])) below[a].push_back(b);
    std::vector<std::size_t> height(D, 0), order(D);
    // below-sets are strict containments, so sorting by rank gives a valid evaluation order
    for (std::size_t i = 0; i < D; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return distinct[x].rank() < distinct[y].rank(); });
    for (std::size_t a : order)
        for (std::size_t b : below[a]) height[a] = std::max(height[a], height[b] + 1);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return height[x] != height[y] ? height[x] < height[y] : x < y;
    });

    Matrix vectors(ring, 0, n);
    std::vector<std::set<std::size_t>> assigned(D);
    for (std::size_t a : order) {
        const Submodule& u = distinct[a];
        std::set<std::size_t> idx;
        for (std::size_t b : below[a]) idx.insert(assigned[b].begin(), assigned[b].end());
        Matrix gens(ring, 0, n);
        for (std::size_t i : idx) gens.append_row(vectors.row(i));
        Submodule lower = canonicalize(gens);
        // re-express the lower sum in coordinates of u and extend it to a basis of u
        Matrix local(ring, 0, u.rank());
        for (std::size_t i = 0; i < lower.rank(); ++i) local.append_row(coordinates(u, lower.basis().row(i)));
        Submodule lower_local = canonicalize(local);
        if (!is_split(lower_local)) return std::nullopt;
        Matrix ext = extend_to_ambient_basis(lower_local);
        for (std::size_t i = lower_local.rank(); i < ext.rows(); ++i) {
            Matrix row(ring, 0, u.rank());
            row.append_row(ext.row(i));
            Matrix v = row * u.basis();
            idx.insert(vectors.rows());
            vectors.append_row(v.row(0));
        }
        assigned[a] = std::move(idx);
        if (vectors.rows() > n) return std::nullopt;
    }
    if (vectors.rows() != n) return std::nullopt;
    CommonBasis out{vectors, {}};
    for (const Submodule& u : c.members()) {
        auto it = std::lower_bound(distinct.begin(), distinct.end(), u);
        const auto& s = assigned[static_cast<std::size_t>(it - distinct.begin())];
        out.spans.emplace_back(s.begin(), s.end());
    }
    if (!verify_common_basis(c, out)) return std::nullopt;
    return out;
}

bool verify_common_basis(const Collection& c, const CommonBasis& b) {
    const std::size_t n = c.ambient_rank();
    if (b.basis.rows() != n || b.basis.cols() != n || b.spans.size() != c.size()) return false;
    Int det = determinant(b.basis);
    if (c.ring().is_field() ? sgn(det) == 0 : abs(det) != 1) return false;
    for (std::size_t i = 0; i < c.size(); ++i) {
        Matrix g(c.ring(), 0, n);
        for (std::size_t r : b.spans[i]) {
            if (r >= n) return false;
            g.append_row(b.basis.row(r));
        }
        if (canonicalize(g) != c[i]) return false;
    }
    return true;
}

std::vector<Submodule> closure(const Collection& c, std::size_t cap) {
    std::set<Submodule> cur(c.members().begin(), c.members().end());
    for (;;) {
        std::vector<Submodule> items(cur.begin(), cur.end());
        std::size_t before = cur.size();
        for (std::size_t i = 0; i < items.size(); ++i)
            for (std::size_t j = i + 1; j < items.size(); ++j) {
                cur.insert(sum(items[i], items[j]));
                cur.insert(intersect(items[i], items[j]));
                if (cur.size() > cap) throw CapExceeded("closure exceeds element cap " + std::to_string(cap));
            }
        if (cur.size() == before) break;
    }
    return {cur.begin(), cur.end()};
}

long mobius_boolean(Subset s, Subset t) {
    if ((s & t) != s && (s & t) != t) throw InvalidArgument("mobius_boolean needs nested subsets");
    long d = __builtin_popcount(s) - __builtin_popcount(t);
    return (d % 2 == 0) ? 1 : -1;
}

std::string subset_to_string(Subset s) {
    std::string out = "{";
    bool first = true;
    for (unsigned i = 0; i < 32; ++i)
        if (s >> i & 1) {
            if (!first) out += ',';
            out += std::to_string(i + 1);
            first = false;
        }
    return out + "}";
}

bool LatticeCbp::holds(const std::vector<SubspaceLattice::Id>& ids) const {
    Mask m = empty_mask();
    for (auto a : ids) set(m, a);
    return holds_mask(std::move(m));
}

bool LatticeCbp::holds_mask(Mask mask) const {
    // zero and the ambient space are spanned by every basis
    mask[lat_->zero() / 64] &= ~(std::uint64_t{1} << (lat_->zero() % 64));
    mask[lat_->top() / 64] &= ~(std::uint64_t{1} << (lat_->top() % 64));
    std::size_t count = 0;
    for (auto w : mask) count += static_cast<std::size_t>(__builtin_popcountll(w));
    if (count <= 1) return true;
    // a CBP set of proper nonzero subspaces has at most 2^n - 2 members
    if (lat_->n() < 20 && count > (std::size_t{1} << lat_->n()) - 2) return false;
    std::string key(reinterpret_cast<const char*>(mask.data()), mask.size() * sizeof(std::uint64_t));
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    std::vector<SubspaceLattice::Id> ids;
    for (std::size_t w = 0; w < mask.size(); ++w)
        for (std::uint64_t x = mask[w]; x; x &= x - 1)
            ids.push_back(static_cast<SubspaceLattice::Id>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(x))));
    check_cap(ids.size(), 20);
    bool ok = inclusion_exclusion(LatticeAlgebra{lat_}, ids, false).holds;
    cache_.emplace(std::move(key), ok);
    return ok;
}

}  // namespace cbc
