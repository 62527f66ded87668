#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cbc/exactlin.hpp"
#include "cbc/lattice.hpp"

namespace cbc {

// Bitmask over member indices 0..k-1.
using Subset = std::uint32_t;

inline constexpr std::size_t kDefaultSubsetCap = 12;
inline constexpr std::size_t kDefaultClosureCap = 4096;

class Collection {
public:
    Collection(Ring ring, std::size_t n, std::vector<Submodule> members = {});
    explicit Collection(std::vector<Submodule> members);  // needs at least one member

    const Ring& ring() const { return ring_; }
    std::size_t ambient_rank() const { return n_; }
    std::size_t size() const { return members_.size(); }
    const std::vector<Submodule>& members() const { return members_; }
    const Submodule& operator[](std::size_t i) const { return members_[i]; }

private:
    Ring ring_;
    std::size_t n_;
    std::vector<Submodule> members_;
};

struct CorankTable {
    std::size_t k = 0;
    std::vector<Submodule> intersection;  // indexed by Subset; U_0 is the ambient module
    std::vector<long> F;                  // indexed by Subset
    std::vector<bool> minimal;            // S is the union of its fiber
    std::vector<Submodule> distinct;      // distinct intersections in canonical order
    std::vector<long> G;                  // parallel to distinct
    std::vector<std::size_t> module_of;   // Subset -> index into distinct
};

CorankTable corank_table(const Collection& c, std::size_t cap = kDefaultSubsetCap);

enum class IeFailure { None, RankIdentity, NonSplitSum };

struct IeVerdict {
    bool holds = true;
    Subset violating = 0;  // first failing S in increasing mask order
    IeFailure failure = IeFailure::None;
};

// Backend-independent inclusion-exclusion test. Alg supplies top(), bottom(),
// meet, join, rank and split over an opaque Module type.
template <class Alg>
IeVerdict inclusion_exclusion(const Alg& alg, const std::vector<typename Alg::Module>& u, bool check_split) {
    using M = typename Alg::Module;
    const std::size_t k = u.size();
    const Subset full = static_cast<Subset>((std::size_t{1} << k) - 1);
    std::vector<M> inter(std::size_t{full} + 1);
    inter[0] = alg.top();
    for (std::size_t s = 1; s < inter.size(); ++s)
        inter[s] = alg.meet(inter[s & (s - 1)], u[static_cast<std::size_t>(__builtin_ctzll(s))]);
    std::vector<long> r(inter.size()), h(inter.size());
    for (std::size_t s = 0; s < inter.size(); ++s) r[s] = h[s] = static_cast<long>(alg.rank(inter[s]));
    // h[S] = sum over T ⊇ S of (-1)^{|T|-|S|} rank U_T
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t s = 0; s < inter.size(); ++s)
            if (!(s >> i & 1)) h[s] -= h[s | (std::size_t{1} << i)];
    for (std::size_t s = 0; s < inter.size(); ++s) {
        M lower = alg.bottom();
        for (std::size_t i = 0; i < k; ++i)
            if (!(s >> i & 1)) lower = alg.join(lower, inter[s | (std::size_t{1} << i)]);
        long rhs = r[s] - h[s];
        if (static_cast<long>(alg.rank(lower)) != rhs)
            return {false, static_cast<Subset>(s), IeFailure::RankIdentity};
        if (check_split && !alg.split(lower)) return {false, static_cast<Subset>(s), IeFailure::NonSplitSum};
    }
    return {};
}

struct SubmoduleAlgebra {
    using Module = Submodule;
    Ring ring;
    std::size_t n;
    Module top() const { return Submodule::ambient(ring, n); }
    Module bottom() const { return Submodule::zero(ring, n); }
    Module meet(const Module& a, const Module& b) const { return intersect(a, b); }
    Module join(const Module& a, const Module& b) const { return sum(a, b); }
    std::size_t rank(const Module& a) const { return a.rank(); }
    bool split(const Module& a) const { return is_split(a); }
};

struct LatticeAlgebra {
    using Module = SubspaceLattice::Id;
    const SubspaceLattice* lat;
    Module top() const { return lat->top(); }
    Module bottom() const { return lat->zero(); }
    Module meet(Module a, Module b) const { return lat->meet(a, b); }
    Module join(Module a, Module b) const { return lat->join(a, b); }
    std::size_t rank(Module a) const { return lat->rank(a); }
    bool split(Module) const { return true; }
};

IeVerdict ie_verdict(const Collection& c, bool check_split = true, std::size_t cap = kDefaultSubsetCap);
bool has_cbp_ie(const Collection& c, std::size_t cap = kDefaultSubsetCap);

struct CommonBasis {
    Matrix basis;                               // rows form a basis of R^n
    std::vector<std::vector<std::size_t>> spans;  // per member, rows spanning it
};

std::optional<CommonBasis> common_basis_greedy(const Collection& c, std::size_t cap = kDefaultSubsetCap);
bool verify_common_basis(const Collection& c, const CommonBasis& b);

// Closure under binary sums and intersections; over Z the result may contain
// non-split modules, so it is returned as a plain list in canonical order.
std::vector<Submodule> closure(const Collection& c, std::size_t cap = kDefaultClosureCap);

// Möbius function of the boolean lattice on nested subsets.
long mobius_boolean(Subset s, Subset t);

std::string subset_to_string(Subset s);  // 1-based, e.g. "{1,3}"

// Memoized CBP test over lattice ids; zero and the ambient space are ignored
// since they are spanned by every basis.
class LatticeCbp {
public:
    explicit LatticeCbp(const SubspaceLattice& lat) : lat_(&lat) {}
    const SubspaceLattice& lattice() const { return *lat_; }
    using Mask = std::vector<std::uint64_t>;  // bit per lattice id

    bool holds(const std::vector<SubspaceLattice::Id>& ids) const;
    bool holds_mask(Mask mask) const;
    Mask empty_mask() const { return Mask((lat_->size() + 63) / 64, 0); }
    static void set(Mask& m, SubspaceLattice::Id a) { m[a / 64] |= std::uint64_t{1} << (a % 64); }
    std::size_t cache_size() const { return cache_.size(); }

private:
    const SubspaceLattice* lat_;
    mutable std::unordered_map<std::string, bool> cache_;
};

}  // namespace cbc
