#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "cbc/exactlin.hpp"

namespace cbc {

// All subspaces of F_p^n with precomputed meet/join/containment tables.
// Ids follow the canonical submodule order, so id 0 is the zero subspace.
class SubspaceLattice {
public:
    using Id = std::uint16_t;

    SubspaceLattice(std::size_t n, unsigned long p);
    // Shared instance per (n, p); construction is serialized internally.
    static const SubspaceLattice& get(std::size_t n, unsigned long p);

    std::size_t n() const { return n_; }
    unsigned long p() const { return p_; }
    Ring ring() const { return ring_; }
    std::size_t size() const { return subs_.size(); }

    const Submodule& module(Id a) const { return subs_[a]; }
    Id id_of(const Submodule& u) const;
    Id zero() const { return zero_; }
    Id top() const { return top_; }
    unsigned rank(Id a) const { return rank_[a]; }
    Id meet(Id a, Id b) const { return meet_[a * size() + b]; }
    Id join(Id a, Id b) const { return join_[a * size() + b]; }
    bool leq(Id a, Id b) const { return meet(a, b) == a; }
    bool is_proper_nonzero(Id a) const { return a != zero_ && a != top_; }
    std::vector<Id> proper_nonzero() const;
    std::vector<Id> of_rank(unsigned r) const;
    // Complements of a inside top: b with a ∧ b = 0 and a ∨ b = top.
    std::vector<Id> complements(Id a) const;
    // Permutation of ids induced by the invertible map v -> v * g.
    std::vector<Id> transform(const Matrix& g) const;

private:
    std::size_t n_;
    unsigned long p_;
    Ring ring_;
    std::vector<Submodule> subs_;
    std::map<Submodule, Id> index_;
    std::vector<unsigned> rank_;
    std::vector<Id> meet_, join_;
    Id zero_ = 0, top_ = 0;
};

}  // namespace cbc
