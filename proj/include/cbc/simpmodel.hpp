#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cbc/complexes.hpp"
#include "cbc/homology.hpp"
#include "cbc/lattice.hpp"

namespace cbc {

// Nondegenerate, non-basepoint multisimplices of D^{a,b}(F_p^n).
//
// Slot j < a holds a strict flag 0 = V_0 < ... < V_q = F_p^n as lattice ids,
// of simplicial degree q. Slot j >= a holds the inner parts A_1..A_q of a
// splitting (0, A_1, ..., A_q, 0), all nonzero, also of degree q. All
// submodules of all slots together have a common basis.
//
// Chains are the total complex of the normalized multisimplicial chains,
// which computes the reduced homology of the diagonal.
class DModel {
public:
    using Id = SubspaceLattice::Id;
    using Slot = std::vector<Id>;
    using Cell = std::vector<Slot>;

    DModel(std::size_t a, std::size_t b, std::size_t n, unsigned long p, const Caps& caps = {});

    std::size_t a() const { return a_; }
    std::size_t b() const { return b_; }
    std::size_t n() const { return n_; }
    unsigned long p() const { return p_; }
    std::size_t slots() const { return a_ + b_; }
    bool is_flag_slot(std::size_t j) const { return j < a_; }
    const SubspaceLattice& lattice() const { return *lat_; }

    long max_degree() const { return static_cast<long>(cells_.size()) - 1; }
    std::size_t count(long d) const;
    std::size_t total_cells() const;
    const Cell& cell(long d, std::size_t i) const { return cells_[static_cast<std::size_t>(d)][i]; }
    std::optional<std::size_t> index_of(const Cell& c) const;

    long slot_degree(const Cell& c, std::size_t j) const;
    long degree(const Cell& c) const;
    // Face d_i in slot j; nullopt when it lands on the basepoint.
    std::optional<Cell> face(const Cell& c, std::size_t j, std::size_t i) const;
    // Same cell shape with every id pushed through a lattice permutation.
    Cell relabel(const Cell& c, const std::vector<Id>& perm) const;

    // Degrees 0..max_degree.
    ChainComplex chain_complex() const;
    // One line per cell: degree, then slots separated by " || ".
    std::string dump() const;

private:
    std::size_t a_, b_, n_;
    unsigned long p_;
    const SubspaceLattice* lat_;
    std::vector<std::vector<Cell>> cells_;
    std::vector<std::map<Cell, std::size_t>> index_;
};

DModel d_model(std::size_t a, std::size_t b, std::size_t n, unsigned long p, const Caps& caps = {});
HomologyProfile model_homology(const DModel& d);

struct BasedChainMap {
    ChainComplex domain, codomain;
    std::vector<SparseMatrix> maps;  // maps[i] acts on degree domain.min_degree + i

    const SparseMatrix& at(long degree) const;
    // Throws unless the map commutes with the boundaries.
    void check() const;
};

// Tensor product of two complexes, basis (x, y) ordered by degree of x then
// indices; sign (-1)^{|x|} on the second factor's boundary.
struct TensorComplex {
    ChainComplex complex;
    // per degree, the (degree of x, index of x, index of y) triple of each basis element
    std::vector<std::vector<std::tuple<long, std::size_t, std::size_t>>> basis;
};
TensorComplex tensor(const ChainComplex& x, const ChainComplex& y);

// Shuffle product of cells x of D(F_p^m) and y of D(F_p^n), landing in
// D(F_p^{m+n}) with the first factor on the first m coordinates.
std::vector<std::pair<std::size_t, std::int64_t>> mu_cells(const DModel& dx, const DModel& dy, const DModel& dxy,
                                                           const DModel::Cell& x, const DModel::Cell& y);

BasedChainMap mu_chain(std::size_t a, std::size_t b, std::size_t m, std::size_t n, unsigned long p,
                       const Caps& caps = {});

// Id permutation of the (m+n)-lattice moving the first m coordinates to
// the last m.
std::vector<SubspaceLattice::Id> block_swap(std::size_t m, std::size_t n, unsigned long p);

struct SuspensionReport {
    HomologyProfile building;  // of T^{a,b}
    HomologyProfile model;     // of D^{a,b}
    long shift = 0;
    bool agree = false;
};
SuspensionReport check_suspension(std::size_t a, std::size_t b, std::size_t n, unsigned long p,
                                  const Caps& caps = {});

struct BarModelReport {
    // (bar degree, model degree) -> (bar side count, model side count)
    std::map<std::pair<long, long>, std::pair<std::size_t, std::size_t>> counts;
    bool injective = true;
    bool counts_match = true;
    std::size_t faces_checked = 0;
    std::size_t face_mismatches = 0;
    bool ok() const { return injective && counts_match && face_mismatches == 0; }
};
// Bar degree q and total model degree both at most cutoff.
BarModelReport check_bar_model(std::size_t a, std::size_t b, std::size_t n, unsigned long p, long cutoff,
                               const Caps& caps = {});

}  // namespace cbc
