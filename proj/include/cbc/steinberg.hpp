#pragma once

#include <memory>
#include <vector>

#include "cbc/homology.hpp"
#include "cbc/simpmodel.hpp"

namespace cbc {

// St_n(F_p) as the top homology of the flag model D^{1,0}_n. Nothing sits
// above degree n, so the homology is the cycle group itself.
class SteinbergModule {
public:
    SteinbergModule(std::size_t n, unsigned long p);

    std::size_t n() const { return n_; }
    unsigned long p() const { return p_; }
    std::size_t rank() const { return cycles_.rank(); }
    const DModel& model() const { return model_; }
    // Cycle basis as rows over the degree-n cells of the model.
    const Matrix& basis() const { return cycles_.basis(); }
    // Coordinates of a degree-n chain in the cycle basis; throws if it is not a cycle.
    std::vector<Int> express(const std::vector<Int>& chain) const;

private:
    std::size_t n_;
    unsigned long p_;
    DModel model_;
    Submodule cycles_;
};

// Shared instance per (n, p); throws CapExceeded beyond n <= 3 (p = 2), n <= 2 (p odd).
const SteinbergModule& st_module(std::size_t n, unsigned long p);
// Computed rank inside the caps, p^{n(n-1)/2} above them.
Int steinberg_rank(std::size_t n, unsigned long p);

// x in St(A), y in St(B), both in coordinates of the transported bases; the
// result is in coordinates of St(A + B). A and B must meet in zero.
std::vector<Int> st_multiply(const Submodule& a, const std::vector<Int>& x, const Submodule& b,
                             const std::vector<Int>& y);

Int gl_order(std::size_t n, unsigned long p);
Int decomposition_count(std::size_t n, unsigned long p, const std::vector<std::size_t>& composition);
// Ordered internal direct-sum decompositions of F_p^n with the given part ranks.
std::vector<std::vector<SubspaceLattice::Id>> enumerate_decompositions(std::size_t n, unsigned long p,
                                                                      const std::vector<std::size_t>& composition);
// Compositions of n into q positive parts, lexicographic.
std::vector<std::vector<std::size_t>> compositions(std::size_t n, std::size_t q);

// Alternating sum of the bar complex basis sizes at grading n.
Int bar_euler(std::size_t n, unsigned long p);

struct BarGenerator {
    std::vector<SubspaceLattice::Id> parts;  // ordered decomposition of F_p^n
    std::vector<std::size_t> index;          // basis element of St(parts[i])
    auto operator<=>(const BarGenerator&) const = default;
};

struct GradedBarComplex {
    std::size_t n = 0;
    unsigned long p = 0;
    std::vector<std::vector<BarGenerator>> basis;  // by homological degree q >= 0
    ChainComplex complex;                          // min_degree 0
};
GradedBarComplex bar_complex(std::size_t n, unsigned long p);
// Degree-q basis size from compositions, decomposition counts and Steinberg ranks.
Int bar_basis_size(std::size_t n, unsigned long p, std::size_t q);

struct TorProfile {
    std::size_t n = 0;
    unsigned long p = 0;
    HomologyProfile tor;         // by homological degree i
    HomologyProfile model;       // H~ of D^{2,0}_n, shifted down by n
    long join_top_rank = 0;      // rank of H~_{2n-3}(T_n * T_n)
    bool tord_agrees = false;    // tor == model
    bool join_agrees = false;    // rank Tor_n == join_top_rank
    Int euler = 0;               // bar_euler(n, p)
    bool euler_agrees = false;   // euler == sum (-1)^i rank Tor_i
    bool koszul() const;         // concentrated in degree n and free there
    bool cross_checks_pass() const { return tord_agrees && join_agrees && euler_agrees; }
};
TorProfile tor(std::size_t n, unsigned long p);

}  // namespace cbc
