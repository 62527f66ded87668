#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "cbc/complexes.hpp"
#include "cbc/exactlin.hpp"

namespace cbc {

// Row i holds the image of domain basis element i, as sorted (column, value) pairs.
class SparseMatrix {
public:
    using Entry = std::pair<std::uint32_t, std::int64_t>;

    SparseMatrix() = default;
    SparseMatrix(std::size_t rows, std::size_t cols);  // zero matrix
    explicit SparseMatrix(std::size_t cols) : cols_(cols) {}

    std::size_t rows() const { return offsets_.size() - 1; }
    std::size_t cols() const { return cols_; }
    std::size_t nnz() const { return entries_.size(); }
    // Entries may come unsorted and repeated; they are summed and zeros dropped.
    void add_row(std::vector<Entry> entries);
    std::span<const Entry> row(std::size_t i) const {
        return {entries_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    Matrix to_dense(Ring ring = Ring::integers()) const;
    static SparseMatrix from_dense(const Matrix& m);
    SparseMatrix operator*(const SparseMatrix& other) const;  // (this then other) as row maps
    bool is_zero() const;
    bool operator==(const SparseMatrix&) const = default;

private:
    std::size_t cols_ = 0;
    std::vector<std::size_t> offsets_{0};
    std::vector<Entry> entries_;
};

// Graded free chain complex; boundary[i] maps degree min_degree+i to the degree below.
struct ChainComplex {
    long min_degree = -1;
    std::vector<std::size_t> sizes;
    std::vector<SparseMatrix> boundary;

    long max_degree() const { return min_degree + static_cast<long>(sizes.size()) - 1; }
    std::size_t size(long d) const;
    const SparseMatrix& d(long degree) const;
    // Checks shapes and that consecutive boundaries compose to zero; throws Error otherwise.
    void check() const;
};

struct HomologyGroup {
    long betti = 0;
    std::vector<Int> torsion;  // invariant factors > 1, each dividing the next
    bool is_zero() const { return betti == 0 && torsion.empty(); }
    bool is_free() const { return torsion.empty(); }
    bool operator==(const HomologyGroup&) const = default;
};

struct HomologyProfile {
    std::map<long, HomologyGroup> groups;  // nonzero degrees only

    HomologyGroup at(long d) const;
    long betti(long d) const { return at(d).betti; }
    bool is_zero() const { return groups.empty(); }
    bool is_free() const;
    HomologyProfile shifted(long k) const;  // degree d moves to d + k
    HomologyProfile& operator+=(const HomologyProfile& other);  // direct sum
    std::string to_string() const;
    bool operator==(const HomologyProfile&) const = default;
};

struct SnfSummary {
    std::size_t rank = 0;
    std::vector<Int> divisors;  // elementary divisors greater than 1
};

// Smith form data of a sparse integer matrix: unit pivots are eliminated
// sparsely, the residual goes through dense SNF.
SnfSummary sparse_snf(const SparseMatrix& m);
std::size_t sparse_rank_mod_p(const SparseMatrix& m, unsigned long p);

// Augmented chains: degree -1 has one basis element.
ChainComplex chains(const SimplicialComplex& k);
// C(X)/C(Y), unaugmented; Y is matched to X through vertex labels.
ChainComplex relative_chains(const SimplicialComplex& x, const SimplicialComplex& y);

HomologyProfile homology(const ChainComplex& c);
// Betti numbers over F_p, by degree; never reports torsion.
std::map<long, long> betti_mod_p(const ChainComplex& c, unsigned long p);

HomologyProfile reduced_homology(const SimplicialComplex& k);
HomologyProfile relative_homology(const SimplicialComplex& x, const SimplicialComplex& y);
bool is_c_connected_homologically(const SimplicialComplex& k, long c);

struct MorseReport {
    HomologyProfile relative;  // of (X, Y)
    HomologyProfile wedge;     // sum over S of shifted link homology
    bool agree = false;
};
MorseReport morse_certify(const MorseInstance& inst);

}  // namespace cbc
