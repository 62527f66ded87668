#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "cbc/errors.hpp"

namespace cbc {

using Int = mpz_class;

// Z (characteristic 0) or a prime field F_p.
class Ring {
public:
    Ring() = default;
    static Ring integers() { return Ring(); }
    static Ring prime_field(unsigned long p);
    static Ring parse(std::string_view name);

    bool is_field() const { return p_ != 0; }
    unsigned long characteristic() const { return p_; }
    void reduce(Int& x) const;
    std::string name() const;

    friend bool operator==(const Ring&, const Ring&) = default;
    friend auto operator<=>(const Ring&, const Ring&) = default;

private:
    explicit Ring(unsigned long p) : p_(p) {}
    unsigned long p_ = 0;
};

bool is_prime(unsigned long p);

// Dense row-major matrix of exact scalars.
class Matrix {
public:
    Matrix() = default;
    Matrix(Ring ring, std::size_t rows, std::size_t cols);
    static Matrix from_rows(Ring ring, std::size_t cols,
                            const std::vector<std::vector<long>>& rows);
    static Matrix identity(Ring ring, std::size_t n);

    const Ring& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    std::span<Int> row(std::size_t i) { return {a_.data() + i * cols_, cols_}; }
    std::span<const Int> row(std::size_t i) const { return {a_.data() + i * cols_, cols_}; }

    void append_row(std::span<const Int> r);
    void append_rows(const Matrix& other);
    void swap_rows(std::size_t i, std::size_t j);
    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    // Reduces every entry into the ring's canonical representatives.
    void normalize();

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    Ring ring_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

// A submodule of R^n held by its canonical basis: RREF over F_p, row Hermite
// normal form over Z (positive pivots, entries above pivots in [0, pivot)).
class Submodule {
public:
    Submodule() = default;
    static Submodule zero(Ring ring, std::size_t n);
    static Submodule ambient(Ring ring, std::size_t n);

    const Ring& ring() const { return basis_.ring(); }
    std::size_t ambient_rank() const { return basis_.cols(); }
    std::size_t rank() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    std::vector<std::size_t> pivots() const;

    friend bool operator==(const Submodule&, const Submodule&) = default;
    friend std::strong_ordering operator<=>(const Submodule& a, const Submodule& b);

private:
    friend Submodule canonicalize(Matrix generators);
    Matrix basis_;
};

Submodule canonicalize(Matrix generators);
Submodule span_of(Ring ring, std::size_t n, const std::vector<std::vector<long>>& rows);

// Nonzero elementary divisors d_1 | d_2 | ... of an integer matrix.
std::vector<Int> snf(const Matrix& m);
std::size_t matrix_rank(const Matrix& m);

bool is_split(const Submodule& u);
Submodule sum(const Submodule& u, const Submodule& w);
Submodule intersect(const Submodule& u, const Submodule& w);
bool contains(const Submodule& u, const Submodule& w);
bool contains_vector(const Submodule& u, std::span<const Int> v);
// Rows of a basis of R^n; the first rank(u) rows are u's canonical basis.
Matrix extend_to_ambient_basis(const Submodule& u);
// Smallest summand containing u (u tensor Q intersected with Z^n).
Submodule saturate(const Submodule& u);
// Coefficients of v in the canonical basis of u; throws if v is not in u.
std::vector<Int> coordinates(const Submodule& u, std::span<const Int> v);
// Left kernel {x : x * m = 0} as a canonical submodule of R^{rows(m)}.
Submodule left_kernel(const Matrix& m);
// Image of u under the linear map v -> v * g.
Submodule image(const Submodule& u, const Matrix& g);
Int determinant(const Matrix& m);

// Text forms. Block form: header "ring n rank" then one row per line.
std::string to_text(const Submodule& u);
std::string to_text(const Matrix& m);
Submodule submodule_from_text(std::istream& in);
Matrix matrix_from_text(std::istream& in);
// Single-line form "ring n rank : r1 ; r2", used for vertex labels.
std::string to_inline(const Submodule& u);
Submodule submodule_from_inline(std::string_view s);

}  // namespace cbc
