#pragma once

// Shared helpers for the test binaries: seeded generators and small oracles.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cbc/exactlin.hpp"
#include "cbc/lattice.hpp"

namespace cbc::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Matrix random_matrix(Rng& rng, Ring ring, std::size_t rows, std::size_t cols, long lo, long hi) {
    Matrix m(ring, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, lo, hi);
    m.normalize();
    return m;
}

// Product of random elementary operations; determinant is a unit.
inline Matrix random_unimodular(Rng& rng, Ring ring, std::size_t n, int steps = 12) {
    Matrix t = Matrix::identity(ring, n);
    if (n < 2) return t;
    for (int s = 0; s < steps; ++s) {
        std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 1));
        std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n) - 2));
        if (j >= i) ++j;
        long q = uniform(rng, -2, 2);
        for (std::size_t c = 0; c < n; ++c) t(i, c) += q * t(j, c);
        if (uniform(rng, 0, 3) == 0) t.swap_rows(i, j);
    }
    t.normalize();
    return t;
}

inline Matrix rows_of(const Matrix& m, const std::vector<std::size_t>& idx) {
    Matrix out(m.ring(), 0, m.cols());
    for (std::size_t i : idx) out.append_row(m.row(i));
    return out;
}

// Every ordered basis of F_p^n up to order: all sets of n independent vectors.
// Returns true if some basis spans each member by a subset of itself.
inline bool brute_force_common_basis(const SubspaceLattice& lat, const std::vector<Submodule>& members) {
    const std::size_t n = lat.n();
    const unsigned long p = lat.p();
    std::size_t count = 1;
    for (std::size_t j = 0; j < n; ++j) count *= p;
    std::vector<std::vector<long>> vecs;
    for (std::size_t c = 1; c < count; ++c) {
        std::vector<long> v(n);
        std::size_t x = c;
        for (std::size_t j = 0; j < n; ++j) {
            v[j] = static_cast<long>(x % p);
            x /= p;
        }
        vecs.push_back(v);
    }
    const Ring ring = lat.ring();
    std::vector<std::size_t> pick;
    bool found = false;
    auto check = [&]() {
        for (const Submodule& u : members) {
            std::vector<std::vector<long>> inside;
            for (std::size_t i : pick) {
                std::vector<Int> v(vecs[i].begin(), vecs[i].end());
                if (contains_vector(u, v)) inside.push_back(vecs[i]);
            }
            if (span_of(ring, n, inside) != u) return false;
        }
        return true;
    };
    auto rec = [&](auto& self, std::size_t start) -> void {
        if (found) return;
        if (pick.size() == n) {
            std::vector<std::vector<long>> rows;
            for (std::size_t i : pick) rows.push_back(vecs[i]);
            if (span_of(ring, n, rows).rank() == n && check()) found = true;
            return;
        }
        for (std::size_t i = start; i < vecs.size() && !found; ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return found;
}

}  // namespace cbc::testing

namespace cbc::testing {

// Random matrix with entries in [lo, hi] and unit determinant, by rejection.
inline Matrix random_bounded_unimodular(Rng& rng, Ring ring, std::size_t n, long lo, long hi) {
    for (;;) {
        Matrix m = random_matrix(rng, ring, n, n, lo, hi);
        Int d = determinant(m);
        if (ring.is_field() ? sgn(d) != 0 : abs(d) == 1) return m;
    }
}

// Random summand generated by rows with entries in [lo, hi], by rejection.
inline Submodule random_split(Rng& rng, Ring ring, std::size_t n, long lo, long hi) {
    for (;;) {
        std::size_t r = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(n)));
        Submodule u = canonicalize(random_matrix(rng, ring, r, n, lo, hi));
        if (is_split(u)) return u;
    }
}

// Collections of k summands of R^n; roughly half are spanned by subsets of a
// common basis, the rest mix in independent random summands.
inline std::vector<Submodule> random_split_collection(Rng& rng, Ring ring, std::size_t n, std::size_t k,
                                                      long lo = -3, long hi = 3) {
    std::vector<Submodule> out;
    long mode = uniform(rng, 0, 2);
    Matrix b = random_bounded_unimodular(rng, ring, n, lo, hi);
    for (std::size_t i = 0; i < k; ++i) {
        bool from_basis = mode == 0 || (mode == 1 && uniform(rng, 0, 2) != 0);
        if (from_basis) {
            std::vector<std::size_t> idx;
            for (std::size_t j = 0; j < n; ++j)
                if (uniform(rng, 0, 1)) idx.push_back(j);
            out.push_back(canonicalize(rows_of(b, idx)));
        } else {
            out.push_back(random_split(rng, ring, n, lo, hi));
        }
    }
    return out;
}

}  // namespace cbc::testing
