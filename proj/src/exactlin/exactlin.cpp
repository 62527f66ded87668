#include "cbc/exactlin.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "echelon.hpp"

namespace cbc {

// ---------------------------------------------------------------- Ring

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

Ring Ring::prime_field(unsigned long p) {
    if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
    return Ring(p);
}

Ring Ring::parse(std::string_view name) {
    if (name == "Z") return integers();
    if (name.size() >= 2 && name[0] == 'F') {
        unsigned long p = 0;
        for (char ch : name.substr(1)) {
            if (ch < '0' || ch > '9') throw ParseError("bad ring name: " + std::string(name));
            p = p * 10 + static_cast<unsigned long>(ch - '0');
        }
        return prime_field(p);
    }
    throw ParseError("bad ring name: " + std::string(name));
}

void Ring::reduce(Int& x) const {
    if (p_ == 0) return;
    mpz_fdiv_r_ui(x.get_mpz_t(), x.get_mpz_t(), p_);
}

std::string Ring::name() const { return p_ == 0 ? "Z" : "F" + std::to_string(p_); }

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), a_(rows * cols) {}

Matrix Matrix::from_rows(Ring ring, std::size_t cols, const std::vector<std::vector<long>>& rows) {
    Matrix m(ring, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InvalidArgument("row width mismatch");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    m.normalize();
    return m;
}

Matrix Matrix::identity(Ring ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

void Matrix::append_row(std::span<const Int> r) {
    if (r.size() != cols_) throw InvalidArgument("row width mismatch");
    a_.insert(a_.end(), r.begin(), r.end());
    ++rows_;
    for (std::size_t j = 0; j < cols_; ++j) ring_.reduce(a_[(rows_ - 1) * cols_ + j]);
}

void Matrix::append_rows(const Matrix& other) {
    if (other.cols_ != cols_ || other.ring_ != ring_) throw AmbientMismatch();
    a_.insert(a_.end(), other.a_.begin(), other.a_.end());
    rows_ += other.rows_;
}

void Matrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

Matrix Matrix::transpose() const {
    Matrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_ || ring_ != rhs.ring_) throw InvalidArgument("matrix shape mismatch");
    Matrix out(ring_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    out.normalize();
    return out;
}

void Matrix::normalize() {
    for (auto& x : a_) ring_.reduce(x);
}

// ---------------------------------------------------------------- echelon

namespace detail {

namespace {

struct Ops {
    Matrix& a;
    Matrix* t;
    Matrix* tinv;
    const Ring& ring;

    void swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        a.swap_rows(i, j);
        if (t) t->swap_rows(i, j);
        if (tinv)
            for (std::size_t r = 0; r < tinv->rows(); ++r) std::swap((*tinv)(r, i), (*tinv)(r, j));
    }
    // row_r += q * row_s
    void addmul(std::size_t r, std::size_t s, const Int& q) {
        if (sgn(q) == 0) return;
        auto add = [&](Matrix& m) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                m(r, c) += q * m(s, c);
                ring.reduce(m(r, c));
            }
        };
        add(a);
        if (t) add(*t);
        if (tinv)
            for (std::size_t x = 0; x < tinv->rows(); ++x) {
                (*tinv)(x, s) -= q * (*tinv)(x, r);
                ring.reduce((*tinv)(x, s));
            }
    }
    // row_r *= u for a unit u; uinv is its inverse
    void scale(std::size_t r, const Int& u, const Int& uinv) {
        auto mul = [&](Matrix& m) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                m(r, c) *= u;
                ring.reduce(m(r, c));
            }
        };
        mul(a);
        if (t) mul(*t);
        if (tinv)
            for (std::size_t x = 0; x < tinv->rows(); ++x) {
                (*tinv)(x, r) *= uinv;
                ring.reduce((*tinv)(x, r));
            }
    }
    // (row_i, row_j) <- (s row_i + t row_j, u row_i + v row_j), sv - tu = 1
    void combine(std::size_t i, std::size_t j, const Int& s, const Int& tt, const Int& u, const Int& v) {
        auto rows = [&](Matrix& m) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                Int x = m(i, c), y = m(j, c);
                m(i, c) = s * x + tt * y;
                m(j, c) = u * x + v * y;
            }
        };
        rows(a);
        if (t) rows(*t);
        if (tinv)
            for (std::size_t r = 0; r < tinv->rows(); ++r) {
                Int x = (*tinv)(r, i), y = (*tinv)(r, j);
                (*tinv)(r, i) = v * x - u * y;
                (*tinv)(r, j) = s * y - tt * x;
            }
    }
};

std::vector<std::size_t> echelon_integer(Ops& op) {
    Matrix& a = op.a;
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < a.cols() && pr < a.rows(); ++c) {
        for (std::size_t i = pr + 1; i < a.rows(); ++i) {
            if (sgn(a(i, c)) == 0) continue;
            if (sgn(a(pr, c)) == 0) {
                op.swap(pr, i);
                continue;
            }
            Int q;
            if (mpz_divisible_p(a(i, c).get_mpz_t(), a(pr, c).get_mpz_t())) {
                mpz_divexact(q.get_mpz_t(), a(i, c).get_mpz_t(), a(pr, c).get_mpz_t());
                op.addmul(i, pr, -q);
                continue;
            }
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(pr, c).get_mpz_t(), a(i, c).get_mpz_t());
            Int u = -a(i, c) / g, v = a(pr, c) / g;
            op.combine(pr, i, s, t, u, v);
        }
        if (sgn(a(pr, c)) == 0) continue;
        if (sgn(a(pr, c)) < 0) op.scale(pr, Int(-1), Int(-1));
        for (std::size_t r = 0; r < pr; ++r) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a(r, c).get_mpz_t(), a(pr, c).get_mpz_t());
            op.addmul(r, pr, -q);
        }
        pivots.push_back(c);
        ++pr;
    }
    return pivots;
}

std::vector<std::size_t> echelon_field(Ops& op) {
    Matrix& a = op.a;
    Int p(static_cast<unsigned long>(op.ring.characteristic()));
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < a.cols() && pr < a.rows(); ++c) {
        std::size_t i = pr;
        while (i < a.rows() && sgn(a(i, c)) == 0) ++i;
        if (i == a.rows()) continue;
        op.swap(pr, i);
        if (a(pr, c) != 1) {
            Int inv;
            mpz_invert(inv.get_mpz_t(), a(pr, c).get_mpz_t(), p.get_mpz_t());
            Int u = a(pr, c);
            op.scale(pr, inv, u);
        }
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == pr || sgn(a(r, c)) == 0) continue;
            op.addmul(r, pr, -a(r, c));
        }
        pivots.push_back(c);
        ++pr;
    }
    return pivots;
}

}  // namespace

std::vector<std::size_t> echelonize(Matrix& a, Matrix* t, Matrix* tinv) {
    a.normalize();
    Ops op{a, t, tinv, a.ring()};
    return a.ring().is_field() ? echelon_field(op) : echelon_integer(op);
}

}  // namespace detail

// ---------------------------------------------------------------- Submodule

Submodule canonicalize(Matrix generators) {
    auto piv = detail::echelonize(generators, nullptr, nullptr);
    Submodule u;
    u.basis_ = Matrix(generators.ring(), 0, generators.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) u.basis_.append_row(generators.row(i));
    return u;
}

Submodule Submodule::zero(Ring ring, std::size_t n) { return canonicalize(Matrix(ring, 0, n)); }

Submodule Submodule::ambient(Ring ring, std::size_t n) { return canonicalize(Matrix::identity(ring, n)); }

Submodule span_of(Ring ring, std::size_t n, const std::vector<std::vector<long>>& rows) {
    return canonicalize(Matrix::from_rows(ring, n, rows));
}

std::vector<std::size_t> Submodule::pivots() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rank(); ++i) {
        std::size_t c = 0;
        while (sgn(basis_(i, c)) == 0) ++c;
        out.push_back(c);
    }
    return out;
}

std::strong_ordering operator<=>(const Submodule& a, const Submodule& b) {
    if (auto c = a.ring() <=> b.ring(); c != 0) return c;
    if (auto c = a.ambient_rank() <=> b.ambient_rank(); c != 0) return c;
    std::size_t n = a.ambient_rank();
    std::size_t la = a.rank() * n, lb = b.rank() * n;
    for (std::size_t k = 0; k < std::min(la, lb); ++k) {
        int c = cmp(a.basis()(k / n, k % n), b.basis()(k / n, k % n));
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
    }
    return la <=> lb;
}

// ---------------------------------------------------------------- SNF

namespace {
int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
}  // namespace

std::vector<Int> snf(const Matrix& m) {
    if (m.ring().is_field()) return std::vector<Int>(matrix_rank(m), Int(1));
    Matrix a = m;
    const std::size_t R = a.rows(), C = a.cols();
    std::vector<Int> divisors;
    auto find_min = [&](std::size_t t, std::size_t& bi, std::size_t& bj) {
        bool found = false;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                if (sgn(a(i, j)) == 0) continue;
                if (!found || cmpabs(a(i, j), a(bi, bj)) < 0) {
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        return found;
    };
    auto swap_cols = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        for (std::size_t i = 0; i < R; ++i) std::swap(a(i, x), a(i, y));
    };
    for (std::size_t t = 0; t < std::min(R, C); ++t) {
        std::size_t bi = 0, bj = 0;
        if (!find_min(t, bi, bj)) break;
        a.swap_rows(t, bi);
        swap_cols(t, bj);
        for (;;) {
            bool clean = true;
            Int q;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (sgn(a(i, t)) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                for (std::size_t j = t; j < C; ++j) a(i, j) -= q * a(t, j);
                if (sgn(a(i, t)) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (sgn(a(t, j)) == 0) continue;
                mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                for (std::size_t i = t; i < R; ++i) a(i, j) -= q * a(i, t);
                if (sgn(a(t, j)) != 0) clean = false;
            }
            if (!clean) {
                // a smaller remainder now sits in row t or column t
                std::size_t mi = t, mj = t;
                for (std::size_t i = t + 1; i < R; ++i)
                    if (sgn(a(i, t)) != 0 && cmpabs(a(i, t), a(mi, mj)) < 0) mi = i, mj = t;
                for (std::size_t j = t + 1; j < C; ++j)
                    if (sgn(a(t, j)) != 0 && cmpabs(a(t, j), a(mi, mj)) < 0) mi = t, mj = j;
                a.swap_rows(t, mi);
                swap_cols(t, mj);
                continue;
            }
            std::size_t bad = R;
            for (std::size_t i = t + 1; i < R && bad == R; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == R) break;
            for (std::size_t j = t; j < C; ++j) a(t, j) += a(bad, j);
        }
        divisors.push_back(abs(a(t, t)));
    }
    return divisors;
}

std::size_t matrix_rank(const Matrix& m) {
    Matrix a = m;
    return detail::echelonize(a, nullptr, nullptr).size();
}

Int determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    Matrix a = m;
    if (m.ring().is_field()) {
        // Gaussian elimination mod p
        Int det = 1, p(static_cast<unsigned long>(m.ring().characteristic()));
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t i = c;
            while (i < n && sgn(a(i, c)) == 0) ++i;
            if (i == n) return 0;
            if (i != c) {
                a.swap_rows(i, c);
                det = -det;
            }
            det *= a(c, c);
            Int inv;
            mpz_invert(inv.get_mpz_t(), a(c, c).get_mpz_t(), p.get_mpz_t());
            for (std::size_t r = c + 1; r < n; ++r) {
                if (sgn(a(r, c)) == 0) continue;
                Int f = a(r, c) * inv;
                for (std::size_t j = c; j < n; ++j) {
                    a(r, j) -= f * a(c, j);
                    m.ring().reduce(a(r, j));
                }
            }
            m.ring().reduce(det);
        }
        return det;
    }
    // Bareiss fraction-free elimination
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(a(k, k)) == 0) {
            std::size_t i = k + 1;
            while (i < n && sgn(a(i, k)) == 0) ++i;
            if (i == n) return 0;
            a.swap_rows(i, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------- module ops

namespace {

void check_same(const Submodule& u, const Submodule& w) {
    if (u.ring() != w.ring() || u.ambient_rank() != w.ambient_rank()) throw AmbientMismatch();
}

}  // namespace

bool is_split(const Submodule& u) {
    if (u.ring().is_field()) return true;
    for (const Int& d : snf(u.basis()))
        if (d != 1) return false;
    return true;
}

Submodule sum(const Submodule& u, const Submodule& w) {
    check_same(u, w);
    Matrix g = u.basis();
    g.append_rows(w.basis());
    return canonicalize(std::move(g));
}

Submodule left_kernel(const Matrix& m) {
    Matrix a = m;
    Matrix t = Matrix::identity(m.ring(), m.rows());
    std::size_t r = detail::echelonize(a, &t, nullptr).size();
    Matrix k(m.ring(), 0, m.rows());
    for (std::size_t i = r; i < m.rows(); ++i) k.append_row(t.row(i));
    return canonicalize(std::move(k));
}

Submodule intersect(const Submodule& u, const Submodule& w) {
    check_same(u, w);
    Matrix stacked = u.basis();
    stacked.append_rows(w.basis());
    Submodule ker = left_kernel(stacked);
    Matrix xs(u.ring(), ker.rank(), u.rank());
    for (std::size_t i = 0; i < ker.rank(); ++i)
        for (std::size_t j = 0; j < u.rank(); ++j) xs(i, j) = ker.basis()(i, j);
    if (u.rank() == 0) return Submodule::zero(u.ring(), u.ambient_rank());
    return canonicalize(xs * u.basis());
}

namespace {

// Reduces v against u's echelon rows; returns the coefficients and leaves the
// remainder in v.
std::vector<Int> reduce_against(const Submodule& u, std::vector<Int>& v) {
    const Ring& ring = u.ring();
    auto piv = u.pivots();
    std::vector<Int> coef(u.rank());
    for (std::size_t k = 0; k < u.rank(); ++k) {
        const Int& pv = u.basis()(k, piv[k]);
        Int q;
        if (ring.is_field()) {
            q = v[piv[k]];  // pivots are 1 in RREF
        } else {
            if (!mpz_divisible_p(v[piv[k]].get_mpz_t(), pv.get_mpz_t())) return coef;
            mpz_divexact(q.get_mpz_t(), v[piv[k]].get_mpz_t(), pv.get_mpz_t());
        }
        coef[k] = q;
        if (sgn(q) == 0) continue;
        for (std::size_t c = 0; c < v.size(); ++c) {
            v[c] -= q * u.basis()(k, c);
            ring.reduce(v[c]);
        }
    }
    return coef;
}

}  // namespace

bool contains_vector(const Submodule& u, std::span<const Int> v) {
    if (v.size() != u.ambient_rank()) throw AmbientMismatch();
    std::vector<Int> r(v.begin(), v.end());
    for (auto& x : r) u.ring().reduce(x);
    reduce_against(u, r);
    return std::all_of(r.begin(), r.end(), [](const Int& x) { return sgn(x) == 0; });
}

bool contains(const Submodule& u, const Submodule& w) {
    check_same(u, w);
    for (std::size_t i = 0; i < w.rank(); ++i)
        if (!contains_vector(u, w.basis().row(i))) return false;
    return true;
}

std::vector<Int> coordinates(const Submodule& u, std::span<const Int> v) {
    if (v.size() != u.ambient_rank()) throw AmbientMismatch();
    std::vector<Int> r(v.begin(), v.end());
    for (auto& x : r) u.ring().reduce(x);
    auto coef = reduce_against(u, r);
    for (const Int& x : r)
        if (sgn(x) != 0) throw InvalidArgument("vector is not in the submodule");
    return coef;
}

Matrix extend_to_ambient_basis(const Submodule& u) {
    const std::size_t n = u.ambient_rank(), r = u.rank();
    Matrix out = u.basis();
    if (u.ring().is_field()) {
        auto piv = u.pivots();
        std::vector<Int> e(n);
        for (std::size_t c = 0, k = 0; c < n; ++c) {
            if (k < piv.size() && piv[k] == c) {
                ++k;
                continue;
            }
            e.assign(n, Int(0));
            e[c] = 1;
            out.append_row(e);
        }
        return out;
    }
    // Column reduction B^T -> H with T B^T = H; the unimodular completion is
    // read off the trailing columns of T^{-1}.
    Matrix bt = u.basis().transpose();
    Matrix t = Matrix::identity(u.ring(), n), tinv = Matrix::identity(u.ring(), n);
    detail::echelonize(bt, &t, &tinv);
    for (std::size_t i = 0; i < r; ++i)
        if (bt(i, i) != 1) throw NotSplit();
    std::vector<Int> row(n);
    for (std::size_t c = r; c < n; ++c) {
        for (std::size_t j = 0; j < n; ++j) row[j] = tinv(j, c);
        out.append_row(row);
    }
    return out;
}

Submodule saturate(const Submodule& u) {
    if (u.ring().is_field()) return u;
    Submodule right_ker = left_kernel(u.basis().transpose());
    return left_kernel(right_ker.basis().transpose());
}

Submodule image(const Submodule& u, const Matrix& g) {
    if (g.rows() != u.ambient_rank()) throw AmbientMismatch();
    if (u.rank() == 0) return Submodule::zero(u.ring(), g.cols());
    return canonicalize(u.basis() * g);
}

// ---------------------------------------------------------------- text

namespace {

void write_rows(std::ostringstream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).get_str();
        os << '\n';
    }
}

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        auto pos = line.find_first_not_of(" \t\r");
        if (pos != std::string::npos && line[pos] != '#') return true;
    }
    return false;
}

Matrix read_block(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) throw ParseError("expected header 'ring n rank'");
    std::istringstream hs(line);
    std::string ring_name;
    long n = -1, rows = -1;
    if (!(hs >> ring_name >> n >> rows) || n < 0 || rows < 0) throw ParseError("bad header: " + line);
    Ring ring = Ring::parse(ring_name);
    Matrix m(ring, 0, static_cast<std::size_t>(n));
    std::vector<Int> row(static_cast<std::size_t>(n));
    for (long i = 0; i < rows; ++i) {
        if (!next_content_line(in, line)) throw ParseError("missing matrix row");
        std::istringstream rs(line);
        std::string tok;
        for (long j = 0; j < n; ++j) {
            if (!(rs >> tok) || row[static_cast<std::size_t>(j)].set_str(tok, 10) != 0)
                throw ParseError("bad matrix row: " + line);
        }
        if (rs >> tok) throw ParseError("extra entries in row: " + line);
        m.append_row(row);
    }
    return m;
}

}  // namespace

std::string to_text(const Matrix& m) {
    std::ostringstream os;
    os << m.ring().name() << ' ' << m.cols() << ' ' << m.rows() << '\n';
    write_rows(os, m);
    return os.str();
}

std::string to_text(const Submodule& u) { return to_text(u.basis()); }

Matrix matrix_from_text(std::istream& in) { return read_block(in); }

Submodule submodule_from_text(std::istream& in) { return canonicalize(read_block(in)); }

std::string to_inline(const Submodule& u) {
    std::ostringstream os;
    os << u.ring().name() << ' ' << u.ambient_rank() << ' ' << u.rank() << " :";
    for (std::size_t i = 0; i < u.rank(); ++i) {
        if (i) os << " ;";
        for (std::size_t j = 0; j < u.ambient_rank(); ++j) os << ' ' << u.basis()(i, j).get_str();
    }
    return os.str();
}

Submodule submodule_from_inline(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos) throw ParseError("inline submodule lacks ':'");
    std::string text(s.substr(0, colon));
    text += '\n';
    std::string body(s.substr(colon + 1));
    std::replace(body.begin(), body.end(), ';', '\n');
    std::istringstream hs(text);
    std::string ring_name;
    long n = 0, r = 0;
    hs >> ring_name >> n >> r;
    if (r > 0) text += body;
    std::istringstream in(text);
    return submodule_from_text(in);
}

}  // namespace cbc
