#include "cbc/lattice.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

namespace cbc {

namespace {

using Bits = std::vector<std::uint64_t>;

// Vectors of F_p^n are encoded as base-p integers, coordinate 0 least significant.
struct Codec {
    std::size_t n;
    unsigned long p;
    std::size_t count;

    std::size_t encode(const std::vector<unsigned long>& v) const {
        std::size_t c = 0;
        for (std::size_t j = n; j-- > 0;) c = c * p + v[j];
        return c;
    }
    std::size_t add(std::size_t a, std::size_t b) const {
        if (p == 2) return a ^ b;
        std::size_t out = 0, mul = 1;
        for (std::size_t j = 0; j < n; ++j) {
            out += ((a % p + b % p) % p) * mul;
            a /= p;
            b /= p;
            mul *= p;
        }
        return out;
    }
};

Bits elements_of(const Submodule& u, const Codec& codec) {
    Bits bits((codec.count + 63) / 64, 0);
    const std::size_t r = u.rank();
    std::vector<std::size_t> rows(r);
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<unsigned long> v(codec.n);
        for (std::size_t j = 0; j < codec.n; ++j) v[j] = u.basis()(i, j).get_ui();
        rows[i] = codec.encode(v);
    }
    // enumerate all coefficient vectors in F_p^r by repeated addition
    std::vector<std::size_t> span{0};
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t base = span.size();
        for (unsigned long c = 1; c < codec.p; ++c)
            for (std::size_t k = 0; k < base; ++k) span.push_back(codec.add(span[(c - 1) * base + k], rows[i]));
    }
    for (std::size_t c : span) bits[c / 64] |= std::uint64_t{1} << (c % 64);
    return bits;
}

void enumerate_rref(std::size_t n, unsigned long p, const Ring& ring, std::vector<Submodule>& out) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> piv;
        for (std::size_t j = 0; j < n; ++j)
            if (mask >> j & 1) piv.push_back(j);
        // free slots: row i, column j > piv[i], j not a pivot column
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t i = 0; i < piv.size(); ++i)
            for (std::size_t j = piv[i] + 1; j < n; ++j)
                if (!(mask >> j & 1)) slots.emplace_back(i, j);
        std::vector<unsigned long> digit(slots.size(), 0);
        for (;;) {
            Matrix m(ring, piv.size(), n);
            for (std::size_t i = 0; i < piv.size(); ++i) m(i, piv[i]) = 1;
            for (std::size_t s = 0; s < slots.size(); ++s) m(slots[s].first, slots[s].second) = digit[s];
            out.push_back(canonicalize(std::move(m)));
            std::size_t s = 0;
            while (s < digit.size() && ++digit[s] == p) digit[s++] = 0;
            if (s == digit.size()) break;
        }
    }
}

}  // namespace

SubspaceLattice::SubspaceLattice(std::size_t n, unsigned long p)
    : n_(n), p_(p), ring_(Ring::prime_field(p)) {
    Codec codec{n, p, 1};
    for (std::size_t j = 0; j < n; ++j) {
        codec.count *= p;
        if (codec.count > (std::size_t{1} << 20)) throw CapExceeded("subspace lattice too large");
    }
    enumerate_rref(n, p, ring_, subs_);
    std::sort(subs_.begin(), subs_.end());
    if (subs_.size() > 0xFFFF) throw CapExceeded("subspace lattice too large");
    const std::size_t N = subs_.size();
    std::map<Bits, Id> by_bits;
    std::vector<Bits> elems(N);
    for (std::size_t a = 0; a < N; ++a) {
        index_.emplace(subs_[a], static_cast<Id>(a));
        rank_.push_back(static_cast<unsigned>(subs_[a].rank()));
        elems[a] = elements_of(subs_[a], codec);
        by_bits.emplace(elems[a], static_cast<Id>(a));
        if (subs_[a].rank() == n) top_ = static_cast<Id>(a);
        if (subs_[a].rank() == 0) zero_ = static_cast<Id>(a);
    }
    meet_.assign(N * N, 0);
    join_.assign(N * N, 0);
    std::vector<std::vector<std::size_t>> members(N);
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t c = 0; c < codec.count; ++c)
            if (elems[a][c / 64] >> (c % 64) & 1) members[a].push_back(c);
    for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = a; b < N; ++b) {
            Bits m(elems[a].size());
            for (std::size_t w = 0; w < m.size(); ++w) m[w] = elems[a][w] & elems[b][w];
            Id mid = by_bits.at(m);
            Bits s(elems[a].size(), 0);
            for (std::size_t x : members[a])
                for (std::size_t y : members[b]) {
                    std::size_t z = codec.add(x, y);
                    s[z / 64] |= std::uint64_t{1} << (z % 64);
                }
            Id jid = by_bits.at(s);
            meet_[a * N + b] = meet_[b * N + a] = mid;
            join_[a * N + b] = join_[b * N + a] = jid;
        }
}

const SubspaceLattice& SubspaceLattice::get(std::size_t n, unsigned long p) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, unsigned long>, std::unique_ptr<SubspaceLattice>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{n, p}];
    if (!slot) slot = std::make_unique<SubspaceLattice>(n, p);
    return *slot;
}

SubspaceLattice::Id SubspaceLattice::id_of(const Submodule& u) const {
    auto it = index_.find(u);
    if (it == index_.end()) throw AmbientMismatch();
    return it->second;
}

std::vector<SubspaceLattice::Id> SubspaceLattice::proper_nonzero() const {
    std::vector<Id> out;
    for (std::size_t a = 0; a < size(); ++a)
        if (is_proper_nonzero(static_cast<Id>(a))) out.push_back(static_cast<Id>(a));
    return out;
}

std::vector<SubspaceLattice::Id> SubspaceLattice::of_rank(unsigned r) const {
    std::vector<Id> out;
    for (std::size_t a = 0; a < size(); ++a)
        if (rank_[a] == r) out.push_back(static_cast<Id>(a));
    return out;
}

std::vector<SubspaceLattice::Id> SubspaceLattice::complements(Id a) const {
    std::vector<Id> out;
    for (std::size_t b = 0; b < size(); ++b)
        if (meet(a, static_cast<Id>(b)) == zero_ && join(a, static_cast<Id>(b)) == top_)
            out.push_back(static_cast<Id>(b));
    return out;
}

std::vector<SubspaceLattice::Id> SubspaceLattice::transform(const Matrix& g) const {
    if (g.rows() != n_ || g.cols() != n_) throw AmbientMismatch();
    if (sgn(determinant(g)) == 0) throw InvalidArgument("transform is not invertible");
    std::vector<Id> out(size());
    for (std::size_t a = 0; a < size(); ++a) out[a] = id_of(image(subs_[a], g));
    return out;
}

}  // namespace cbc
