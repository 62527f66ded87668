#include <algorithm>
#include <queue>

#include "cbc/homology.hpp"

namespace cbc {

namespace {

struct Overflow {};

struct I64Arith {
    using T = std::int64_t;
    static bool is_unit(T x) { return x == 1 || x == -1; }
    // factor f with w - f*u = 0 for a unit u
    static T factor(T w, T u) { return w * u; }
    static T submul(T a, T f, T b) {
        T prod, out;
        if (__builtin_mul_overflow(f, b, &prod) || __builtin_sub_overflow(a, prod, &out)) throw Overflow{};
        return out;
    }
    static bool is_zero(const T& x) { return x == 0; }
    static Int to_int(T x) { return Int(static_cast<long>(x)); }
};

struct MpzArith {
    using T = Int;
    static bool is_unit(const T& x) { return x == 1 || x == -1; }
    static T factor(const T& w, const T& u) { return w * u; }
    static T submul(const T& a, const T& f, const T& b) { return a - f * b; }
    static bool is_zero(const T& x) { return sgn(x) == 0; }
    static Int to_int(const T& x) { return x; }
};

struct ModPArith {
    using T = std::int64_t;  // residues in [0, p)
    std::int64_t p;
    bool is_unit(T x) const { return x != 0; }
    T inv(T x) const {
        T r = 1, b = x, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    }
    T factor(T w, T u) const { return w * inv(u) % p; }
    T submul(T a, T f, T b) const { return ((a - f * b % p) % p + p) % p; }
    static bool is_zero(T x) { return x == 0; }
    static Int to_int(T x) { return Int(static_cast<long>(x)); }
};

template <class A>
struct Eliminator {
    using T = typename A::T;
    using Row = std::vector<std::pair<std::uint32_t, T>>;

    A arith;
    std::vector<Row> rows;
    std::vector<std::vector<std::uint32_t>> col_rows;
    std::vector<char> row_alive, col_alive;
    std::size_t pivots = 0;

    Eliminator(A a, const SparseMatrix& m, auto convert) : arith(a) {
        rows.resize(m.rows());
        col_rows.resize(m.cols());
        row_alive.assign(m.rows(), 1);
        col_alive.assign(m.cols(), 1);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (auto [c, v] : m.row(i)) {
                T x = convert(v);
                if (A::is_zero(x)) continue;
                rows[i].push_back({c, x});
                col_rows[c].push_back(static_cast<std::uint32_t>(i));
            }
            if (rows[i].empty()) row_alive[i] = 0;
        }
    }

    static const T* find(const Row& r, std::uint32_t c) {
        auto it = std::lower_bound(r.begin(), r.end(), c, [](const auto& e, std::uint32_t x) { return e.first < x; });
        return it != r.end() && it->first == c ? &it->second : nullptr;
    }

    void run() {
        using Key = std::pair<std::size_t, std::uint32_t>;
        std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (row_alive[i]) heap.push({rows[i].size(), static_cast<std::uint32_t>(i)});
        Row merged;
        while (!heap.empty()) {
            auto [len, r] = heap.top();
            heap.pop();
            if (!row_alive[r] || rows[r].size() != len) continue;
            // among unit entries take the column shared by fewest rows; ties go to the smaller column
            std::uint32_t best = 0;
            std::size_t best_count = SIZE_MAX;
            for (const auto& [c, v] : rows[r])
                if (arith.is_unit(v) && col_rows[c].size() < best_count) {
                    best = c;
                    best_count = col_rows[c].size();
                }
            if (best_count == SIZE_MAX) continue;  // stuck until another pivot changes it
            const std::uint32_t c = best;
            const T u = *find(rows[r], c);
            const Row& prow = rows[r];
            for (std::uint32_t other : col_rows[c]) {
                if (other == r || !row_alive[other]) continue;
                const T* w = find(rows[other], c);
                if (!w) continue;
                const T f = arith.factor(*w, u);
                Row& orow = rows[other];
                merged.clear();
                std::size_t i = 0, j = 0;
                while (i < orow.size() || j < prow.size()) {
                    if (j == prow.size() || (i < orow.size() && orow[i].first < prow[j].first)) {
                        merged.push_back(std::move(orow[i++]));
                    } else if (i == orow.size() || prow[j].first < orow[i].first) {
                        T x = arith.submul(T(0), f, prow[j].second);
                        merged.push_back({prow[j].first, std::move(x)});
                        col_rows[prow[j].first].push_back(other);
                        ++j;
                    } else {
                        T x = arith.submul(orow[i].second, f, prow[j].second);
                        if (!A::is_zero(x)) merged.push_back({orow[i].first, std::move(x)});
                        ++i;
                        ++j;
                    }
                }
                orow.swap(merged);
                if (orow.empty())
                    row_alive[other] = 0;
                else
                    heap.push({orow.size(), other});
            }
            row_alive[r] = 0;
            col_alive[c] = 0;
            std::vector<std::uint32_t>().swap(col_rows[c]);
            Row().swap(rows[r]);
            ++pivots;
        }
    }

    // Remaining nonzero rows as a dense integer matrix.
    Matrix residual() const {
        std::vector<std::uint32_t> cols;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (row_alive[i])
                for (const auto& e : rows[i]) cols.push_back(e.first);
        std::sort(cols.begin(), cols.end());
        cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
        std::size_t live = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) live += row_alive[i] && !rows[i].empty();
        Matrix m(Ring::integers(), live, cols.size());
        std::size_t k = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!row_alive[i] || rows[i].empty()) continue;
            for (const auto& e : rows[i]) {
                auto pos = std::lower_bound(cols.begin(), cols.end(), e.first) - cols.begin();
                m(k, static_cast<std::size_t>(pos)) = A::to_int(e.second);
            }
            ++k;
        }
        return m;
    }
};

template <class A>
SnfSummary finish(Eliminator<A>& e) {
    e.run();
    SnfSummary out;
    out.rank = e.pivots;
    Matrix res = e.residual();
    if (res.rows() > 0) {
        for (const Int& d : snf(res)) {
            ++out.rank;
            if (d != 1) out.divisors.push_back(d);
        }
    }
    return out;
}

}  // namespace

SnfSummary sparse_snf(const SparseMatrix& m) {
    try {
        Eliminator<I64Arith> e(I64Arith{}, m, [](std::int64_t v) { return v; });
        return finish(e);
    } catch (const Overflow&) {
        Eliminator<MpzArith> e(MpzArith{}, m, [](std::int64_t v) { return Int(static_cast<long>(v)); });
        return finish(e);
    }
}

std::size_t sparse_rank_mod_p(const SparseMatrix& m, unsigned long p) {
    if (!is_prime(p)) throw InvalidArgument("p must be prime");
    const auto pp = static_cast<std::int64_t>(p);
    Eliminator<ModPArith> e(ModPArith{pp}, m, [pp](std::int64_t v) { return ((v % pp) + pp) % pp; });
    e.run();
    return e.pivots;
}

}  // namespace cbc
