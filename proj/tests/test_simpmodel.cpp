#include <doctest.h>

#include <map>

#include "cbc/simpmodel.hpp"

using namespace cbc;

namespace {

using Chain = std::map<std::size_t, std::int64_t>;

HomologyProfile profile(std::initializer_list<std::pair<long, long>> bettis) {
    HomologyProfile h;
    for (auto [d, b] : bettis) h.groups[d].betti = b;
    return h;
}

Chain mu(const DModel& dx, const DModel& dy, const DModel& dxy, long degx, const Chain& x, long degy,
         const Chain& y) {
    Chain out;
    for (auto [i, u] : x)
        for (auto [j, v] : y)
            for (auto [k, w] : mu_cells(dx, dy, dxy, dx.cell(degx, i), dy.cell(degy, j))) out[k] += u * v * w;
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
    return out;
}

DModel::Id id(const DModel& d, const std::vector<std::vector<long>>& rows) {
    return d.lattice().id_of(span_of(d.lattice().ring(), d.n(), rows));
}

}  // namespace

TEST_CASE("model examples") {
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        auto d = d_model(1, 0, 1, p);
        CHECK(d.total_cells() == 1);
        CHECK(model_homology(d) == profile({{1, 1}}));
    }
    CHECK(model_homology(d_model(1, 0, 2, 2)) == profile({{2, 2}}));
    CHECK(model_homology(d_model(1, 0, 2, 3)) == profile({{2, 3}}));
    // rank 0: one cell in degree 0
    auto d0 = d_model(2, 1, 0, 2);
    CHECK(d0.total_cells() == 1);
    CHECK(model_homology(d0) == profile({{0, 1}}));
    CHECK_THROWS_AS(d_model(0, 0, 2, 2), InvalidArgument);
    CHECK_THROWS_AS(d_model(1, 0, 2, 4), InvalidArgument);
}

TEST_CASE("flag models are the strict full flags") {
    for (unsigned long p : {2ul, 3ul})
        for (std::size_t n = 1; n <= (p == 2 ? 3u : 2u); ++n) {
            auto d = d_model(1, 0, n, p);
            auto t = tits(n, p);
            CHECK(d.count(0) == 0);
            CHECK(d.count(1) == 1);
            for (long q = 2; q <= static_cast<long>(n); ++q) CHECK(d.count(q) == t.count(q - 2));
            CHECK(d.max_degree() == static_cast<long>(n));
            for (long q = 1; q <= d.max_degree(); ++q)
                for (std::size_t i = 0; i < d.count(q); ++i) {
                    const auto& f = d.cell(q, i)[0];
                    CHECK(f.front() == d.lattice().zero());
                    CHECK(f.back() == d.lattice().top());
                    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
                        CHECK(d.lattice().leq(f[k], f[k + 1]));
                        CHECK(f[k] != f[k + 1]);
                    }
                }
        }
}

TEST_CASE("model dump format") {
    CHECK(d_model(1, 0, 1, 2).dump() == "#model 1 0 1 2\n1 L [F2 1 0 :] [F2 1 1 : 1]\n");
    CHECK(d_model(1, 1, 1, 3).dump() == "#model 1 1 1 3\n2 L [F3 1 0 :] [F3 1 1 : 1] || S [F3 1 1 : 1]\n");
    auto text = d_model(1, 0, 2, 2).dump();
    CHECK(text.find("2 L [F2 2 0 :] [F2 2 1 : 1 1] [F2 2 2 : 1 0 ; 0 1]\n") != std::string::npos);
    CHECK(text == d_model(1, 0, 2, 2).dump());
}

TEST_CASE("faces land in the model or on the basepoint") {
    for (std::size_t total = 1; total <= 3; ++total)
        for (std::size_t a = 0; a <= total; ++a)
            for (std::size_t n = 1; n <= 2; ++n) {
                auto d = d_model(a, total - a, n, 2);
                for (long q = 0; q <= d.max_degree(); ++q)
                    for (std::size_t i = 0; i < d.count(q); ++i) {
                        const auto& c = d.cell(q, i);
                        for (std::size_t j = 0; j < d.slots(); ++j) {
                            const auto deg = static_cast<std::size_t>(d.slot_degree(c, j));
                            CHECK_FALSE(d.face(c, j, 0).has_value());
                            CHECK_FALSE(d.face(c, j, deg).has_value());
                            for (std::size_t f = 1; f < deg; ++f) CHECK(d.index_of(*d.face(c, j, f)).has_value());
                        }
                    }
                CHECK_NOTHROW(d.chain_complex().check());
            }
}

TEST_CASE("suspension examples") {
    auto r = check_suspension(1, 0, 2, 2);
    CHECK(r.agree);
    CHECK(r.building == profile({{0, 2}}));
    CHECK(r.model == profile({{2, 2}}));
    auto k33 = check_suspension(2, 0, 2, 2);
    CHECK(k33.agree);
    CHECK(k33.building == profile({{1, 4}}));
    CHECK(k33.model == profile({{4, 4}}));
    for (unsigned long p : {2ul, 3ul}) {
        auto c = check_suspension(1, 0, 1, p);
        CHECK(c.agree);
        CHECK(c.building == profile({{-1, 1}}));
        CHECK(c.model == profile({{1, 1}}));
    }
    CHECK_THROWS_AS(check_suspension(1, 0, 0, 2), InvalidArgument);
}

TEST_CASE("suspension over small sizes") {
    for (std::size_t total = 1; total <= 2; ++total)
        for (std::size_t a = 0; a <= total; ++a)
            for (std::size_t n = 1; n <= 2; ++n) CHECK(check_suspension(a, total - a, n, 2).agree);
    CHECK(check_suspension(1, 0, 3, 2).agree);
    CHECK(check_suspension(1, 1, 2, 3).agree);
}

TEST_CASE("model homology sits between degrees a+b and (a+b)n") {
    // the building has dimension (a+b)(n-1)-1; n+a+b is an upper bound only when (a+b-1)(n-1) <= 1
    for (std::size_t total = 1; total <= 3; ++total)
        for (std::size_t a = 0; a <= total; ++a)
            for (std::size_t n = 1; n <= 2; ++n) {
                auto h = model_homology(d_model(a, total - a, n, 2));
                CHECK_FALSE(h.is_zero());
                const bool narrow = (total - 1) * (n - 1) <= 1;
                for (const auto& [deg, g] : h.groups) {
                    CHECK(deg >= static_cast<long>(total));
                    CHECK(deg <= static_cast<long>(n * total));
                    if (narrow) CHECK(deg <= static_cast<long>(n + total));
                }
            }
    CHECK(model_homology(d_model(1, 0, 3, 2)) == profile({{3, 8}}));
    CHECK(model_homology(d_model(2, 0, 3, 2)) == profile({{6, 64}}));
    CHECK(model_homology(d_model(3, 0, 2, 2)) == profile({{5, 1}, {6, 3}}));
}

TEST_CASE("forgetting complements preserves model homology") {
    for (std::size_t total = 1; total <= 2; ++total)
        for (std::size_t a = 1; a <= total; ++a)
            for (std::size_t n = 1; n <= 2; ++n)
                CHECK(model_homology(d_model(a, total - a, n, 2)) == model_homology(d_model(total, 0, n, 2)));
}

TEST_CASE("shuffle product example and unit") {
    auto d1 = d_model(1, 0, 1, 2), d2 = d_model(1, 0, 2, 2), d0 = d_model(1, 0, 0, 2);
    auto prod = mu_cells(d1, d1, d2, d1.cell(1, 0), d1.cell(1, 0));
    REQUIRE(prod.size() == 2);
    const auto& lat = d2.lattice();
    DModel::Cell via_e1{{lat.zero(), id(d2, {{1, 0}}), lat.top()}};
    DModel::Cell via_e2{{lat.zero(), id(d2, {{0, 1}}), lat.top()}};
    Chain got(prod.begin(), prod.end());
    CHECK(got == Chain{{*d2.index_of(via_e1), 1}, {*d2.index_of(via_e2), -1}});
    // the rank 0 cell is a two-sided unit
    for (long q = 1; q <= 2; ++q)
        for (std::size_t i = 0; i < d2.count(q); ++i) {
            Chain x{{i, 1}};
            CHECK(mu(d0, d2, d2, 0, {{0, 1}}, q, x) == x);
            CHECK(mu(d2, d0, d2, q, x, 0, {{0, 1}}) == x);
        }
}

TEST_CASE("shuffle product is a chain map") {
    for (auto [a, b] : {std::pair<std::size_t, std::size_t>{1, 0}, {2, 0}, {1, 1}, {0, 1}, {0, 2}})
        for (auto [m, n] : {std::pair<std::size_t, std::size_t>{1, 1}, {1, 2}, {2, 1}, {0, 2}}) {
            if (a + b == 2 && m + n > 2) continue;
            CHECK_NOTHROW(mu_chain(a, b, m, n, 2));
        }
    CHECK_NOTHROW(mu_chain(1, 0, 1, 1, 3));
    auto f = mu_chain(1, 0, 1, 1, 2);
    CHECK(f.domain.size(2) == 1);
    CHECK(f.codomain.size(2) == 3);
}

TEST_CASE("shuffle product is associative") {
    for (std::size_t a : {1u, 2u}) {
        auto d1 = d_model(a, 0, 1, 2), d2 = d_model(a, 0, 2, 2), d3 = d_model(a, 0, 3, 2);
        for (long qx = 0; qx <= d1.max_degree(); ++qx)
            for (std::size_t x = 0; x < d1.count(qx); ++x)
                for (long qy = 0; qy <= d1.max_degree(); ++qy)
                    for (std::size_t y = 0; y < d1.count(qy); ++y)
                        for (long qz = 0; qz <= d1.max_degree(); ++qz)
                            for (std::size_t z = 0; z < d1.count(qz); ++z) {
                                Chain cx{{x, 1}}, cy{{y, 1}}, cz{{z, 1}};
                                auto left = mu(d2, d1, d3, qx + qy, mu(d1, d1, d2, qx, cx, qy, cy), qz, cz);
                                auto right = mu(d1, d2, d3, qx, cx, qy + qz, mu(d1, d1, d2, qy, cy, qz, cz));
                                CHECK(left == right);
                                CHECK_FALSE(left.empty());
                            }
    }
}

TEST_CASE("shuffle product commutes up to the block swap") {
    for (std::size_t a : {1u, 2u})
        for (auto [m, n] : {std::pair<std::size_t, std::size_t>{1, 1}, {1, 2}}) {
            auto dm = d_model(a, 0, m, 2), dn = d_model(a, 0, n, 2), dmn = d_model(a, 0, m + n, 2);
            auto swap = block_swap(m, n, 2);
            int checked = 0;
            for (long qx = 0; qx <= dm.max_degree(); ++qx)
                for (std::size_t x = 0; x < dm.count(qx); ++x)
                    for (long qy = 0; qy <= dn.max_degree(); ++qy)
                        for (std::size_t y = 0; y < dn.count(qy); ++y) {
                            Chain swapped;
                            for (auto [k, w] : mu(dm, dn, dmn, qx, {{x, 1}}, qy, {{y, 1}})) {
                                auto c = dmn.relabel(dmn.cell(qx + qy, k), swap);
                                swapped[*dmn.index_of(c)] += w;
                            }
                            auto other = mu(dn, dm, dmn, qy, {{y, 1}}, qx, {{x, 1}});
                            if ((qx * qy) % 2)
                                for (auto& [k, w] : other) w = -w;
                            CHECK(swapped == other);
                            ++checked;
                        }
            CHECK(checked > 0);
        }
}

TEST_CASE("bar construction matches the model with one more splitting slot") {
    auto r1 = check_bar_model(1, 0, 1, 2, 3);
    CHECK(r1.ok());
    CHECK(r1.counts.at({1, 1}) == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(d_model(1, 1, 1, 2).total_cells() == 1);
    auto r2 = check_bar_model(1, 0, 2, 2, 3);
    CHECK(r2.ok());
    CHECK(r2.faces_checked > 100);
    std::size_t total = 0;
    for (const auto& [k, v] : r2.counts) {
        CHECK(v.first == v.second);
        total += v.first;
    }
    CHECK(total == d_model(1, 1, 2, 2).total_cells());
    CHECK(r2.counts.at({2, 1}).first == 6);
    for (unsigned long p : {2ul, 3ul})
        for (auto [a, b] : {std::pair<std::size_t, std::size_t>{0, 1}, {1, 1}, {2, 0}, {1, 0}})
            CHECK(check_bar_model(a, b, 2, p, 3).ok());
    auto unit = check_bar_model(1, 0, 0, 2, 3);
    CHECK(unit.ok());
    CHECK(unit.counts.at({0, 0}) == std::pair<std::size_t, std::size_t>{1, 1});
}
