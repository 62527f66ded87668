#pragma once

// Sampled instances of the relative Tits intersections: a flag tau, a common
// basis simplex sigma containing it, and r distinct complement flags lifting
// tau. The intersection of the relative buildings should be acyclic.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "cbc/complexes.hpp"

namespace cbc::testing {

struct ContractibleInstance {
    std::size_t n = 0;
    std::vector<SubspaceLattice::Id> tau;    // increasing flag
    std::vector<SubspaceLattice::Id> sigma;  // contains tau
    std::vector<std::vector<SubspaceLattice::Id>> lifts;  // decreasing complements, one per lift
    auto operator<=>(const ContractibleInstance&) const = default;
};

// All decreasing complement flags C_0 > ... > C_p with V_l + C_l = M and
// sigma together with the C_l having a common basis.
inline std::vector<std::vector<SubspaceLattice::Id>> complement_lifts(const SubspaceLattice& lat, const LatticeCbp& cbp,
                                                                     const std::vector<SubspaceLattice::Id>& tau,
                                                                     const std::vector<SubspaceLattice::Id>& sigma) {
    std::vector<std::vector<SubspaceLattice::Id>> out;
    std::vector<SubspaceLattice::Id> cur;
    auto rec = [&](auto& self) -> void {
        if (cur.size() == tau.size()) {
            auto all = sigma;
            all.insert(all.end(), cur.begin(), cur.end());
            if (cbp.holds(all)) out.push_back(cur);
            return;
        }
        for (auto c : lat.complements(tau[cur.size()])) {
            if (!cur.empty() && (c == cur.back() || !lat.leq(c, cur.back()))) continue;
            cur.push_back(c);
            self(self);
            cur.pop_back();
        }
    };
    rec(rec);
    return out;
}

inline std::vector<ContractibleInstance> contractible_samples(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::set<ContractibleInstance> seen;
    std::vector<ContractibleInstance> out;
    auto pick = [&](std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng); };

    // rank 2: tau and sigma are a single line with two of its complements
    {
        const auto& lat = SubspaceLattice::get(2, 2);
        LatticeCbp cbp(lat);
        for (auto l : lat.of_rank(1)) {
            ContractibleInstance c{2, {l}, {l}, complement_lifts(lat, cbp, {l}, {l})};
            if (c.lifts.size() >= 2 && seen.insert(c).second) out.push_back(c);
        }
    }
    const auto& lat = SubspaceLattice::get(3, 2);
    LatticeCbp cbp(lat);
    const auto proper = lat.proper_nonzero();
    for (int guard = 0; out.size() < count && guard < 100000; ++guard) {
        ContractibleInstance c;
        c.n = 3;
        // flag of length 1 or 2
        if (pick(2) == 0) {
            c.tau = {proper[pick(proper.size())]};
        } else {
            auto lines = lat.of_rank(1), planes = lat.of_rank(2);
            auto l = lines[pick(lines.size())], w = planes[pick(planes.size())];
            if (!lat.leq(l, w)) continue;
            c.tau = {l, w};
        }
        c.sigma = c.tau;
        if (pick(2) == 0) {
            auto z = proper[pick(proper.size())];
            if (std::find(c.sigma.begin(), c.sigma.end(), z) != c.sigma.end()) continue;
            c.sigma.push_back(z);
            if (!cbp.holds(c.sigma)) continue;
        }
        auto lifts = complement_lifts(lat, cbp, c.tau, c.sigma);
        const std::size_t r = 2 + pick(2);
        if (lifts.size() < r) continue;
        std::shuffle(lifts.begin(), lifts.end(), rng);
        lifts.resize(r);
        std::sort(lifts.begin(), lifts.end());
        c.lifts = lifts;
        if (seen.insert(c).second) out.push_back(c);
    }
    return out;
}

// Simplices common to all the complexes, matched by vertex label.
inline SimplicialComplex intersection(const std::vector<SimplicialComplex>& ks) {
    if (ks.empty()) return {};
    const auto& first = ks.front();
    std::vector<std::vector<VertexLabel>> keep;
    for (const auto& s : first.all_simplices()) {
        bool everywhere = true;
        for (std::size_t i = 1; i < ks.size() && everywhere; ++i) {
            Simplex t;
            for (Vertex v : s) {
                auto w = ks[i].vertex_of(first.label(v));
                if (!w) {
                    everywhere = false;
                    break;
                }
                t.push_back(*w);
            }
            if (everywhere) {
                std::sort(t.begin(), t.end());
                everywhere = ks[i].contains(t);
            }
        }
        if (everywhere) {
            std::vector<VertexLabel> l;
            for (Vertex v : s) l.push_back(first.label(v));
            keep.push_back(std::move(l));
        }
    }
    std::set<VertexLabel> labels;
    for (const auto& l : keep) labels.insert(l.begin(), l.end());
    std::vector<VertexLabel> sorted(labels.begin(), labels.end());
    std::vector<Simplex> simplices;
    for (const auto& l : keep) {
        Simplex t;
        for (const auto& x : l) t.push_back(static_cast<Vertex>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin()));
        std::sort(t.begin(), t.end());
        simplices.push_back(std::move(t));
    }
    return SimplicialComplex(std::move(sorted), simplices, {}, true);
}

inline SimplicialComplex contractible_complex(const ContractibleInstance& c) {
    const auto& lat = SubspaceLattice::get(c.n, 2);
    std::vector<SimplicialComplex> parts;
    for (const auto& lift : c.lifts) {
        std::vector<Submodule> members;
        for (auto id : c.sigma) members.push_back(lat.module(id));
        for (auto id : lift) members.push_back(lat.module(id));
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        parts.push_back(higher_tits(1, 0, c.n, 2, Collection(lat.ring(), c.n, members)));
    }
    return intersection(parts);
}

}  // namespace cbc::testing
