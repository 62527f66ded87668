#include <algorithm>

#include "cbc/complexes.hpp"

namespace cbc {

namespace {

std::string simplex_text(const Simplex& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

Simplex united(const Simplex& a, const Simplex& b) {
    Simplex u;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return u;
}

}  // namespace

HypothesisViolated::HypothesisViolated(int which_, Simplex a, Simplex b)
    : Error("Morse hypothesis (" + std::string(which_ == 1 ? "i" : "ii") + ") violated by " + simplex_text(a) +
            (b.empty() ? "" : " and " + simplex_text(b))),
      which(which_),
      first(std::move(a)),
      second(std::move(b)) {}

MorseInstance morse_check(const SimplicialComplex& x, const std::vector<Simplex>& s,
                          const std::optional<SimplicialComplex>& claimed_y) {
    for (const auto& sigma : s)
        if (sigma.empty() || !x.contains(sigma)) throw InvalidArgument("S must consist of simplices of X");
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            if (s[i] == s[j]) throw InvalidArgument("S lists a simplex twice");
            if (x.contains(united(s[i], s[j]))) throw HypothesisViolated(2, s[i], s[j]);
        }
    // Y: the simplices of X containing no member of S
    std::vector<Simplex> y;
    for (long d = 0; d <= x.dim(); ++d)
        for (std::size_t i = 0; i < x.count(d); ++i) {
            auto t = x.simplex_view(d, i);
            bool hit = std::any_of(s.begin(), s.end(),
                                   [&](const Simplex& sigma) { return std::includes(t.begin(), t.end(), sigma.begin(), sigma.end()); });
            if (!hit) y.emplace_back(t.begin(), t.end());
        }
    MorseInstance out{x, s, subcomplex(x, y), {}};
    if (claimed_y) {
        if (!is_subcomplex(*claimed_y, x)) throw InvalidArgument("claimed Y is not a subcomplex of X");
        // compare as simplex sets of X
        auto in_x = [&](const SimplicialComplex& k) {
            std::vector<Simplex> out;
            for (const auto& t : k.all_simplices()) {
                Simplex m;
                for (Vertex v : t) m.push_back(*x.vertex_of(k.label(v)));
                out.push_back(std::move(m));
            }
            std::sort(out.begin(), out.end());
            return out;
        };
        auto a = in_x(*claimed_y), b = in_x(out.y);
        std::vector<Simplex> diff;
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
        if (!diff.empty()) throw HypothesisViolated(1, diff.front(), {});
    }
    for (const auto& sigma : s) out.links.push_back(link(x, sigma));
    return out;
}

std::pair<SimplicialComplex, std::vector<Simplex>> random_morse_input(std::mt19937_64& rng, std::size_t vertices,
                                                                      std::size_t facets, std::size_t max_facet_dim) {
    std::uniform_int_distribution<std::size_t> pick_v(0, vertices - 1), pick_d(0, max_facet_dim);
    std::vector<Simplex> fs;
    for (std::size_t f = 0; f < facets; ++f) {
        std::size_t size = std::min(vertices, pick_d(rng) + 1);
        Simplex s;
        while (s.size() < size) {
            Vertex v = static_cast<Vertex>(pick_v(rng));
            if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
        }
        std::sort(s.begin(), s.end());
        fs.push_back(std::move(s));
    }
    SimplicialComplex x = from_facets(vertices, fs);
    auto all = x.all_simplices();
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<Simplex> s;
    for (const auto& t : all) {
        bool ok = std::all_of(s.begin(), s.end(), [&](const Simplex& u) { return !x.contains(united(t, u)); });
        if (ok) s.push_back(t);
        if (s.size() >= 4) break;
    }
    std::sort(s.begin(), s.end());
    return {std::move(x), std::move(s)};
}

}  // namespace cbc
