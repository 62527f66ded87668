#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cbc/cbp.hpp"
#include "cbc/exactlin.hpp"
#include "cbc/lattice.hpp"

namespace cbc {

// A vertex is tagged with its join slot. Its payload is either a list of
// submodules (one for a Tits vertex, two for a splitting) or, when parts is
// empty, a plain integer point.
struct VertexLabel {
    std::size_t slot = 0;
    std::vector<Submodule> parts;
    long point = 0;

    auto operator<=>(const VertexLabel&) const = default;
    bool operator==(const VertexLabel&) const = default;
};

std::string to_inline(const VertexLabel& v);
VertexLabel vertex_from_inline(std::string_view s);

struct Caps {
    std::size_t max_vertices = 5000;
    std::size_t max_simplices = 2'000'000;
    long max_dim = -1;  // negative: no cap
};

using Vertex = std::uint32_t;
using Simplex = std::vector<Vertex>;  // strictly increasing vertex indices

class SimplicialComplex {
public:
    SimplicialComplex() = default;
    // Closes the given simplices under faces unless the caller vouches that
    // they already are. Labels must be strictly increasing.
    SimplicialComplex(std::vector<VertexLabel> labels, const std::vector<Simplex>& simplices,
                      const Caps& caps = {}, bool closed = false);

    // Enumerates all cliques of the adjacency relation on which pred holds.
    // pred must be closed under taking faces; it sees a sorted simplex.
    static SimplicialComplex from_predicate(std::vector<VertexLabel> labels,
                                            const std::function<bool(Vertex, Vertex)>& adjacent,
                                            const std::function<bool(const Simplex&)>& pred,
                                            const Caps& caps = {});

    std::size_t num_vertices() const { return labels_.size(); }
    const std::vector<VertexLabel>& labels() const { return labels_; }
    const VertexLabel& label(Vertex v) const { return labels_[v]; }
    // -1 for the empty complex
    long dim() const { return static_cast<long>(cells_.size()) - 1; }
    std::size_t count(long d) const;
    std::size_t total_simplices() const;
    Simplex simplex(long d, std::size_t i) const;
    std::span<const Vertex> simplex_view(long d, std::size_t i) const;
    std::optional<std::size_t> index_of(std::span<const Vertex> s) const;
    bool contains(std::span<const Vertex> s) const { return s.empty() || index_of(s).has_value(); }
    std::vector<Simplex> all_simplices() const;
    // Join slots; at least one past the largest slot tag, more if set explicitly.
    std::size_t slot_count() const;
    void set_slot_count(std::size_t s) { slots_ = s; }
    std::optional<Vertex> vertex_of(const VertexLabel& l) const;

    bool operator==(const SimplicialComplex& o) const {
        return labels_ == o.labels_ && cells_ == o.cells_ && slot_count() == o.slot_count();
    }

private:
    std::vector<VertexLabel> labels_;
    std::vector<std::vector<Vertex>> cells_;  // flat, sorted lexicographically per dimension
    std::size_t slots_ = 0;
};

// File format: "#vertices V", V label lines, then one line per simplex.
std::string to_text(const SimplicialComplex& k);
SimplicialComplex complex_from_text(std::istream& in);

// Plain complexes on vertices 0..v-1, labelled by point index.
SimplicialComplex from_facets(std::size_t vertices, const std::vector<Simplex>& facets, const Caps& caps = {});

SimplicialComplex tits(std::size_t n, unsigned long p, const Caps& caps = {});
SimplicialComplex split_tits(std::size_t n, unsigned long p, const Caps& caps = {});
SimplicialComplex common_basis_complex(std::size_t n, unsigned long p, const Caps& caps = {});
SimplicialComplex higher_tits(std::size_t a, std::size_t b, std::size_t n, unsigned long p,
                              const Collection& sigma, const Caps& caps = {});

// Simplices of the split building correspond to splittings with one more part.
std::vector<Submodule> splitting_of_simplex(const SimplicialComplex& st, std::span<const Vertex> s);
Simplex simplex_of_splitting(const SimplicialComplex& st, const std::vector<Submodule>& parts);

SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l, const Caps& caps = {});
SimplicialComplex link(const SimplicialComplex& k, std::span<const Vertex> sigma);
SimplicialComplex star(const SimplicialComplex& k, std::span<const Vertex> sigma);
SimplicialComplex full_subcomplex(const SimplicialComplex& k, const std::vector<Vertex>& vertices);
// Face closure of the listed simplices; keeps only the vertices it uses.
SimplicialComplex subcomplex(const SimplicialComplex& k, const std::vector<Simplex>& simplices);
bool is_subcomplex(const SimplicialComplex& y, const SimplicialComplex& x);

bool is_simplex_over_Z(const Collection& members);

struct MorseInstance {
    SimplicialComplex x;
    std::vector<Simplex> s;
    SimplicialComplex y;
    std::vector<SimplicialComplex> links;  // parallel to s
};

class HypothesisViolated : public Error {
public:
    HypothesisViolated(int which, Simplex a, Simplex b);
    int which;
    Simplex first, second;
};

// Random complex on v vertices from the given number of random facets, plus a
// greedily chosen simplex set satisfying the pairwise hypothesis.
std::pair<SimplicialComplex, std::vector<Simplex>> random_morse_input(std::mt19937_64& rng, std::size_t vertices,
                                                                      std::size_t facets, std::size_t max_facet_dim);

MorseInstance morse_check(const SimplicialComplex& x, const std::vector<Simplex>& s,
                          const std::optional<SimplicialComplex>& claimed_y = std::nullopt);

}  // namespace cbc
