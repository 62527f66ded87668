#include "cbc/complexes.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>

namespace cbc {

namespace {

bool lex_less(std::span<const Vertex> a, std::span<const Vertex> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Sorts fixed-width records in a flat array and removes duplicates.
void sort_unique_flat(std::vector<Vertex>& flat, std::size_t width) {
    const std::size_t count = flat.size() / width;
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    auto rec = [&](std::size_t i) { return std::span<const Vertex>(flat.data() + i * width, width); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(rec(a), rec(b)); });
    std::vector<Vertex> out;
    out.reserve(flat.size());
    for (std::size_t k = 0; k < count; ++k) {
        auto r = rec(order[k]);
        if (k > 0) {
            auto prev = std::span<const Vertex>(out.data() + out.size() - width, width);
            if (std::equal(r.begin(), r.end(), prev.begin())) continue;
        }
        out.insert(out.end(), r.begin(), r.end());
    }
    flat = std::move(out);
}

void check_simplex_cap(std::size_t total, const Caps& caps) {
    if (total > caps.max_simplices)
        throw CapExceeded("complex exceeds simplex cap " + std::to_string(caps.max_simplices));
}

void check_vertex_cap(std::size_t v, const Caps& caps) {
    if (v > caps.max_vertices)
        throw CapExceeded(std::to_string(v) + " vertices exceed vertex cap " + std::to_string(caps.max_vertices));
}

// Number of subspaces of F_p^n, saturating.
std::size_t subspace_count(std::size_t n, unsigned long p) {
    const std::size_t big = std::size_t{1} << 40;
    std::vector<std::size_t> row{1};  // Gaussian binomials by the q-Pascal rule
    for (std::size_t m = 1; m <= n; ++m) {
        std::vector<std::size_t> next(m + 1, 1);
        std::size_t pk = 1;
        for (std::size_t k = 1; k < m; ++k) {
            pk = std::min(big, pk * p);
            next[k] = std::min(big, row[k - 1] + std::min(big, pk * row[k]));
        }
        row = std::move(next);
    }
    std::size_t total = 0;
    for (auto x : row) total = std::min(big, total + x);
    return total;
}

const SubspaceLattice& lattice_for(std::size_t n, unsigned long p, const Caps& caps) {
    if (!is_prime(p)) throw InvalidArgument("p must be prime");
    std::size_t c = subspace_count(n, p);
    check_vertex_cap(c >= 2 ? c - 2 : 0, caps);
    if (c > 60000) throw CapExceeded("subspace lattice too large");
    return SubspaceLattice::get(n, p);
}

// Builds a complex on the used vertices only, remapping indices.
SimplicialComplex restrict_to_used(const SimplicialComplex& k, const std::vector<Simplex>& simplices,
                                   std::size_t slots, bool closed) {
    std::vector<char> used(k.num_vertices(), 0);
    for (const auto& s : simplices)
        for (Vertex v : s) used[v] = 1;
    std::vector<Vertex> remap(k.num_vertices());
    std::vector<VertexLabel> labels;
    for (std::size_t v = 0; v < k.num_vertices(); ++v)
        if (used[v]) {
            remap[v] = static_cast<Vertex>(labels.size());
            labels.push_back(k.label(static_cast<Vertex>(v)));
        }
    std::vector<Simplex> mapped;
    mapped.reserve(simplices.size());
    for (const auto& s : simplices) {
        Simplex t;
        for (Vertex v : s) t.push_back(remap[v]);
        mapped.push_back(std::move(t));
    }
    Caps unlimited{std::size_t(-1), std::size_t(-1), -1};
    SimplicialComplex out(std::move(labels), mapped, unlimited, closed);
    out.set_slot_count(slots);
    return out;
}

}  // namespace

std::string to_inline(const VertexLabel& v) {
    std::string out = "s" + std::to_string(v.slot);
    if (v.parts.empty()) return out + " @" + std::to_string(v.point);
    for (const auto& u : v.parts) out += " | " + to_inline(u);
    return out;
}

VertexLabel vertex_from_inline(std::string_view s) {
    VertexLabel v;
    auto bad = [&]() { return ParseError("bad vertex label: " + std::string(s)); };
    if (s.empty() || s[0] != 's') throw bad();
    std::size_t i = 1;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == 1) throw bad();
    v.slot = std::stoul(std::string(s.substr(1, i - 1)));
    std::string_view rest = s.substr(i);
    if (rest.starts_with(" @")) {
        try {
            std::size_t used = 0;
            v.point = std::stol(std::string(rest.substr(2)), &used);
            if (used + 2 != rest.size()) throw bad();
        } catch (const std::logic_error&) {
            throw bad();
        }
        return v;
    }
    while (!rest.empty()) {
        if (!rest.starts_with(" | ")) throw bad();
        rest.remove_prefix(3);
        std::size_t next = rest.find(" | ");
        v.parts.push_back(submodule_from_inline(rest.substr(0, next)));
        rest = next == std::string_view::npos ? std::string_view{} : rest.substr(next);
    }
    if (v.parts.empty()) throw bad();
    return v;
}

SimplicialComplex::SimplicialComplex(std::vector<VertexLabel> labels, const std::vector<Simplex>& simplices,
                                     const Caps& caps, bool closed)
    : labels_(std::move(labels)) {
    check_vertex_cap(labels_.size(), caps);
    for (std::size_t i = 1; i < labels_.size(); ++i)
        if (!(labels_[i - 1] < labels_[i])) throw InvalidArgument("vertex labels must be strictly increasing");
    for (const Simplex& s : simplices) {
        if (s.empty()) continue;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] >= labels_.size()) throw InvalidArgument("simplex vertex out of range");
            if (i > 0 && s[i - 1] >= s[i]) throw InvalidArgument("simplex vertices must be strictly increasing");
        }
        if (caps.max_dim >= 0 && static_cast<long>(s.size()) - 1 > caps.max_dim)
            throw CapExceeded("simplex exceeds dimension cap");
        if (cells_.size() < s.size()) cells_.resize(s.size());
        if (closed) {
            cells_[s.size() - 1].insert(cells_[s.size() - 1].end(), s.begin(), s.end());
            continue;
        }
        if (s.size() > 31) throw CapExceeded("simplex too large to close under faces");
        const std::uint32_t full = (1u << s.size()) - 1;
        for (std::uint32_t m = 1; m <= full; ++m) {
            auto& flat = cells_[static_cast<std::size_t>(__builtin_popcount(m)) - 1];
            for (std::size_t i = 0; i < s.size(); ++i)
                if (m >> i & 1) flat.push_back(s[i]);
        }
    }
    std::size_t total = 0;
    for (std::size_t d = 0; d < cells_.size(); ++d) {
        sort_unique_flat(cells_[d], d + 1);
        total += cells_[d].size() / (d + 1);
    }
    check_simplex_cap(total, caps);
}

SimplicialComplex SimplicialComplex::from_predicate(std::vector<VertexLabel> labels,
                                                    const std::function<bool(Vertex, Vertex)>& adjacent,
                                                    const std::function<bool(const Simplex&)>& pred,
                                                    const Caps& caps) {
    const std::size_t n = labels.size();
    check_vertex_cap(n, caps);
    for (std::size_t i = 1; i < n; ++i)
        if (!(labels[i - 1] < labels[i])) throw InvalidArgument("vertex labels must be strictly increasing");
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> adj(n * words, 0);
    std::vector<char> alive(n, 0);
    for (Vertex v = 0; v < n; ++v) alive[v] = pred(Simplex{v});
    for (Vertex u = 0; u < n; ++u) {
        if (!alive[u]) continue;
        for (Vertex v = u + 1; v < n; ++v)
            if (alive[v] && adjacent(u, v)) {
                adj[u * words + v / 64] |= std::uint64_t{1} << (v % 64);
                adj[v * words + u / 64] |= std::uint64_t{1} << (u % 64);
            }
    }
    std::vector<std::vector<Vertex>> cells;
    std::size_t total = 0;
    Simplex cur;
    auto record = [&]() {
        if (cells.size() < cur.size()) cells.resize(cur.size());
        cells[cur.size() - 1].insert(cells[cur.size() - 1].end(), cur.begin(), cur.end());
        check_simplex_cap(++total, caps);
    };
    // cand holds vertices greater than the last one that are adjacent to all of cur
    auto dfs = [&](auto& self, const std::vector<std::uint64_t>& cand) -> void {
        if (caps.max_dim >= 0 && static_cast<long>(cur.size()) > caps.max_dim) return;
        for (std::size_t w = 0; w < words; ++w)
            for (std::uint64_t x = cand[w]; x; x &= x - 1) {
                Vertex v = static_cast<Vertex>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(x)));
                cur.push_back(v);
                if (pred(cur)) {
                    record();
                    std::vector<std::uint64_t> next(words, 0);
                    bool any = false;
                    for (std::size_t j = v / 64; j < words; ++j) {
                        std::uint64_t m = cand[j] & adj[v * words + j];
                        if (j == v / 64) m &= (v % 64 == 63) ? 0 : ~((std::uint64_t{2} << (v % 64)) - 1);
                        next[j] = m;
                        any |= m != 0;
                    }
                    if (any) self(self, next);
                }
                cur.pop_back();
            }
    };
    for (Vertex v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        cur = {v};
        record();
        std::vector<std::uint64_t> next(words, 0);
        bool any = false;
        for (std::size_t j = v / 64; j < words; ++j) {
            std::uint64_t m = adj[v * words + j];
            if (j == v / 64) m &= (v % 64 == 63) ? 0 : ~((std::uint64_t{2} << (v % 64)) - 1);
            next[j] = m;
            any |= m != 0;
        }
        if (any && caps.max_dim != 0) dfs(dfs, next);
    }
    // drop vertices that failed the predicate and renumber
    std::vector<Vertex> remap(n);
    SimplicialComplex out;
    for (std::size_t v = 0; v < n; ++v)
        if (alive[v]) {
            remap[v] = static_cast<Vertex>(out.labels_.size());
            out.labels_.push_back(std::move(labels[v]));
        }
    for (auto& flat : cells)
        for (auto& v : flat) v = remap[v];
    out.cells_ = std::move(cells);
    return out;
}

std::size_t SimplicialComplex::count(long d) const {
    if (d < 0 || d > dim()) return 0;
    return cells_[static_cast<std::size_t>(d)].size() / static_cast<std::size_t>(d + 1);
}

std::size_t SimplicialComplex::total_simplices() const {
    std::size_t t = 0;
    for (long d = 0; d <= dim(); ++d) t += count(d);
    return t;
}

std::span<const Vertex> SimplicialComplex::simplex_view(long d, std::size_t i) const {
    const std::size_t w = static_cast<std::size_t>(d + 1);
    return {cells_[static_cast<std::size_t>(d)].data() + i * w, w};
}

Simplex SimplicialComplex::simplex(long d, std::size_t i) const {
    auto v = simplex_view(d, i);
    return {v.begin(), v.end()};
}

std::optional<std::size_t> SimplicialComplex::index_of(std::span<const Vertex> s) const {
    if (s.empty()) return std::nullopt;
    const long d = static_cast<long>(s.size()) - 1;
    std::size_t lo = 0, hi = count(d);
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (lex_less(simplex_view(d, mid), s))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < count(d)) {
        auto v = simplex_view(d, lo);
        if (std::equal(v.begin(), v.end(), s.begin(), s.end())) return lo;
    }
    return std::nullopt;
}

std::vector<Simplex> SimplicialComplex::all_simplices() const {
    std::vector<Simplex> out;
    for (long d = 0; d <= dim(); ++d)
        for (std::size_t i = 0; i < count(d); ++i) out.push_back(simplex(d, i));
    return out;
}

std::size_t SimplicialComplex::slot_count() const {
    std::size_t s = slots_;
    for (const auto& l : labels_) s = std::max(s, l.slot + 1);
    return s;
}

std::optional<Vertex> SimplicialComplex::vertex_of(const VertexLabel& l) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it == labels_.end() || *it != l) return std::nullopt;
    return static_cast<Vertex>(it - labels_.begin());
}

std::string to_text(const SimplicialComplex& k) {
    std::ostringstream out;
    out << "#vertices " << k.num_vertices() << '\n';
    for (const auto& l : k.labels()) out << to_inline(l) << '\n';
    for (long d = 0; d <= k.dim(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i) {
            auto s = k.simplex_view(d, i);
            for (std::size_t j = 0; j < s.size(); ++j) out << (j ? " " : "") << s[j];
            out << '\n';
        }
    return out.str();
}

SimplicialComplex complex_from_text(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || !line.starts_with("#vertices "))
        throw ParseError("complex file must start with '#vertices V'");
    std::size_t v = 0;
    try {
        v = std::stoul(line.substr(10));
    } catch (const std::logic_error&) {
        throw ParseError("bad vertex count");
    }
    std::vector<VertexLabel> labels;
    for (std::size_t i = 0; i < v; ++i) {
        if (!std::getline(in, line)) throw ParseError("missing vertex label line");
        labels.push_back(vertex_from_inline(line));
    }
    std::vector<Simplex> simplices;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        Simplex s;
        long x;
        while (ls >> x) {
            if (x < 0 || static_cast<std::size_t>(x) >= v) throw ParseError("simplex vertex out of range");
            s.push_back(static_cast<Vertex>(x));
        }
        if (!ls.eof()) throw ParseError("bad simplex line: " + line);
        simplices.push_back(std::move(s));
    }
    Caps unlimited{std::size_t(-1), std::size_t(-1), -1};
    return SimplicialComplex(std::move(labels), simplices, unlimited);
}

SimplicialComplex from_facets(std::size_t vertices, const std::vector<Simplex>& facets, const Caps& caps) {
    std::vector<VertexLabel> labels(vertices);
    for (std::size_t i = 0; i < vertices; ++i) labels[i].point = static_cast<long>(i);
    std::vector<Simplex> all = facets;
    for (std::size_t i = 0; i < vertices; ++i) all.push_back({static_cast<Vertex>(i)});
    for (auto& s : all) std::sort(s.begin(), s.end());
    return SimplicialComplex(std::move(labels), all, caps);
}

SimplicialComplex tits(std::size_t n, unsigned long p, const Caps& caps) {
    const auto& lat = lattice_for(n, p, caps);
    auto ids = lat.proper_nonzero();
    std::vector<VertexLabel> labels;
    for (auto a : ids) labels.push_back({0, {lat.module(a)}, 0});
    auto k = SimplicialComplex::from_predicate(
        std::move(labels),
        [&](Vertex u, Vertex v) { return lat.leq(ids[u], ids[v]) || lat.leq(ids[v], ids[u]); },
        [](const Simplex&) { return true; }, caps);
    k.set_slot_count(1);
    return k;
}

namespace {

struct SplitVertex {
    SubspaceLattice::Id p, q;
};

std::vector<SplitVertex> splitting_pairs(const SubspaceLattice& lat) {
    std::vector<SplitVertex> out;
    for (auto a : lat.proper_nonzero())
        for (auto b : lat.complements(a)) out.push_back({a, b});
    // label order is (P, Q) lexicographic, which matches id order
    std::sort(out.begin(), out.end(), [](auto x, auto y) { return std::tie(x.p, x.q) < std::tie(y.p, y.q); });
    return out;
}

bool split_less(const SubspaceLattice& lat, SplitVertex x, SplitVertex y) {
    return x.p != y.p && lat.leq(x.p, y.p) && x.q != y.q && lat.leq(y.q, x.q);
}

}  // namespace

SimplicialComplex split_tits(std::size_t n, unsigned long p, const Caps& caps) {
    const auto& lat = lattice_for(n, p, caps);
    auto pairs = splitting_pairs(lat);
    check_vertex_cap(pairs.size(), caps);
    std::vector<VertexLabel> labels;
    for (auto sv : pairs) labels.push_back({0, {lat.module(sv.p), lat.module(sv.q)}, 0});
    auto k = SimplicialComplex::from_predicate(
        std::move(labels),
        [&](Vertex u, Vertex v) { return split_less(lat, pairs[u], pairs[v]) || split_less(lat, pairs[v], pairs[u]); },
        [](const Simplex&) { return true; }, caps);
    k.set_slot_count(1);
    return k;
}

SimplicialComplex common_basis_complex(std::size_t n, unsigned long p, const Caps& caps) {
    const auto& lat = lattice_for(n, p, caps);
    LatticeCbp cbp(lat);
    auto ids = lat.proper_nonzero();
    std::vector<VertexLabel> labels;
    for (auto a : ids) labels.push_back({0, {lat.module(a)}, 0});
    auto k = SimplicialComplex::from_predicate(
        std::move(labels), [&](Vertex u, Vertex v) { return cbp.holds({ids[u], ids[v]}); },
        [&](const Simplex& s) {
            auto m = cbp.empty_mask();
            for (Vertex v : s) LatticeCbp::set(m, ids[v]);
            return cbp.holds_mask(std::move(m));
        },
        caps);
    k.set_slot_count(1);
    return k;
}

SimplicialComplex higher_tits(std::size_t a, std::size_t b, std::size_t n, unsigned long p,
                              const Collection& sigma, const Caps& caps) {
    if (a + b == 0) throw InvalidArgument("higher_tits needs a + b >= 1");
    const auto& lat = lattice_for(n, p, caps);
    if (sigma.ring() != lat.ring() || sigma.ambient_rank() != n) throw AmbientMismatch();
    LatticeCbp cbp(lat);
    auto base = cbp.empty_mask();
    for (const auto& u : sigma.members()) LatticeCbp::set(base, lat.id_of(u));
    if (!cbp.holds_mask(base)) throw InvalidArgument("sigma does not have the common basis property");

    auto flags = lat.proper_nonzero();
    auto pairs = splitting_pairs(lat);
    check_vertex_cap(a * flags.size() + b * pairs.size(), caps);
    struct Info {
        std::size_t slot;
        bool split;
        SplitVertex ids;  // q unused for Tits vertices
    };
    std::vector<VertexLabel> labels;
    std::vector<Info> info;
    for (std::size_t s = 0; s < a + b; ++s) {
        if (s < a) {
            for (auto id : flags) {
                labels.push_back({s, {lat.module(id)}, 0});
                info.push_back({s, false, {id, id}});
            }
        } else {
            for (auto sv : pairs) {
                labels.push_back({s, {lat.module(sv.p), lat.module(sv.q)}, 0});
                info.push_back({s, true, sv});
            }
        }
    }
    auto add = [&](LatticeCbp::Mask& m, Vertex v) {
        LatticeCbp::set(m, info[v].ids.p);
        if (info[v].split) LatticeCbp::set(m, info[v].ids.q);
    };
    auto k = SimplicialComplex::from_predicate(
        std::move(labels),
        [&](Vertex u, Vertex v) {
            const Info &x = info[u], &y = info[v];
            if (x.slot == y.slot) {
                if (!x.split) return lat.leq(x.ids.p, y.ids.p) || lat.leq(y.ids.p, x.ids.p);
                return split_less(lat, x.ids, y.ids) || split_less(lat, y.ids, x.ids);
            }
            auto m = base;
            add(m, u);
            add(m, v);
            return cbp.holds_mask(std::move(m));
        },
        [&](const Simplex& s) {
            auto m = base;
            for (Vertex v : s) add(m, v);
            return cbp.holds_mask(std::move(m));
        },
        caps);
    k.set_slot_count(a + b);
    return k;
}

std::vector<Submodule> splitting_of_simplex(const SimplicialComplex& st, std::span<const Vertex> s) {
    std::vector<const VertexLabel*> chain;
    for (Vertex v : s) {
        if (st.label(v).parts.size() != 2) throw InvalidArgument("not a split building vertex");
        chain.push_back(&st.label(v));
    }
    if (chain.empty()) throw InvalidArgument("empty simplex");
    std::sort(chain.begin(), chain.end(),
              [](auto x, auto y) { return x->parts[0].rank() < y->parts[0].rank(); });
    std::vector<Submodule> parts{chain[0]->parts[0]};
    for (std::size_t i = 1; i < chain.size(); ++i)
        parts.push_back(intersect(chain[i]->parts[0], chain[i - 1]->parts[1]));
    parts.push_back(chain.back()->parts[1]);
    return parts;
}

Simplex simplex_of_splitting(const SimplicialComplex& st, const std::vector<Submodule>& parts) {
    if (parts.size() < 2) throw InvalidArgument("a splitting of size at least 2 is needed");
    const std::size_t slot = st.num_vertices() ? st.label(0).slot : 0;
    Simplex out;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        Submodule lo = Submodule::zero(parts[0].ring(), parts[0].ambient_rank()), hi = lo;
        for (std::size_t j = 0; j <= i; ++j) lo = sum(lo, parts[j]);
        for (std::size_t j = i + 1; j < parts.size(); ++j) hi = sum(hi, parts[j]);
        auto v = st.vertex_of({slot, {lo, hi}, 0});
        if (!v) throw InvalidArgument("splitting does not name a simplex");
        out.push_back(*v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SimplicialComplex join(const SimplicialComplex& k, const SimplicialComplex& l, const Caps& caps) {
    const std::size_t offset = k.slot_count();
    std::vector<VertexLabel> labels = k.labels();
    for (auto lab : l.labels()) {
        lab.slot += offset;
        labels.push_back(std::move(lab));
    }
    const Vertex shift = static_cast<Vertex>(k.num_vertices());
    std::size_t total = (k.total_simplices() + 1) * (l.total_simplices() + 1) - 1;
    check_simplex_cap(total, caps);
    std::vector<Simplex> facets;
    // closing the products of all pairs is wasteful; emit every simplex directly
    std::vector<Simplex> ks = k.all_simplices(), ls = l.all_simplices();
    ks.push_back({});
    ls.push_back({});
    facets.reserve(total);
    for (const auto& x : ks)
        for (const auto& y : ls) {
            if (x.empty() && y.empty()) continue;
            Simplex s = x;
            for (Vertex v : y) s.push_back(v + shift);
            facets.push_back(std::move(s));
        }
    Caps unlimited{std::size_t(-1), std::size_t(-1), -1};
    SimplicialComplex out(std::move(labels), facets, unlimited, true);
    out.set_slot_count(offset + l.slot_count());
    return out;
}

SimplicialComplex link(const SimplicialComplex& k, std::span<const Vertex> sigma) {
    if (!k.contains(sigma)) throw InvalidArgument("sigma is not a simplex");
    std::vector<Simplex> out;
    for (long d = static_cast<long>(sigma.size()); d <= k.dim(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i) {
            auto s = k.simplex_view(d, i);
            if (!std::includes(s.begin(), s.end(), sigma.begin(), sigma.end())) continue;
            Simplex t;
            std::set_difference(s.begin(), s.end(), sigma.begin(), sigma.end(), std::back_inserter(t));
            out.push_back(std::move(t));
        }
    return restrict_to_used(k, out, k.slot_count(), true);
}

SimplicialComplex star(const SimplicialComplex& k, std::span<const Vertex> sigma) {
    if (!k.contains(sigma)) throw InvalidArgument("sigma is not a simplex");
    std::vector<Simplex> out;
    for (long d = std::max(0L, static_cast<long>(sigma.size()) - 1); d <= k.dim(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i) {
            auto s = k.simplex_view(d, i);
            if (std::includes(s.begin(), s.end(), sigma.begin(), sigma.end())) out.emplace_back(s.begin(), s.end());
        }
    return restrict_to_used(k, out, k.slot_count(), false);
}

SimplicialComplex full_subcomplex(const SimplicialComplex& k, const std::vector<Vertex>& vertices) {
    std::vector<char> keep(k.num_vertices(), 0);
    for (Vertex v : vertices) {
        if (v >= k.num_vertices()) throw InvalidArgument("vertex out of range");
        keep[v] = 1;
    }
    std::vector<Simplex> out;
    for (long d = 0; d <= k.dim(); ++d)
        for (std::size_t i = 0; i < k.count(d); ++i) {
            auto s = k.simplex_view(d, i);
            if (std::all_of(s.begin(), s.end(), [&](Vertex v) { return keep[v] != 0; }))
                out.emplace_back(s.begin(), s.end());
        }
    return restrict_to_used(k, out, k.slot_count(), true);
}

SimplicialComplex subcomplex(const SimplicialComplex& k, const std::vector<Simplex>& simplices) {
    for (const auto& s : simplices)
        if (!k.contains(s)) throw InvalidArgument("not a simplex of the ambient complex");
    return restrict_to_used(k, simplices, k.slot_count(), false);
}

bool is_subcomplex(const SimplicialComplex& y, const SimplicialComplex& x) {
    std::vector<Vertex> remap(y.num_vertices());
    for (Vertex v = 0; v < y.num_vertices(); ++v) {
        auto w = x.vertex_of(y.label(v));
        if (!w) return false;
        remap[v] = *w;
    }
    Simplex t;
    for (long d = 0; d <= y.dim(); ++d)
        for (std::size_t i = 0; i < y.count(d); ++i) {
            t.clear();
            for (Vertex v : y.simplex_view(d, i)) t.push_back(remap[v]);
            // remap is monotone since both label lists are sorted
            if (!x.contains(t)) return false;
        }
    return true;
}

bool is_simplex_over_Z(const Collection& members) { return has_cbp_ie(members); }

}  // namespace cbc
