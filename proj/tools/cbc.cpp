// cbc: build complexes, compute homology, query the common basis property and
// run the verification suites. Reports are JSON by default; exit status is 0
// iff every verdict passes, 1 if one fails, 2 on bad input.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "cbc/homology.hpp"
#include "cbc/simpmodel.hpp"
#include "cbc/steinberg.hpp"
#include "report.hpp"

using namespace cbc;
using namespace cbc::cli;

namespace {

const std::map<std::string, Format> kFormats{{"json", Format::Json}, {"csv", Format::Csv}, {"text", Format::Text}};

void require_prime(unsigned long p) {
    if (!is_prime(p)) throw InvalidArgument("--p must be prime");
}

Collection no_sigma(const RunConfig& c) { return Collection(Ring::prime_field(c.p), c.n); }

SimplicialComplex build_kind(const std::string& kind, const RunConfig& c) {
    require_prime(c.p);
    if (kind == "tits") return tits(c.n, c.p, c.caps());
    if (kind == "split-tits") return split_tits(c.n, c.p, c.caps());
    if (kind == "cb") return common_basis_complex(c.n, c.p, c.caps());
    if (kind == "higher") return higher_tits(c.a, c.b, c.n, c.p, no_sigma(c), c.caps());
    throw InvalidArgument("unknown complex kind: " + kind);
}

// One submodule block per member, in the exactlin text form.
Collection read_collection(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        auto pos = line.find_first_not_of(" \t\r");
        if (pos != std::string::npos && line[pos] != '#') lines.push_back(line);
    }
    std::vector<Submodule> members;
    for (std::size_t i = 0; i < lines.size();) {
        std::istringstream hs(lines[i]);
        std::string ring;
        long n = -1, rows = -1;
        if (!(hs >> ring >> n >> rows) || rows < 0) throw ParseError("bad header: " + lines[i]);
        if (i + 1 + static_cast<std::size_t>(rows) > lines.size()) throw ParseError("truncated block: " + lines[i]);
        std::string block;
        for (long r = 0; r <= rows; ++r) block += lines[i + static_cast<std::size_t>(r)] + '\n';
        std::istringstream bs(block);
        members.push_back(submodule_from_text(bs));
        i += 1 + static_cast<std::size_t>(rows);
    }
    if (members.empty()) throw ParseError("collection file has no members");
    return Collection(std::move(members));
}

json complex_summary(const SimplicialComplex& k) {
    json counts = json::array();
    for (long d = 0; d <= k.dim(); ++d) counts.push_back(k.count(d));
    return {{"vertices", k.num_vertices()}, {"dim", k.dim()}, {"counts", counts}};
}

// Lowest nonzero reduced degree must exceed c, and the next one must be free.
void connectivity_verdict(Report& r, const std::string& anchor, const SimplicialComplex& k, long c,
                          const std::string& what) {
    auto h = reduced_homology(k);
    bool ok = is_c_connected_homologically(k, c) && h.at(c + 1).is_free();
    r.verdict(anchor, ok, what + " " + std::to_string(c) + "-connected, free above: " + h.to_string());
}

// ---------------------------------------------------------------- commands

void cmd_homology(Report& r, const std::string& file, const std::string& kind) {
    SimplicialComplex k;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw ParseError("cannot open " + file);
        k = complex_from_text(in);
        r.results["source"] = file;
    } else {
        k = build_kind(kind, r.config);
        r.results["source"] = kind;
    }
    r.results["complex"] = complex_summary(k);
    r.results["homology"] = to_json(reduced_homology(k));
    const long n = static_cast<long>(r.config.n);
    if (file.empty() && kind == "tits") connectivity_verdict(r, "SolomonTits-connectivity", k, n - 3, "T_n");
    if (file.empty() && kind == "cb") connectivity_verdict(r, "maingeneral-connectivity", k, 2 * n - 4, "CB_n");
}

void cmd_cbp(Report& r, const std::string& file) {
    const auto& mode = r.config.mode;
    if (mode != "greedy" && mode != "ie" && mode != "both") throw InvalidArgument("--mode is greedy, ie or both");
    Collection c = read_collection(file);
    json members = json::array();
    for (const auto& u : c.members()) members.push_back(to_inline(u));
    r.results["members"] = members;
    r.results["ring"] = c.ring().name();
    std::optional<bool> ie_holds, greedy_found;
    if (mode != "greedy") {
        auto v = ie_verdict(c);
        ie_holds = v.holds;
        json ie{{"holds", v.holds}};
        if (!v.holds) {
            ie["violating_subset"] = subset_to_string(v.violating);
            ie["failure"] = v.failure == IeFailure::RankIdentity ? "rank-identity" : "non-split-sum";
        }
        auto t = corank_table(c);
        json table = json::array();
        for (std::size_t s = 0; s < t.intersection.size(); ++s) {
            json row{{"subset", subset_to_string(static_cast<Subset>(s))},
                     {"module", to_inline(t.intersection[s])},
                     {"F", t.F[s]},
                     {"minimal", static_cast<bool>(t.minimal[s])}};
            if (t.minimal[s]) row["G"] = t.G[t.module_of[s]];
            table.push_back(std::move(row));
        }
        ie["corank_table"] = table;
        r.results["ie"] = ie;
    }
    if (mode != "ie") {
        auto g = common_basis_greedy(c);
        greedy_found = g.has_value();
        json out{{"found", g.has_value()}};
        if (g) {
            json rows = json::array(), spans = json::array();
            for (std::size_t i = 0; i < g->basis.rows(); ++i) {
                json row = json::array();
                for (const auto& x : g->basis.row(i)) row.push_back(cbc::cli::to_json(x));
                rows.push_back(row);
            }
            for (const auto& s : g->spans) spans.push_back(s);
            out["basis"] = rows;
            out["spans"] = spans;
            r.verdict("CorankCondition-basis-verifies", verify_common_basis(c, *g));
        }
        r.results["greedy"] = out;
    }
    if (mode == "both")
        r.verdict("CBPCriterionPID-equivalence", *ie_holds == *greedy_found,
                  std::string("ie ") + (*ie_holds ? "pass" : "fail") + ", greedy " + (*greedy_found ? "pass" : "fail"));
}

json tor_payload(const TorProfile& t) {
    return {{"n", t.n},
            {"p", t.p},
            {"profile", to_json(t.tor)},
            {"cross_checks", {{"tord", t.tord_agrees ? "pass" : "fail"}, {"join_rank", t.join_agrees ? "pass" : "fail"}}},
            {"euler", cbc::cli::to_json(t.euler)}};
}

void tor_verdicts(Report& r, const TorProfile& t) {
    r.verdict("KD-koszul", t.koszul(), t.tor.to_string());
    r.verdict("TorD-agreement", t.tord_agrees, "D^{2,0} shifted: " + t.model.to_string());
    r.verdict("lemJoin-rank", t.join_agrees, "join top rank " + std::to_string(t.join_top_rank));
    r.verdict("PropositionTorViaBarConstruction-euler", t.euler_agrees, "euler " + t.euler.get_str());
}

void cmd_tor(Report& r) {
    require_prime(r.config.p);
    auto t = tor(r.config.n, r.config.p);
    r.results = tor_payload(t);
    r.flat = true;
    tor_verdicts(r, t);
}

void verify_connectivity(Report& r) {
    const auto& c = r.config;
    require_prime(c.p);
    const long bound = 2 * static_cast<long>(c.n) - 4;
    auto cb = common_basis_complex(c.n, c.p, c.caps());
    r.results["cb"] = to_json(reduced_homology(cb));
    connectivity_verdict(r, "maingeneral-connectivity", cb, bound, "CB_n");
    if (c.k > 0) {
        auto t = higher_tits(c.k, 0, c.n, c.p, no_sigma(c), c.caps());
        r.results["higher"] = to_json(reduced_homology(t));
        connectivity_verdict(r, "maingeneral-higher-connectivity", t, bound, "T^k_n");
    }
}

void verify_koszul(Report& r) {
    require_prime(r.config.p);
    auto t = tor(r.config.n, r.config.p);
    r.results["tor"] = tor_payload(t);
    tor_verdicts(r, t);
}

void verify_morse(Report& r) {
    std::mt19937_64 rng(r.config.seed);
    std::size_t agree = 0, rejected = 0, attempts = 0;
    json failures = json::array();
    for (std::size_t i = 0; i < r.config.count; ++i) {
        auto [x, s] = random_morse_input(rng, 7, 7, 3);
        auto rep = morse_certify(morse_check(x, s));
        if (rep.agree) ++agree;
        else failures.push_back({{"instance", i}, {"relative", to_json(rep.relative)}, {"wedge", to_json(rep.wedge)}});
        // a face of a member, or a vertex adjacent to a vertex member, breaks the pairwise condition
        std::optional<Simplex> extra;
        for (const auto& sigma : s) {
            if (sigma.size() >= 2) extra = Simplex{sigma.front()};
            else
                for (std::size_t e = 0; e < x.count(1) && !extra; ++e) {
                    auto edge = x.simplex(1, e);
                    if (edge[0] == sigma[0]) extra = Simplex{edge[1]};
                    if (edge[1] == sigma[0]) extra = Simplex{edge[0]};
                }
            if (extra) break;
        }
        if (!extra) continue;
        ++attempts;
        auto bad = s;
        bad.push_back(*extra);
        try {
            morse_check(x, bad);
        } catch (const HypothesisViolated&) {
            ++rejected;
        }
    }
    r.results["instances"] = r.config.count;
    r.results["agree"] = agree;
    r.results["failures"] = failures;
    r.results["violating_attempts"] = attempts;
    r.results["violating_rejected"] = rejected;
    r.verdict("Morse2-decomposition", agree == r.config.count,
              std::to_string(agree) + "/" + std::to_string(r.config.count) + " instances agree");
    r.verdict("Morse2-hypotheses-enforced", rejected == attempts,
              std::to_string(rejected) + "/" + std::to_string(attempts) + " violating inputs rejected");
}

void verify_suspension(Report& r) {
    const auto& c = r.config;
    require_prime(c.p);
    auto rep = check_suspension(c.a, c.b, c.n, c.p, c.caps());
    r.results["building"] = to_json(rep.building);
    r.results["model"] = to_json(rep.model);
    r.results["shift"] = rep.shift;
    r.verdict("suspend-shift", rep.agree);
}

void verify_join(Report& r) {
    const auto& c = r.config;
    if (c.ring == "Z") {
        if (c.n < 2) throw InvalidArgument("the witness needs --n >= 2");
        const Ring z = Ring::integers();
        std::vector<long> plus(c.n, 0), minus(c.n, 0);
        plus[0] = minus[0] = plus[1] = 1;
        minus[1] = -1;
        auto l1 = span_of(z, c.n, {plus}), l2 = span_of(z, c.n, {minus});
        // each line alone is a vertex of T_n(Z), so the pair spans an edge of the join
        const bool join_edge = is_split(l1) && is_split(l2) && is_simplex_over_Z(Collection(z, c.n, {l1})) &&
                               is_simplex_over_Z(Collection(z, c.n, {l2}));
        Collection pair(z, c.n, {l1, l2});
        const bool t2_edge = is_simplex_over_Z(pair);
        auto v = ie_verdict(pair);
        r.results["witness"] = {to_inline(l1), to_inline(l2)};
        r.results["join_simplex"] = join_edge;
        r.results["t2_simplex"] = t2_edge;
        r.results["sum_index"] = cbc::cli::to_json(snf(sum(l1, l2).basis()).back());
        if (!v.holds) r.results["violating_subset"] = subset_to_string(v.violating);
        r.verdict("ExampleIncompatibleLines-witness", join_edge && !t2_edge);
        return;
    }
    require_prime(c.p);
    auto t = tits(c.n, c.p, c.caps());
    auto j = join(t, t, c.caps());
    auto h = higher_tits(2, 0, c.n, c.p, no_sigma(c), c.caps());
    r.results["join"] = complex_summary(j);
    r.results["higher"] = complex_summary(h);
    r.verdict("lemJoin-isomorphism", h == j);
}

void verify_split_compare(Report& r) {
    const auto& c = r.config;
    require_prime(c.p);
    if (c.a == 0) throw InvalidArgument("split-compare needs --a >= 1");
    auto lhs = reduced_homology(higher_tits(c.a, c.b, c.n, c.p, no_sigma(c), c.caps()));
    auto rhs = reduced_homology(higher_tits(c.a + c.b, 0, c.n, c.p, no_sigma(c), c.caps()));
    r.results["split"] = to_json(lhs);
    r.results["nonsplit"] = to_json(rhs);
    r.verdict("SplitvsNotSplit-equality", lhs == rhs);
    auto dl = model_homology(d_model(c.a, c.b, c.n, c.p, c.caps()));
    auto dr = model_homology(d_model(c.a + c.b, 0, c.n, c.p, c.caps()));
    r.results["model_split"] = to_json(dl);
    r.results["model_nonsplit"] = to_json(dr);
    r.verdict("SplitvsNotSplitD-equality", dl == dr);
}

void add_common(CLI::App* sub, RunConfig& c) {
    sub->add_option("--n", c.n, "rank of the ambient module");
    sub->add_option("--p", c.p, "prime");
    sub->add_option("--a", c.a, "Tits slots");
    sub->add_option("--b", c.b, "split slots");
    sub->add_option("--k", c.k, "join length for connectivity of T^k_n; 0 skips it")->check(CLI::Range(0, 12));
    sub->add_option("--ring", c.ring, "Z or Fp")->check(CLI::IsMember({"Z", "Fp"}));
    sub->add_option("--seed", c.seed, "RNG seed");
    sub->add_option("--count", c.count, "random instances");
    sub->add_option("--max-dim", c.max_dim, "simplex dimension cap; negative for none");
    sub->add_option("--max-vertices", c.max_vertices, "vertex cap")->check(CLI::PositiveNumber);
    sub->add_option("--max-simplices", c.max_simplices, "simplex cap")->check(CLI::PositiveNumber);
    sub->add_option("--format", c.format, "json, csv or text")->transform(CLI::CheckedTransformer(kFormats));
    sub->add_option("--out", c.out, "output path; stdout when omitted");
    sub->add_flag("--timing", c.timing, "include wall time in the report");
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(std::cout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgument("cannot write " + path);
    body(f);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"common basis complexes and Steinberg Koszul duality"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    RunConfig cfg;
    std::string kind, file, suite;

    auto* build = app.add_subcommand("build", "write a complex file");
    build->add_option("kind", kind, "tits, split-tits, cb or higher")
        ->required()
        ->check(CLI::IsMember({"tits", "split-tits", "cb", "higher"}));
    add_common(build, cfg);

    auto* homology = app.add_subcommand("homology", "reduced homology of a complex file or a built complex");
    homology->add_option("file", file, "complex file");
    homology->add_option("--kind", kind, "build this complex instead of reading a file")
        ->check(CLI::IsMember({"tits", "split-tits", "cb", "higher"}));
    add_common(homology, cfg);

    auto* cbp = app.add_subcommand("cbp", "common basis property of a collection file");
    cbp->add_option("file", file, "collection file")->required();
    cbp->add_option("--mode", cfg.mode, "greedy, ie or both")->check(CLI::IsMember({"greedy", "ie", "both"}));
    add_common(cbp, cfg);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "connectivity, koszul, morse, suspension, join or split-compare")
        ->required()
        ->check(CLI::IsMember({"connectivity", "koszul", "morse", "suspension", "join", "split-compare"}));
    add_common(verify, cfg);

    auto* torcmd = app.add_subcommand("tor", "Tor of the Steinberg monoid at grading n");
    add_common(torcmd, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) {
            auto k = build_kind(kind, cfg);
            emit(cfg.out, [&](std::ostream& os) { os << to_text(k); });
            return 0;
        }
        Report r;
        const auto t0 = std::chrono::steady_clock::now();
        if (homology->parsed()) {
            cfg.command = "homology";
            if (file.empty() == kind.empty()) throw InvalidArgument("give either a file or --kind");
            r.config = cfg;
            cmd_homology(r, file, kind);
        } else if (cbp->parsed()) {
            cfg.command = "cbp";
            r.config = cfg;
            cmd_cbp(r, file);
        } else if (verify->parsed()) {
            cfg.command = "verify " + suite;
            r.config = cfg;
            if (suite == "connectivity") verify_connectivity(r);
            else if (suite == "koszul") verify_koszul(r);
            else if (suite == "morse") verify_morse(r);
            else if (suite == "suspension") verify_suspension(r);
            else if (suite == "join") verify_join(r);
            else verify_split_compare(r);
        } else {
            cfg.command = "tor";
            r.config = cfg;
            cmd_tor(r);
        }
        if (cfg.timing) r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        emit(cfg.out, [&](std::ostream& os) { r.write(os); });
        return r.pass() ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "cbc: " << e.what() << '\n';
        return 2;
    }
}
