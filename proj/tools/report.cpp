#include "report.hpp"

#include <ostream>

namespace cbc::cli {

namespace {

const char* format_name(Format f) {
    switch (f) {
        case Format::Json: return "json";
        case Format::Csv: return "csv";
        case Format::Text: return "text";
    }
    return "json";
}

// "a.b.c = value" lines, keys in sorted order.
void flatten(std::ostream& os, const std::string& prefix, const json& j) {
    if (j.is_object() && !j.empty()) {
        for (const auto& [k, v] : j.items()) flatten(os, prefix.empty() ? k : prefix + "." + k, v);
        return;
    }
    os << prefix << " = " << j.dump() << '\n';
}

}  // namespace

json RunConfig::echo() const {
    return {{"command", command}, {"n", n},       {"p", p},           {"a", a},
            {"b", b},             {"k", k},       {"count", count},   {"ring", ring},
            {"mode", mode},       {"seed", seed}, {"max_dim", max_dim}, {"max_vertices", max_vertices},
            {"max_simplices", max_simplices}, {"format", format_name(format)}};
}

void Report::verdict(std::string anchor, bool ok, std::string detail) {
    verdicts.push_back({std::move(anchor), ok, std::move(detail)});
}

bool Report::pass() const {
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

json Report::to_json() const {
    json out;
    out["schema"] = kSchema;
    out["version"] = kVersion;
    out["seed"] = config.seed;
    out["config"] = config.echo();
    out["results"] = results;
    if (flat)
        for (const auto& [k, v] : results.items()) {
            if (out.contains(k)) throw Error("result key clashes with the report header: " + k);
            out[k] = v;
        }
    json vs = json::array();
    for (const auto& v : verdicts) {
        json one{{"anchor", v.anchor}, {"result", v.pass ? "pass" : "fail"}};
        if (!v.detail.empty()) one["detail"] = v.detail;
        vs.push_back(std::move(one));
    }
    out["verdicts"] = vs;
    out["pass"] = pass();
    if (wall_seconds) out["wall_seconds"] = *wall_seconds;
    return out;
}

void Report::write(std::ostream& os) const {
    switch (config.format) {
        case Format::Json:
            os << to_json().dump(2) << '\n';
            break;
        case Format::Csv:
            os << "anchor,result,detail\n";
            for (const auto& v : verdicts) {
                std::string d = v.detail;
                for (auto& ch : d)
                    if (ch == '"') ch = '\'';
                os << v.anchor << ',' << (v.pass ? "pass" : "fail") << ",\"" << d << "\"\n";
            }
            break;
        case Format::Text:
            os << "cbc " << kVersion << ' ' << config.command << " seed=" << config.seed << '\n';
            flatten(os, "", results);
            for (const auto& v : verdicts) {
                os << (v.pass ? "PASS " : "FAIL ") << v.anchor;
                if (!v.detail.empty()) os << ": " << v.detail;
                os << '\n';
            }
            if (wall_seconds) os << "wall_seconds = " << *wall_seconds << '\n';
            break;
    }
}

json to_json(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

json to_json(const HomologyProfile& h) {
    json out = json::object();
    for (const auto& [d, g] : h.groups) {
        json t = json::array();
        for (const auto& x : g.torsion) t.push_back(to_json(x));
        out[std::to_string(d)] = {{"betti", g.betti}, {"torsion", t}};
    }
    return out;
}

}  // namespace cbc::cli
