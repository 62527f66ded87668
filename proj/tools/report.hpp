#pragma once

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cbc/complexes.hpp"
#include "cbc/homology.hpp"

namespace cbc::cli {

using nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kSchema = 1;

enum class Format { Json, Csv, Text };

struct RunConfig {
    std::string command;
    std::size_t n = 2, a = 1, b = 0, k = 0, count = 100;
    unsigned long p = 2;
    std::string ring = "Fp";
    std::string mode = "both";
    std::uint64_t seed = 1;
    long max_dim = -1;
    std::size_t max_vertices = 5000, max_simplices = 2'000'000;
    Format format = Format::Json;
    std::string out;
    bool timing = false;

    Caps caps() const { return Caps{max_vertices, max_simplices, max_dim}; }
    json echo() const;
};

struct Verdict {
    std::string anchor;  // e.g. "CBPCriterionPID-equivalence"
    bool pass = false;
    std::string detail;
};

struct Report {
    RunConfig config;
    json results = json::object();
    std::vector<Verdict> verdicts;
    std::optional<double> wall_seconds;
    bool flat = false;  // also lift the result keys to the top level

    void verdict(std::string anchor, bool pass, std::string detail = {});
    bool pass() const;
    json to_json() const;
    void write(std::ostream& os) const;
};

json to_json(const HomologyProfile& h);
json to_json(const Int& x);  // number when it fits, decimal string otherwise

}  // namespace cbc::cli
