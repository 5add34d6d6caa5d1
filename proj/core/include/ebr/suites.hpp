#pragma once

#include <string>
#include <vector>

#include "ebr/brauer.hpp"
#include "ebr/triplet.hpp"

namespace ebr {

struct Check {
    std::string name;  // the operation that produced it
    bool ok = false;
    nlohmann::json detail = nlohmann::json::object();
    nlohmann::json to_json() const;
};

struct SuiteResult {
    std::string name;
    Verdict verdict = Verdict::Unknown;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    nlohmann::json info = nlohmann::json::object();  // reported, not judged
    double seconds = 0;
    nlohmann::json to_json() const;
};

// "tower", "geometry", "picard", "jacobian", "scan" run by default;
// "residues" on request.
const std::vector<std::string>& default_suites();
const std::vector<std::string>& all_suites();

SuiteResult run_suite(const std::string& name, const Triplet& t);

struct PaperReport {
    Triplet triplet;
    std::vector<SuiteResult> suites;
    std::vector<std::string> diagnostics;  // tower degeneracy
    Verdict overall = Verdict::Unknown;
    nlohmann::json to_json() const;
};

// Pass iff every suite passes. A degenerate, undecided or unbuildable tower
// step makes the overall verdict Unknown.
PaperReport verify_paper(const Triplet& t, const std::vector<std::string>& suites = default_suites());

// Desk covers with split h, each with functions to test.
struct DeskCase {
    std::string name;
    BranchCoverData cover;
    std::vector<DeclaredFunction> functions;
};
std::vector<DeskCase> desk_cover_cases(const Tower& base = Tower());

}  // namespace ebr
