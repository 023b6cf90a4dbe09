#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "micz/config.hpp"
#include "micz/report.hpp"

namespace micz {

// Raw CLI values before validation.
struct RunOptions {
    int n = 2;
    std::string mu = "1/2";
    std::vector<std::string> suites{"all"};
    std::string mode = "exact";
    int points = 0; // 0 = mode default (20 exact, 200 float)
    std::uint64_t seed = 1;
    int kmax = 4;
    int lmax = 4;
    int imax = 6;
    std::string format = "text";
    bool timings = false;
};

struct RunPlan {
    ProblemConfig cfg;
    std::vector<std::string> suites; // expanded, fixed order
    int kmax = 4, lmax = 4, imax = 6;
    bool timings = false;
    std::string format = "text";
};

// Validates and expands the options; throws ConfigError on bad input.
RunPlan make_plan(const RunOptions& opt);

VerificationReport run_plan(const RunPlan& plan);

std::string mu_str(int two_mu);
std::string render_text(const RunPlan& plan, const VerificationReport& rep);
std::string render_json(const RunPlan& plan, const VerificationReport& rep);

// Parse-free driver: plan, run, render to out; config errors to err.
// Exit code: 0 all non-fail, 1 any fail, 2 invalid configuration.
int run_cli(const RunOptions& opt, std::ostream& out, std::ostream& err);

} // namespace micz
