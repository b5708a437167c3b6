#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ps2/invariant.hpp"
#include "ps2/ps_soode.hpp"

namespace ps2 {

struct PipelineOptions {
    SoodeLimits limits;
    int trajectories = 10;
    double h = 1e-4;
    double T = 1;
    std::uint64_t seed = 0;
};

enum class ReduceStatus { verified, nothing_found, limit_exceeded, unsupported_integral, not_verified };

const char* to_string(ReduceStatus s);

struct SolveReport {
    std::string input;
    SOODE ode;
    ReduceStatus status = ReduceStatus::nothing_found;
    std::string message;
    int degree = 0;
    std::vector<SRPair> pairs;
    std::optional<SRPair> chosen;
    std::optional<ElemInvariant> invariant;
    std::optional<ReducedODE> reduced;
    bool symbolic = false;
    std::optional<double> numeric_max_drift;  // absent when no trajectory ran
    std::map<std::string, double> timing_ms;
    std::vector<std::string> warnings;

    // 0 verified, 2 nothing found or limits hit, 1 otherwise.
    int exit_code() const;
};

// parse -> search -> invariant -> reduce -> symbolic and numeric checks.
// Parse errors propagate.
SolveReport run_reduce(const std::string& ode_text, const PipelineOptions& options);

struct CorpusEntry {
    std::size_t line = 0;
    std::string ode;
    std::optional<std::string> expect;
};

// "<ode> ;; expect: <invariant>" per line; '#' starts a comment.
std::vector<CorpusEntry> parse_corpus(const std::string& text);

}  // namespace ps2
