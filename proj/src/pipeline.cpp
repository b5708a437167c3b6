#include "ps2/pipeline.hpp"

#include <chrono>
#include <sstream>

#include "ps2/frontend.hpp"
#include "ps2/verifier.hpp"

namespace ps2 {

namespace {

class Stopwatch {
  public:
    double lap_ms() {
        const auto now = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
        return ms;
    }

  private:
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

const char* to_string(ReduceStatus s) {
    switch (s) {
        case ReduceStatus::verified: return "verified";
        case ReduceStatus::nothing_found: return "NothingFound";
        case ReduceStatus::limit_exceeded: return "LimitExceeded";
        case ReduceStatus::unsupported_integral: return "UnsupportedIntegral";
        case ReduceStatus::not_verified: return "NotVerified";
    }
    return "?";
}

int SolveReport::exit_code() const {
    switch (status) {
        case ReduceStatus::verified: return 0;
        case ReduceStatus::nothing_found:
        case ReduceStatus::limit_exceeded: return 2;
        default: return 1;
    }
}

SolveReport run_reduce(const std::string& ode_text, const PipelineOptions& options) {
    SolveReport rep;
    rep.input = ode_text;
    Stopwatch clock;
    rep.ode = parse_soode(ode_text);
    rep.timing_ms["parse"] = clock.lap_ms();

    try {
        SearchReport found = search(rep.ode, options.limits, &rep.warnings);
        rep.pairs = std::move(found.pairs);
        rep.degree = found.degree;
    } catch (const NothingFound& e) {
        rep.status = ReduceStatus::nothing_found;
        rep.message = e.what();
    } catch (const LimitExceeded& e) {
        rep.status = ReduceStatus::limit_exceeded;
        rep.message = e.what();
    }
    rep.timing_ms["search"] = clock.lap_ms();
    if (rep.pairs.empty()) return rep;

    for (const auto& pair : rep.pairs) {
        try {
            ElemInvariant inv = build_invariant(pair);
            rep.chosen = pair;
            rep.invariant = std::move(inv);
            break;
        } catch (const UnsupportedIntegral& e) {
            rep.warnings.push_back(e.what());
        }
    }
    rep.timing_ms["invariant"] = clock.lap_ms();
    if (!rep.invariant) {
        rep.status = ReduceStatus::unsupported_integral;
        rep.message = "no pair led to an elementary invariant with rational data";
        return rep;
    }
    rep.reduced = reduce(rep.ode, *rep.invariant);

    rep.symbolic = verify_symbolic(*rep.invariant, rep.ode);
    if (options.trajectories > 0) {
        const auto runs =
            verify_numeric(*rep.invariant, rep.ode, options.trajectories, options.h, options.T, options.seed);
        if (!runs.empty()) rep.numeric_max_drift = max_drift(runs);
    }
    rep.timing_ms["verify"] = clock.lap_ms();
    rep.status = rep.symbolic ? ReduceStatus::verified : ReduceStatus::not_verified;
    if (!rep.symbolic) rep.message = "D[I] does not vanish";
    return rep;
}

std::vector<CorpusEntry> parse_corpus(const std::string& text) {
    std::vector<CorpusEntry> out;
    std::istringstream in(text);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        CorpusEntry e;
        e.line = number;
        const auto sep = line.find(";;");
        e.ode = trim(line.substr(0, sep));
        if (sep != std::string::npos) {
            std::string rest = trim(line.substr(sep + 2));
            if (rest.rfind("expect:", 0) == 0) rest = trim(rest.substr(7));
            if (!rest.empty()) e.expect = rest;
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace ps2
