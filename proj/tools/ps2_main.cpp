#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ps2/frontend.hpp"
#include "ps2/pipeline.hpp"
#include "ps2/ps_foode.hpp"
#include "ps2/verifier.hpp"

using nlohmann::json;
using namespace ps2;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;

double default_timeout() {
    if (const char* env = std::getenv("PS2_TIMEOUT")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
        std::cerr << "warning: ignoring PS2_TIMEOUT=" << env << "\n";
    }
    return SoodeLimits{}.timeout_seconds;
}

json invariant_json(const ElemInvariant& inv) {
    json logs = json::array(), atans = json::array();
    for (const auto& l : inv.logs) logs.push_back({{"c", to_string(l.coeff)}, {"z", render(l.arg)}});
    for (const auto& a : inv.atans)
        atans.push_back({{"c", to_string(a.coeff)}, {"num", render(a.num)}, {"den", render(a.den)}});
    return {{"z0", render(inv.z0)}, {"logs", logs}, {"atans", atans}, {"text", render(inv)}};
}

json limits_json(const SoodeLimits& l) {
    return {{"s_degree", l.s_degree},
            {"r_degree", l.r_degree},
            {"max_degree", l.max_degree},
            {"timeout_seconds", l.timeout_seconds},
            {"shape", l.shape == AnsatzShape::box ? "box" : "total"}};
}

json report_json(const SolveReport& rep, const PipelineOptions& opt, bool all) {
    json j;
    j["ode"] = rep.input;
    j["M"] = render(rep.ode.M);
    j["N"] = render(rep.ode.N);
    j["status"] = to_string(rep.status);
    if (!rep.message.empty()) j["message"] = rep.message;
    j["degree"] = rep.degree;
    json pairs = json::array();
    if (all) {
        for (const auto& p : rep.pairs) pairs.push_back({{"S", render(p.S)}, {"R", render(p.R)}});
    } else if (rep.chosen) {
        pairs.push_back({{"S", render(rep.chosen->S)}, {"R", render(rep.chosen->R)}});
    } else if (!rep.pairs.empty()) {
        pairs.push_back({{"S", render(rep.pairs.front().S)}, {"R", render(rep.pairs.front().R)}});
    }
    j["pairs"] = pairs;
    j["invariant"] = rep.invariant ? invariant_json(*rep.invariant) : json(nullptr);
    if (rep.reduced)
        j["reduced"] = {{"implicit", rep.reduced->implicit_text()}, {"explicit", rep.reduced->explicit_text()}};
    else
        j["reduced"] = nullptr;
    j["checks"] = {{"symbolic", rep.symbolic},
                   {"numeric_max_drift", rep.numeric_max_drift ? json(*rep.numeric_max_drift) : json(nullptr)},
                   {"trajectories", opt.trajectories}};
    j["timing_ms"] = rep.timing_ms;
    json limits = limits_json(opt.limits);
    limits["seed"] = opt.seed;
    j["limits"] = limits;
    j["warnings"] = rep.warnings;
    return j;
}

void print_report(const SolveReport& rep, bool all) {
    std::cout << "ode:       " << render(rep.ode) << "\n";
    std::cout << "M:         " << render(rep.ode.M) << "\nN:         " << render(rep.ode.N) << "\n";
    if (!rep.pairs.empty()) {
        std::cout << "pairs at degree " << rep.degree << ":\n";
        for (const auto& p : rep.pairs) {
            if (!all && rep.chosen && !(p == *rep.chosen)) continue;
            std::cout << "  S = " << render(p.S) << "\n  R = " << render(p.R) << "\n";
            if (!all && !rep.chosen) break;
        }
    }
    if (rep.invariant) std::cout << "invariant: " << render(*rep.invariant) << "\n";
    if (rep.reduced) {
        std::cout << "reduced:   " << rep.reduced->implicit_text() << "\n";
        for (const auto& e : rep.reduced->explicit_text()) std::cout << "           " << e << "\n";
    }
    if (rep.invariant) {
        std::cout << "symbolic:  " << (rep.symbolic ? "D[I] = 0" : "D[I] != 0") << "\n";
        if (rep.numeric_max_drift) std::cout << "drift:     " << *rep.numeric_max_drift << "\n";
    }
    for (const auto& w : rep.warnings) std::cout << "warning:   " << w << "\n";
    std::cout << "status:    " << to_string(rep.status);
    if (!rep.message.empty()) std::cout << " (" << rep.message << ")";
    std::cout << "\n";
}

struct Common {
    int s_degree = 2;
    int r_degree = 2;
    int max_degree = 4;
    double timeout = 0;
    bool all = false;
    bool as_json = false;
    std::uint64_t seed = 0;
    int trajectories = 10;
    double h = 1e-4;
    double T = 1;

    PipelineOptions options() const {
        PipelineOptions o;
        o.limits.s_degree = s_degree;
        o.limits.r_degree = r_degree;
        o.limits.max_degree = max_degree;
        o.limits.timeout_seconds = timeout;
        o.seed = seed;
        o.trajectories = trajectories;
        o.h = h;
        o.T = T;
        return o;
    }
};

void add_search_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--s-degree", c.s_degree, "Cap on the S ansatz degree")->check(CLI::PositiveNumber);
    cmd->add_option("--r-degree", c.r_degree, "Cap on the R ansatz degree")->check(CLI::PositiveNumber);
    cmd->add_option("--max-degree", c.max_degree, "Deepening ceiling")->check(CLI::PositiveNumber);
    cmd->add_option("--timeout", c.timeout, "Seconds per search stage (default $PS2_TIMEOUT or 30)")
        ->check(CLI::PositiveNumber);
}

void add_check_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--seed", c.seed, "Seed for numeric checks");
    cmd->add_option("--trajectories", c.trajectories, "Numeric trajectories (0 = symbolic only)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--step", c.h, "RK4 step")->check(CLI::PositiveNumber);
    cmd->add_option("--length", c.T, "Integration length in x")->check(CLI::PositiveNumber);
}

int cmd_reduce(const std::string& ode, const Common& c) {
    const PipelineOptions opt = c.options();
    const SolveReport rep = run_reduce(ode, opt);
    if (c.as_json)
        std::cout << report_json(rep, opt, c.all).dump(2) << "\n";
    else
        print_report(rep, c.all);
    return rep.exit_code();
}

int cmd_solve1(const std::string& text, int degree, const Common& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const FOODE ode = parse_foode(text);
    SolveLimits lim;
    lim.timeout_seconds = c.timeout;
    json j;
    j["ode"] = text;
    j["M"] = render(ode.M);
    j["N"] = render(ode.N);
    int code = kExitOk;
    try {
        const Foode1Result r = solve_foode(ode, degree, lim);
        const RatFun R = r.factor.R();
        const bool factor_ok = integrating_factor_residual(ode, R).is_zero();
        const bool w_ok = (RatFun(ode.N) * r.W.derivative(Var::x) + RatFun(ode.M) * r.W.derivative(Var::y)).is_zero();
        json darboux = json::array(), exps = json::array();
        for (const auto& d : r.darboux) darboux.push_back({{"f", render(d.f)}, {"cofactor", render(d.cofactor)}});
        for (const auto& [d, n] : r.factor.factors) exps.push_back({{"f", render(d.f)}, {"n", to_string(n)}});
        j["status"] = factor_ok && w_ok ? "verified" : "NotVerified";
        j["degree"] = r.degree;
        j["darboux"] = darboux;
        j["integrating_factor"] = {{"R", render(R)}, {"factors", exps}};
        j["invariant"] = invariant_json(r.W);
        j["checks"] = {{"integrating_factor", factor_ok}, {"symbolic", w_ok}};
        code = factor_ok && w_ok ? kExitOk : kExitError;
    } catch (const NothingFound& e) {
        j["status"] = "NothingFound";
        j["message"] = e.what();
        code = kExitNegative;
    } catch (const LimitExceeded& e) {
        j["status"] = "LimitExceeded";
        j["message"] = e.what();
        code = kExitNegative;
    }
    j["timing_ms"] = {{"total", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()}};
    j["limits"] = {{"degree", degree}, {"timeout_seconds", c.timeout}};
    if (c.as_json) {
        std::cout << j.dump(2) << "\n";
        return code;
    }
    std::cout << "ode:       " << render(ode) << "\n";
    if (j.contains("darboux")) {
        for (const auto& d : j["darboux"])
            std::cout << "darboux:   " << d["f"].get<std::string>() << "  (cofactor " << d["cofactor"].get<std::string>()
                      << ")\n";
        std::cout << "R:         " << j["integrating_factor"]["R"].get<std::string>() << "\n";
        std::cout << "invariant: " << j["invariant"]["text"].get<std::string>() << "\n";
        std::cout << "checks:    (RN)_x + (RM)_y = 0: " << j["checks"]["integrating_factor"]
                  << ", N W_x + M W_y = 0: " << j["checks"]["symbolic"] << "\n";
    }
    std::cout << "status:    " << j["status"].get<std::string>();
    if (j.contains("message")) std::cout << " (" << j["message"].get<std::string>() << ")";
    std::cout << "\n";
    return code;
}

int cmd_verify(const std::string& ode_text, const std::string& inv_text, const Common& c) {
    const SOODE ode = parse_soode(ode_text);
    const ElemInvariant inv = parse_invariant(inv_text);
    const bool symbolic = verify_symbolic(inv, ode);
    std::optional<double> drift;
    std::size_t truncated = 0, runs_done = 0;
    if (c.trajectories > 0) {
        const auto runs = verify_numeric(inv, ode, c.trajectories, c.h, c.T, c.seed);
        runs_done = runs.size();
        for (const auto& r : runs) truncated += r.truncated ? 1 : 0;
        if (!runs.empty()) drift = max_drift(runs);
    }
    if (c.as_json) {
        json j = {{"ode", ode_text},
                  {"M", render(ode.M)},
                  {"N", render(ode.N)},
                  {"invariant", invariant_json(inv)},
                  {"checks",
                   {{"symbolic", symbolic},
                    {"numeric_max_drift", drift ? json(*drift) : json(nullptr)},
                    {"trajectories", runs_done},
                    {"truncated", truncated}}},
                  {"limits", {{"seed", c.seed}, {"h", c.h}, {"T", c.T}}}};
        if (!symbolic) j["residual"] = render(total_derivative(inv, ode));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "symbolic:  " << (symbolic ? "true" : "false");
        if (!symbolic) std::cout << "  (D[I] = " << render(total_derivative(inv, ode)) << ")";
        std::cout << "\n";
        if (c.trajectories > 0) {
            std::cout << "numeric:   ";
            if (drift)
                std::cout << "max drift " << *drift << " over " << runs_done << " trajectories (" << truncated
                          << " truncated)\n";
            else
                std::cout << "no admissible initial point\n";
        }
    }
    return symbolic ? kExitOk : kExitNegative;
}

int cmd_darboux(const std::string& text, int degree, const Common& c) {
    const ParsedOde parsed = parse_ode(text);
    SolveLimits lim;
    lim.timeout_seconds = c.timeout;
    std::vector<DarbouxPoly> found;
    if (const auto* f = std::get_if<FOODE>(&parsed)) {
        found = find_darboux(*f, degree, lim);
    } else {
        const auto& s = std::get<SOODE>(parsed);
        const VectorField field = soode_field(s);
        found = darboux_polynomials(field, kOdeVars, degree, std::max(0, field.degree() - 1), lim);
    }
    if (c.as_json) {
        json arr = json::array();
        for (const auto& d : found) arr.push_back({{"f", render(d.f)}, {"cofactor", render(d.cofactor)}});
        std::cout << json{{"ode", text}, {"degree", degree}, {"darboux", arr}}.dump(2) << "\n";
    } else {
        for (const auto& d : found) std::cout << render(d.f) << "    cofactor " << render(d.cofactor) << "\n";
        std::cout << found.size() << " Darboux polynomial(s) up to degree " << degree << "\n";
    }
    return kExitOk;
}

struct CorpusRow {
    std::string status;
    bool pass = false;
    double ms = 0;
    std::string detail;
};

int cmd_corpus(const std::string& path, unsigned jobs, const Common& c) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open corpus file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const auto entries = parse_corpus(buf.str());
    const PipelineOptions opt = c.options();

    std::vector<CorpusRow> rows(entries.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) {
            const auto t0 = std::chrono::steady_clock::now();
            CorpusRow& row = rows[i];
            try {
                const SolveReport rep = run_reduce(entries[i].ode, opt);
                row.status = to_string(rep.status);
                if (rep.status == ReduceStatus::verified) {
                    row.pass = !entries[i].expect || equivalent(*rep.invariant, parse_invariant(*entries[i].expect));
                    if (!row.pass) row.status = "mismatch";
                    row.detail = render(*rep.invariant);
                } else {
                    row.detail = rep.message;
                }
            } catch (const std::exception& e) {
                row.status = "error";
                row.detail = e.what();
            }
            row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < std::min<std::size_t>(jobs, entries.size()); ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::size_t passed = 0, nothing = 0, failed = 0;
    for (const auto& r : rows) {
        if (r.pass)
            ++passed;
        else if (r.status == "NothingFound" || r.status == "LimitExceeded")
            ++nothing;
        else
            ++failed;
    }
    if (c.as_json) {
        json arr = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i)
            arr.push_back({{"line", entries[i].line},
                           {"ode", entries[i].ode},
                           {"status", rows[i].status},
                           {"pass", rows[i].pass},
                           {"detail", rows[i].detail},
                           {"timing_ms", rows[i].ms}});
        std::cout << json{{"entries", arr},
                          {"passed", passed},
                          {"total", rows.size()},
                          {"nothing_found", nothing},
                          {"failed", failed},
                          {"limits", limits_json(opt.limits)}}
                         .dump(2)
                  << "\n";
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            char ms[32];
            std::snprintf(ms, sizeof ms, "%9.1f ms", rows[i].ms);
            std::cout << (rows[i].pass ? "PASS " : "FAIL ") << "line " << entries[i].line << "  " << ms << "  "
                      << rows[i].status << "  " << entries[i].ode << "\n";
            if (!rows[i].detail.empty()) std::cout << "      " << rows[i].detail << "\n";
        }
        std::cout << passed << "/" << rows.size() << " passed";
        if (nothing) std::cout << ", " << nothing << " without a pair at the bound";
        if (failed) std::cout << ", " << failed << " failed";
        std::cout << "\n";
    }
    return failed == 0 ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prelle-Singer style reduction of rational second-order ODEs"};
    app.require_subcommand(1);
    Common c;
    c.timeout = default_timeout();
    std::string ode, invariant, path;
    int degree = 3;
    unsigned jobs = 0;

    auto* reduce = app.add_subcommand("reduce", "Find (S, R), build the first integral and reduce the order");
    reduce->add_option("ode", ode, "y'' = M/N")->required();
    add_search_flags(reduce, c);
    add_check_flags(reduce, c);
    reduce->add_flag("--all", c.all, "Report every verified pair");
    reduce->add_flag("--json", c.as_json, "JSON output");

    auto* solve1 = app.add_subcommand("solve1", "Integrating factor and first integral of y' = M/N");
    solve1->add_option("ode", ode, "y' = M/N")->required();
    solve1->add_option("--degree", degree, "Darboux degree bound")->check(CLI::PositiveNumber);
    solve1->add_option("--timeout", c.timeout, "Seconds per solve")->check(CLI::PositiveNumber);
    solve1->add_flag("--json", c.as_json, "JSON output");

    auto* verify = app.add_subcommand("verify", "Check a candidate invariant symbolically and numerically");
    verify->add_option("ode", ode, "y'' = M/N")->required();
    verify->add_option("invariant", invariant, "Expression in x, y, y' with log/atan")->required();
    add_check_flags(verify, c);
    verify->add_flag("--json", c.as_json, "JSON output");

    int darboux_degree = 2;
    auto* darboux = app.add_subcommand("darboux", "Darboux polynomials of the ODE's vector field");
    darboux->add_option("ode", ode, "y' = M/N or y'' = M/N")->required();
    darboux->add_option("--degree", darboux_degree, "Total degree bound")->check(CLI::PositiveNumber);
    darboux->add_option("--timeout", c.timeout, "Seconds")->check(CLI::PositiveNumber);
    darboux->add_flag("--json", c.as_json, "JSON output");

    auto* corpus = app.add_subcommand("corpus", "Run reduce over a corpus file and compare invariants");
    corpus->add_option("file", path, "Lines '<ode> ;; expect: <invariant>'")->required();
    add_search_flags(corpus, c);
    add_check_flags(corpus, c);
    corpus->add_option("--jobs", jobs, "Parallel workers (0 = all cores)");
    corpus->add_flag("--json", c.as_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitError;
    }

    try {
        if (*reduce) return cmd_reduce(ode, c);
        if (*solve1) return cmd_solve1(ode, degree, c);
        if (*verify) return cmd_verify(ode, invariant, c);
        if (*darboux) return cmd_darboux(ode, darboux_degree, c);
        if (*corpus) return cmd_corpus(path, jobs, c);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
