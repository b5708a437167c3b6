#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "ps2/frontend.hpp"

using nlohmann::json;
using namespace ps2;

namespace {

struct Run {
    int code;
    std::string out;
};

std::string quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + PS2_BIN + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    std::array<char, 4096> buf{};
    while (const std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("ps2_cli_" + name);
    std::ofstream(path) << content;
    return path.string();
}

}  // namespace

TEST_CASE("reduce the harmonic oscillator") {
    const Run r = run("reduce " + quote("y'' = -y"));
    CHECK(r.code == 0);
    CHECK(r.out.find("invariant: y^2 + y'^2") != std::string::npos);
    CHECK(r.out.find("status:    verified") != std::string::npos);
}

TEST_CASE("reduce --json schema and round trip") {
    const Run r = run("reduce --json --all " + quote("y'' = y'*(3*y'*x + y)/(x*y)"));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    for (const char* key : {"ode", "M", "N", "pairs", "invariant", "reduced", "checks", "timing_ms", "limits"})
        CHECK(j.contains(key));
    CHECK(j["checks"]["symbolic"] == true);
    CHECK(j["checks"]["numeric_max_drift"].get<double>() < 1e-6);
    CHECK(j["pairs"].size() >= 2);
    for (const auto& p : j["pairs"]) {
        const std::string S = p["S"], R = p["R"];
        CHECK(render(parse_ratfun(S)) == S);
        CHECK(render(parse_ratfun(R)) == R);
    }
    const std::string z0 = j["invariant"]["z0"];
    CHECK(render(parse_ratfun(z0)) == z0);
    CHECK(parse_ratfun(z0) == parse_ratfun("y'/(x*y^3)"));
    CHECK(render(parse_poly(j["M"].get<std::string>())) == j["M"]);
    CHECK(j["reduced"]["explicit"][0] == "y' = x*y^3*C1");
    CHECK(j["limits"]["max_degree"] == 4);
}

TEST_CASE("reduce exit code when nothing is found") {
    const Run r = run("reduce --max-degree 1 --trajectories 0 " + quote("y'' = 6*y^2 + x"));
    CHECK(r.code == 2);
    CHECK(r.out.find("NothingFound") != std::string::npos);
    const Run j = run("reduce --json --max-degree 1 " + quote("y'' = 6*y^2 + x"));
    CHECK(j.code == 2);
    CHECK(json::parse(j.out)["status"] == "NothingFound");
}

TEST_CASE("timeout from the environment and the flag") {
    const std::string ode = quote("y'' = -y");
    CHECK(json::parse(run("reduce --json --trajectories 0 " + ode, "PS2_TIMEOUT=7").out)["limits"]["timeout_seconds"] ==
          7.0);
    CHECK(json::parse(run("reduce --json --trajectories 0 --timeout 3 " + ode, "PS2_TIMEOUT=7")
                          .out)["limits"]["timeout_seconds"] == 3.0);
}

TEST_CASE("parse errors exit 1 with a position") {
    const Run r = run("reduce " + quote("y'' = (y +"));
    CHECK(r.code == 1);
    CHECK(r.out.find("position") != std::string::npos);
    CHECK(run("solve1 " + quote("y' = y/")).code == 1);
    CHECK(run("reduce " + quote("y'' = sin(x)")).code == 1);
    CHECK(run("frobnicate").code == 1);
}

TEST_CASE("solve1") {
    const Run a = run("solve1 --json " + quote("y' = y/x"));
    REQUIRE(a.code == 0);
    const json j = json::parse(a.out);
    CHECK(j["integrating_factor"]["R"] == "1/(x*y)");
    CHECK(j["checks"]["integrating_factor"] == true);
    CHECK(j["checks"]["symbolic"] == true);
    CHECK(parse_invariant(j["invariant"]["text"].get<std::string>()) == parse_invariant("log(x) - log(y)"));

    const Run b = run("solve1 " + quote("y' = -x/y"));
    CHECK(b.code == 0);
    CHECK(b.out.find("invariant: x^2 + y^2") != std::string::npos);
}

TEST_CASE("verify") {
    const Run good = run("verify --json " + quote("y'' = y'*(3*y'*x + y)/(x*y)") + " " + quote("y'/(x*y^3)"));
    REQUIRE(good.code == 0);
    const json j = json::parse(good.out);
    CHECK(j["checks"]["symbolic"] == true);
    CHECK(j["checks"]["numeric_max_drift"].get<double>() < 1e-6);

    const Run bad = run("verify " + quote("y'' = -y") + " y");
    CHECK(bad.code == 2);
    CHECK(bad.out.find("symbolic:  false") != std::string::npos);

    const Run only = run("verify --json --trajectories 0 " + quote("y'' = -y") + " " + quote("y^2 + y'^2"));
    CHECK(only.code == 0);
    CHECK(json::parse(only.out)["checks"]["numeric_max_drift"].is_null());
}

TEST_CASE("darboux") {
    const Run r = run("darboux --json --degree 1 " + quote("y' = y/x"));
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["darboux"].size() == 2);
}

TEST_CASE("corpus runner") {
    const Run worked = run(std::string("corpus ") + PS2_CORPUS);
    CHECK(worked.code == 0);
    CHECK(worked.out.find("3/3 passed") != std::string::npos);

    const Run empty = run("corpus " + temp_file("empty.txt", "# nothing here\n\n"));
    CHECK(empty.code == 0);
    CHECK(empty.out.find("0/0 passed") != std::string::npos);

    const std::string mixed = temp_file("mixed.txt",
                                        "y'' = -y ;; expect: y^2 + y'^2\n"
                                        "y'' = 6*y^2 + x ;; expect: y'\n");
    const Run m = run("corpus --max-degree 1 --json " + mixed);
    CHECK(m.code == 0);
    const json j = json::parse(m.out);
    CHECK(j["passed"] == 1);
    CHECK(j["nothing_found"] == 1);
    CHECK(j["entries"][1]["status"] == "NothingFound");

    const std::string wrong = temp_file("wrong.txt", "y'' = -y ;; expect: y\n");
    CHECK(run("corpus " + wrong).code == 1);
    CHECK(run("corpus /nonexistent/corpus.txt").code == 1);
}
