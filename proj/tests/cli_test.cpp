#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "cli.hpp"
#include "qepi/json_io.hpp"

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "qepi");
    std::ostringstream out, err;
    const int code = qepi::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> csv_rows(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& body) : path(name) { std::ofstream(path) << body; }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("format_number") {
    using qepi::cli::format_number;
    CHECK(format_number(1.0) == "1.0");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(-0.0) == "0.0");
    CHECK(format_number(0.1 + 0.2) == "0.3");
    CHECK(format_number(1e-20) == "1e-20");
}

TEST_CASE("prob and distance") {
    const Result p = run({"prob", "--state", R"({"ket":[0,1]})", "--perspective", "I"});
    CHECK(p.code == 0);
    CHECK(p.out == "1.0\n");
    CHECK(run({"prob", "--state", R"({"ket":[0,1]})", "--perspective", "hadamard"}).out == "0.5\n");
    const Result d = run({"distance", "--t1", "I", "--t2", "hadamard"});
    CHECK(d.code == 0);
    CHECK(d.out == "0.5\n");
    CHECK(run({"distance", "--t1", "I", "--t2", "x"}).out == "1.0\n");
}

TEST_CASE("state from a file") {
    const TempFile f("qepi_cli_test_state.json", R"({"ket": [0.6, 0.8]})");
    const Result p = run({"prob", "--state", "@" + f.path});
    CHECK(p.code == 0);
    CHECK(std::abs(std::stod(p.out) - 0.64) < 1e-12);
}

TEST_CASE("gate and channel") {
    const Result g = run({"gate", "not:1", "--state", R"({"ket":[0,1]})"});
    REQUIRE(g.code == 0);
    const auto j = qepi::json::parse(g.out);
    CHECK(j.at("prob").get<double>() == doctest::Approx(0.0));
    const Result c = run({"channel", "bitflip:0.6", "--state", R"({"ket":[0,1]})"});
    REQUIRE(c.code == 0);
    CHECK(qepi::json::parse(c.out).at("prob").get<double>() == doctest::Approx(0.64));
    const Result m = run({"channel", "ad:0.5,1", "--map"});
    REQUIRE(m.code == 0);
    const auto mj = qepi::json::parse(m.out);
    CHECK(mj.at("linear")[2][2].get<double>() == doctest::Approx(0.5));
    CHECK(mj.at("offset")[2].get<double>() == doctest::Approx(0.5));
    CHECK(run({"channel", "ad:0.5,1"}).code == 1);
}

TEST_CASE("bloch-traj") {
    const Result r = run({"bloch-traj", "ad:0.5,1", "--start", "0,0,-1", "--steps", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("step,x,y,z,prob\n", 0) == 0);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 4);
    const double z[] = {-1.0, 0.0, 0.5, 0.75};
    for (int k = 0; k < 4; ++k) {
        CHECK(rows[k][0] == k);
        CHECK(std::abs(rows[k][3] - z[k]) < 1e-9);
        CHECK(std::abs(rows[k][4] - (1 - rows[k][3]) / 2) < 1e-9);
    }

    const auto dep = csv_rows(run({"bloch-traj", "depolarizing:1", "--start", "0.3,-0.4,0.5", "--steps", "4"}).out);
    REQUIRE(dep.size() == 5);
    CHECK(dep[0][1] == doctest::Approx(0.3));
    for (std::size_t k = 1; k < dep.size(); ++k) {
        CHECK(std::abs(dep[k][1]) + std::abs(dep[k][2]) + std::abs(dep[k][3]) < 1e-12);
    }

    const auto id = csv_rows(run({"bloch-traj", "identity", "--start", "0.1,0.2,0.3", "--steps", "5"}).out);
    REQUIRE(id.size() == 6);
    for (const auto& row : id) {
        CHECK(std::abs(row[1] - 0.1) + std::abs(row[2] - 0.2) + std::abs(row[3] - 0.3) < 1e-12);
    }

    const auto tw = csv_rows(run({"bloch-traj", "ad:0.3,0.6", "--start", "0.2,0.1,-0.4", "--perspective", "hadamard"}).out);
    for (const auto& row : tw) CHECK(std::abs(row[4] - (1 - row[3]) / 2) < 1e-9);

    const Result over = run({"bloch-traj", "identity", "--start", "1,1,0"});
    CHECK(over.code == 1);
    CHECK(over.err.rfind("error:", 0) == 0);
    CHECK(run({"bloch-traj", "identity", "--steps", "0"}).code == 64);
}

TEST_CASE("eval and consequence with a config") {
    const TempFile f("qepi_cli_test_config.json", R"({
        "model": {"atoms": {"p": {"ket": [0, 1]}},
                  "structure": {"times": ["t1"],
                                "agents": {"alice": {"ops": {"*": {"K": {"kind": "kbf", "alpha": 0.6,
                                                                          "fallback": "t_falsity"}}}}}}}
    })");
    const Result e = run({"--config", f.path, "eval", "K[alice@t1] p"});
    REQUIRE(e.code == 0);
    CHECK(e.out == "0.64 false\n");
    CHECK(run({"--config", f.path, "eval", "p"}).out == "1.0 true\n");
    const Result c = run({"--config", f.path, "consequence", "K[alice@t1] p", "p", "--trials", "200"});
    CHECK(c.code == 0);
    CHECK(c.out.rfind("no counterexample in 200 trials", 0) == 0);

    const Result bad = run({"--config", f.path, "eval", "p and"});
    CHECK(bad.code == 1);
    CHECK(bad.err.rfind("error:", 0) == 0);
    CHECK(bad.err.find("offset 5") != std::string::npos);
    CHECK(run({"eval", "p"}).code == 1);
}

TEST_CASE("check output is reproducible") {
    const Result a = run({"check", "--suite", "strong", "--seed", "7", "--samples", "200"});
    const Result b = run({"check", "--suite", "strong", "--seed", "7", "--samples", "200"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("FAIL") == std::string::npos);
    CHECK(a.out.find("all 12 claims passed (seed 7, samples 200)") != std::string::npos);
    const Result unknown = run({"check", "--suite", "nope"});
    CHECK(unknown.code == 1);
    CHECK(unknown.err.rfind("error:", 0) == 0);
}

TEST_CASE("error paths") {
    const Result none = run({});
    CHECK(none.code == 64);
    CHECK(none.err.rfind("error:", 0) == 0);
    CHECK(run({"frobnicate"}).code == 64);
    CHECK(run({"prob"}).code == 64);
    const Result bad_state = run({"prob", "--state", R"({"ket":[1,1]})"});
    CHECK(bad_state.code == 1);
    CHECK(bad_state.err.rfind("error:", 0) == 0);
    const Result bad_json = run({"prob", "--state", "{"});
    CHECK(bad_json.code == 1);
    CHECK(bad_json.err.rfind("error:", 0) == 0);
    CHECK(run({"distance", "--t1", "I", "--t2", "bell"}).code == 1);
    CHECK(run({"--config", "no/such/file.json", "distance", "--t1", "I", "--t2", "I"}).code == 1);
    CHECK(run({"gate", "cnot:1", "--state", R"({"ket":[0,1]})"}).code == 1);
    for (const auto& args : std::vector<std::vector<std::string>>{{"bloch-traj", "warp:1"}, {"channel", "x", "--map"}}) {
        const Result r = run(args);
        CHECK(r.code == 1);
        CHECK(r.err.rfind("error:", 0) == 0);
        CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("installed binary") {
    FILE* p = popen(QEPI_BINARY " distance --t1 I --t2 hadamard", "r");
    REQUIRE(p);
    char buf[64] = {};
    const std::size_t n = std::fread(buf, 1, sizeof buf - 1, p);
    CHECK(pclose(p) == 0);
    CHECK(std::string(buf, n) == "0.5\n");
    FILE* q = popen(QEPI_BINARY " frobnicate 2>/dev/null", "r");
    REQUIRE(q);
    const int status = pclose(q);
    CHECK(WEXITSTATUS(status) == 64);
}
