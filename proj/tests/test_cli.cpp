#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "support/gen.hpp"
#include "tropkit/io.hpp"

#ifndef TROPKIT_BIN
#define TROPKIT_BIN "tropkit"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string output; // stdout + stderr
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(TROPKIT_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = std::string("cli_") + name;
    std::ofstream f(path);
    REQUIRE(f.good());
    f << content;
    return path;
}

const char* kLine = R"({
  "format_version": "1", "ambient_dim": 2,
  "cells": [
    {"vertices": [["0","0"]], "rays": [["-1","0"]], "weight": 1},
    {"vertices": [["0","0"]], "rays": [["0","-1"]], "weight": 1},
    {"vertices": [["0","0"]], "rays": [["1","1"]], "weight": 1}
  ]})";

const char* kPlane = R"({
  "format_version": "1", "ambient_dim": 2,
  "cells": [{"vertices": [["0","0"]], "lineality": [["1","0"],["0","1"]], "weight": 1}]})";

const char* kMaxXY0 = R"({"format_version":"1","kind":"tropical_polynomial","mode":"max",
  "terms":[{"m":["1","0"],"c":"0"},{"m":["0","1"],"c":"0"},{"m":["0","0"],"c":"0"}]})";

const char* kSlopesNeg = R"({"format_version":"1","kind":"piecewise","pieces":[
  {"cell":0,"linear":["1","0"],"constant":"0"},
  {"cell":1,"linear":["0","0"],"constant":"0"},
  {"cell":2,"linear":["0","0"],"constant":"0"}]})";

} // namespace

TEST_CASE("cli: balance on the tropical line") {
    const std::string line = write_temp("L.cycle.json", kLine);
    const RunResult r = run("balance " + line);
    CHECK(r.exit_code == 0);
    CHECK(r.output == "balanced: 1 codim-1 face checked\n");
}

TEST_CASE("cli: psh-check reports the negative corner weight") {
    const std::string line = write_temp("L.cycle.json", kLine);
    const std::string fn = write_temp("slopes-neg.fn.json", kSlopesNeg);
    const RunResult r = run("psh-check " + line + " " + fn);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("weight -1") != std::string::npos);
    CHECK(r.output.find("(0, 0)") != std::string::npos);
}

TEST_CASE("cli: corner-locus writes a document that reloads as the tropical line") {
    const std::string plane = write_temp("plane.cycle.json", kPlane);
    const std::string fn = write_temp("maxxy0.fn.json", kMaxXY0);
    const RunResult r = run("corner-locus " + plane + " " + fn + " --out cli_out.cycle.json");
    CHECK(r.exit_code == 0);
    std::ifstream in("cli_out.cycle.json");
    REQUIRE(in.good());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const tropkit::LoadedCycle lc = tropkit::load_cycle_document(content, "out");
    CHECK(tropkit::cycles_equal_weighted(lc.cycle, tropgen::tropical_line()));
}

TEST_CASE("cli: exit codes for usage and violation") {
    const std::string line = write_temp("L.cycle.json", kLine);
    CHECK(run("balance missing-file.json").exit_code == 2);
    CHECK(run("nonsense").exit_code != 0);
    // Crossing segments: intersection axiom violation is exit 1.
    const std::string crossing = write_temp("cross.cycle.json", R"({
      "format_version": "1", "ambient_dim": 2,
      "cells": [
        {"vertices": [["0","0"],["2","0"]], "weight": 1},
        {"vertices": [["1","-1"],["1","1"]], "weight": 1}
      ]})");
    const RunResult r = run("validate " + crossing);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("cells 0 and 1") != std::string::npos);
    // Unbalanced cycle: balance exits 1 with the excess vector.
    const std::string bad = write_temp("bad.cycle.json", R"({
      "format_version": "1", "ambient_dim": 2,
      "cells": [
        {"vertices": [["0","0"]], "rays": [["1","0"]], "weight": 1},
        {"vertices": [["0","0"]], "rays": [["0","1"]], "weight": 1}
      ]})");
    const RunResult rb = run("balance " + bad);
    CHECK(rb.exit_code == 1);
    CHECK(rb.output.find("excess (1, 1)") != std::string::npos);
}

TEST_CASE("cli: slice and star compose through files") {
    const std::string plane = write_temp("plane.cycle.json", kPlane);
    const RunResult r = run("slice " + plane + " --normal 1,0 --offset 0 --out cli_sliced.json");
    CHECK(r.exit_code == 0);
    const RunResult r2 = run("balance cli_sliced.json");
    CHECK(r2.exit_code == 0);
    const RunResult r3 = run("star cli_sliced.json --point 0,3");
    CHECK(r3.exit_code == 0);
    const RunResult r4 = run("star cli_sliced.json --point 1,0");
    CHECK(r4.exit_code == 1);
}

TEST_CASE("cli: non-generic slice reports offenders with exit 1") {
    const std::string line = write_temp("L.cycle.json", kLine);
    const RunResult r = run("slice " + line + " --normal 1,-1 --offset 0");
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("not generic") != std::string::npos);
}

TEST_CASE("cli: seeded reports are byte-identical") {
    const std::string line = write_temp("L.cycle.json", kLine);
    const std::string cmd = "sample-hyperplane " + line + " --through 0,0,-2,1 --seed 11 --json";
    const RunResult a = run(cmd);
    const RunResult b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);

    const std::string fn = write_temp("zero.fn.json",
        R"({"format_version":"1","kind":"tropical_polynomial","mode":"max",
            "terms":[{"m":["0","0"],"c":"0"}]})");
    const std::string tcmd = "trace " + line + " " + fn + " --seed 3 --json";
    const RunResult t1 = run(tcmd);
    const RunResult t2 = run(tcmd);
    CHECK(t1.exit_code == 0);
    CHECK(t1.output == t2.output);
    CHECK(t1.output.find("\"status\": \"completed\"") != std::string::npos);
}

TEST_CASE("cli: max-principle example verdicts") {
    const std::string line = write_temp("L.cycle.json", kLine);
    const std::string zero = write_temp("zero.fn.json",
        R"({"format_version":"1","kind":"tropical_polynomial","mode":"max",
            "terms":[{"m":["0","0"],"c":"0"}]})");
    const RunResult r = run("max-principle " + line + " " + zero + " --point 0,0");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("locally constant") != std::string::npos);

    const std::string neg = write_temp("slopes-neg.fn.json", kSlopesNeg);
    const RunResult r2 = run("max-principle " + line + " " + neg + " --point 0,0");
    CHECK(r2.exit_code == 1);
    CHECK(r2.output.find("not psh") != std::string::npos);
}

TEST_CASE("cli: TROPKIT_MAX_DIM lowers the guard") {
    const std::string line = write_temp("L.cycle.json", kLine);
    const RunResult r = run("validate " + line); // baseline fine
    CHECK(r.exit_code == 0);
    const std::string cmd = std::string("TROPKIT_MAX_DIM=1 ") + TROPKIT_BIN + " validate " + line + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 2);
    CHECK(out.find("guard") != std::string::npos);
}
