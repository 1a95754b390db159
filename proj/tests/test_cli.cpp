#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "sympcalc/chart_io.hpp"
#include "sympcalc/cli.hpp"

using namespace sympcalc;

TEST_CASE("verify rs: flat chart passes, witnesses appear on failure") {
    RunConfig cfg;
    cfg.chart = "builtin:flat";
    cfg.n = 2;
    std::string rep;
    CHECK(cmd_verify("rs", cfg, rep) == 0);
    CHECK(rep.find("\"pass\": true") != std::string::npos);

    cfg.rep = "random:2";
    cfg.seed = 5;
    cfg.n = 1;
    CHECK(cmd_verify("rs", cfg, rep) == 1);
    CHECK(rep.find("witness_component") != std::string::npos);
    CHECK(rep.find("nonzero") != std::string::npos);
}

TEST_CASE("verify: config errors exit 2") {
    RunConfig cfg;
    cfg.chart = "builtin:flat";
    cfg.n = 9;  // unsupported
    std::string rep;
    CHECK(cmd_verify("rs", cfg, rep) == 2);
    cfg.n = 1;
    CHECK(cmd_verify("nonsense-target", cfg, rep) == 2);
    cfg.chart = "/nonexistent/chart.json";
    CHECK(cmd_verify("rs", cfg, rep) == 2);
}

TEST_CASE("verify kahler and lemma3 on builtin charts") {
    RunConfig cfg;
    cfg.chart = "builtin:fubini_study";
    cfg.n = 1;
    std::string rep;
    CHECK(cmd_verify("kahler", cfg, rep) == 0);
    CHECK(cmd_verify("lemma3", cfg, rep) == 0);
    CHECK(cmd_verify("tractor", cfg, rep) == 0);
}

TEST_CASE("cohomology command: dims and exit codes") {
    RunConfig cfg;
    cfg.rep = "trivial";
    cfg.n = 1;
    std::string rep;
    CHECK(cmd_cohomology(cfg, rep) == 0);
    CHECK(rep.find("\"ce_dims\": [\n    1,\n    2,\n    2,\n    1\n  ]") !=
          std::string::npos);

    cfg.rep = "standard";
    cfg.n = 2;
    CHECK(cmd_cohomology(cfg, rep) == 0);
    CHECK(rep.find("\"match\": true") != std::string::npos);

    cfg.rep = "sym:2(standard)";
    cfg.n = 1;
    CHECK(cmd_cohomology(cfg, rep) == 0);

    cfg.rep = "not_a_rep";
    CHECK(cmd_cohomology(cfg, rep) == 2);
}

TEST_CASE("chart-lint: round trip, invariant failure, parse failure") {
    RunConfig cfg;
    cfg.n = 1;
    std::string rep;
    // serialize builtin flat, lint the file
    CHECK(cmd_chart_lint("builtin:flat", cfg, "/tmp/sympcalc_flat1.json", rep) == 0);
    CHECK(rep.find("\"valid\": true") != std::string::npos);
    // re-lint the written file directly
    CHECK(cmd_chart_lint("/tmp/sympcalc_flat1.json", cfg, "", rep) == 0);

    // Fubini-Study file round trip reports V = 0
    CHECK(cmd_chart_lint("builtin:fubini_study", cfg, "/tmp/sympcalc_fs1.json",
                         rep) == 0);
    CHECK(rep.find("\"V_zero\": true") != std::string::npos);

    {
        std::ofstream bad("/tmp/sympcalc_bad.json");
        bad << R"({"name":"bad","n":1,"coords":["x1","y1"],
                   "J":[["0","1"],["-1","0"]],
                   "connection":{"christoffel":[
                     {"upper":0,"lower1":0,"lower2":1,"expr":"x1"}]},
                   "base_point":["0","0"]})";
    }
    CHECK(cmd_chart_lint("/tmp/sympcalc_bad.json", cfg, "", rep) == 1);
    CHECK(rep.find("torsion") != std::string::npos);

    {
        std::ofstream bad("/tmp/sympcalc_garbage.json");
        bad << "{not json";
    }
    CHECK(cmd_chart_lint("/tmp/sympcalc_garbage.json", cfg, "", rep) == 2);
    CHECK(cmd_chart_lint("/tmp/definitely_missing.json", cfg, "", rep) == 2);
}

TEST_CASE("reports are deterministic for a fixed seed") {
    RunConfig cfg;
    cfg.chart = "builtin:flat";
    cfg.n = 1;
    cfg.seed = 3;
    std::string rep1, rep2;
    CHECK(cmd_verify("all", cfg, rep1) == 0);
    CHECK(cmd_verify("all", cfg, rep2) == 0);
    CHECK(rep1 == rep2);
    // text rendering is derived from the JSON
    std::string text = render_text(rep1);
    CHECK(text.find("result: pass") != std::string::npos);
}

TEST_CASE("chart files accept rational functions and christoffel data") {
    {
        std::ofstream f("/tmp/sympcalc_custom.json");
        f << R"({"name":"custom","n":1,"coords":["x1","y1"],
                 "J":[["0","1"],["-1","0"]],
                 "connection":{"christoffel":[
                    {"upper":0,"lower1":0,"lower2":0,"expr":"2*y1"},
                    {"upper":1,"lower1":0,"lower2":0,"expr":"0"},
                    {"upper":0,"lower1":0,"lower2":1,"expr":"x1"},
                    {"upper":0,"lower1":1,"lower2":0,"expr":"x1"},
                    {"upper":1,"lower1":0,"lower2":1,"expr":"-2*y1"},
                    {"upper":1,"lower1":1,"lower2":0,"expr":"-2*y1"},
                    {"upper":1,"lower1":1,"lower2":1,"expr":"-x1"}]},
                 "base_point":["0","0"]})";
    }
    // Gamma^c_ab = J^cd Xi_dab for symmetric Xi: here Xi built by hand so
    // that nabla J = 0 holds; the loader validates it.
    RunConfig cfg;
    cfg.n = 1;
    std::string rep;
    int rc = cmd_chart_lint("/tmp/sympcalc_custom.json", cfg, "", rep);
    INFO(rep);
    CHECK(rc == 0);
}
