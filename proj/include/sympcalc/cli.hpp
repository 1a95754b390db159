// Command front end: resolves charts and bundle descriptors, runs the
// verification suites, and assembles deterministic JSON reports (schema 1).
// The text rendering is always derived from the JSON.

#pragma once

#include <cstdint>
#include <string>

namespace sympcalc {

struct RunConfig {
    std::string chart = "builtin:flat";
    int n = 1;
    std::string rep = "trivial";
    int deg_bound = 2;
    std::string mode = "poly";  // poly | jet
    uint64_t seed = 0;
    int trials = 16;
    std::string format = "json";  // json | text
};

// Exit codes: 0 all checks pass, 1 an identity fails (witness in report),
// 2 configuration or parse problems.
int cmd_verify(const std::string& target, const RunConfig& cfg,
               std::string& report_json);
int cmd_cohomology(const RunConfig& cfg, std::string& report_json);
// When emit_path is nonempty and the chart is builtin, the chart is first
// serialized there and the written file is linted (round trip).
int cmd_chart_lint(const std::string& chart_spec, const RunConfig& cfg,
                   const std::string& emit_path, std::string& report_json);

std::string render_text(const std::string& report_json);

}  // namespace sympcalc
