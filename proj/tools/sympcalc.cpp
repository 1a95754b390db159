// Command-line front end: verification suites, Lie-algebra cohomology, and
// chart linting, with deterministic JSON reports.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sympcalc/cli.hpp"

namespace {

int emit(const std::string& report_json, const std::string& out_path,
         const std::string& format, int code) {
    std::string payload = format == "text"
                              ? sympcalc::render_text(report_json)
                              : report_json;
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write '" << out_path << "'\n";
            return 2;
        }
        out << payload;
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification of symplectic differential complexes"};
    app.require_subcommand(1);

    sympcalc::RunConfig cfg;
    std::string out_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--chart", cfg.chart,
                        "builtin:flat, builtin:fubini_study, or a chart file");
        sub->add_option("--n", cfg.n, "half-dimension of the chart");
        sub->add_option("--rep", cfg.rep, "bundle or representation descriptor");
        sub->add_option("--deg-bound", cfg.deg_bound,
                        "polynomial degree bound for test sections");
        sub->add_option("--mode", cfg.mode,
                        "section mode for 'verify rs': poly or jet");
        sub->add_option("--seed", cfg.seed, "seed for randomized structures");
        sub->add_option("--trials", cfg.trials, "trials for randomized checks");
        sub->add_option("--out", out_path, "write the report to a file");
        sub->add_option("--format", cfg.format, "json or text");
    };

    std::string verify_target;
    CLI::App* verify = app.add_subcommand("verify", "run an identity suite");
    verify->add_option("target", verify_target,
                       "rs | tractor | lemma1 | lemma3 | kahler | curvature | all")
        ->required();
    add_common(verify);

    CLI::App* coh = app.add_subcommand("cohomology",
                                       "compare the two cohomology computations");
    add_common(coh);

    std::string lint_spec;
    std::string emit_path;
    CLI::App* lint = app.add_subcommand("chart-lint", "validate a chart file");
    lint->add_option("chart_file", lint_spec, "chart file or builtin spec");
    lint->add_option("--emit", emit_path,
                     "serialize a builtin chart here and lint the file");
    add_common(lint);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (cfg.deg_bound < 1 || cfg.n < 1) {
        std::cerr << "invalid configuration: need n >= 1 and deg-bound >= 1\n";
        return 2;
    }

    std::string report;
    int code = 2;
    if (verify->parsed()) {
        code = sympcalc::cmd_verify(verify_target, cfg, report);
    } else if (coh->parsed()) {
        code = sympcalc::cmd_cohomology(cfg, report);
    } else if (lint->parsed()) {
        if (lint_spec.empty()) lint_spec = cfg.chart;
        code = sympcalc::cmd_chart_lint(lint_spec, cfg, emit_path, report);
    }
    return emit(report, out_path, cfg.format, code);
}
