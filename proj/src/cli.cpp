#include "sympcalc/cli.hpp"

#include <fstream>

#include "json.hpp"
#include "sympcalc/chart_io.hpp"
#include "sympcalc/expr.hpp"
#include "sympcalc/geo_checks.hpp"
#include "sympcalc/heisenberg.hpp"
#include "sympcalc/tractor.hpp"

namespace sympcalc {

using nlohmann::json;

namespace {

json config_json(const RunConfig& cfg) {
    return json{{"chart", cfg.chart},     {"n", cfg.n},
                {"rep", cfg.rep},         {"deg_bound", cfg.deg_bound},
                {"mode", cfg.mode},       {"seed", cfg.seed},
                {"trials", cfg.trials}};
}

json report_items(const CheckReport& rep) {
    json items = json::array();
    for (const auto& i : rep.items) {
        json entry;
        entry["operator_pair"] = i.name;
        if (i.degree >= 0) entry["degree"] = i.degree;
        entry["status"] = i.pass ? "zero" : "nonzero";
        if (!i.pass) entry["witness_component"] = i.witness;
        items.push_back(entry);
    }
    return json{{"suite", rep.suite}, {"items", items}, {"pass", rep.all_pass()}};
}

// Bundle descriptors for the complex suites:
//   trivial | tau | tractor | dual(tractor) | sym:k(tractor)
//   | tensor(tractor,tractor) | random:<rank>
BundleConnection resolve_bundle(const std::string& rep, const FedPtr& fed,
                                uint64_t seed) {
    if (rep.empty() || rep == "trivial") return BundleConnection::trivial(fed);
    if (rep == "tau") return BundleConnection::tau_twisted(fed);
    if (rep == "tractor") return TractorConnection(fed).bundle();
    if (rep == "dual(tractor)")
        return dual_connection(TractorConnection(fed).bundle());
    if (rep.rfind("sym:", 0) == 0) {
        size_t open = rep.find('(');
        if (open == std::string::npos || rep.substr(open) != "(tractor)")
            throw std::invalid_argument("bundle descriptor: expected sym:k(tractor)");
        int k = std::stoi(rep.substr(4, open - 4));
        return sym_power_connection(TractorConnection(fed).bundle(), k);
    }
    if (rep == "tensor(tractor,tractor)") {
        TractorConnection t(fed);
        return tensor_connection(t.bundle(), t.bundle());
    }
    if (rep.rfind("random:", 0) == 0) {
        int rank = std::stoi(rep.substr(7));
        return BundleConnection::random(fed, rank, seed);
    }
    throw std::invalid_argument("unknown bundle descriptor '" + rep + "'");
}

CheckReport run_rs(const BundleConnection& bundle, const RunConfig& cfg) {
    if (cfg.mode == "jet") return verify_rs_complex_jets(bundle);
    if (cfg.mode != "poly")
        throw std::invalid_argument("unknown section mode '" + cfg.mode + "'");
    return verify_rs_complex(bundle, cfg.deg_bound);
}

json lint_summary(const ChartBundle& cb) {
    CurvatureDecomp dec = decompose_curvature(cb.fed);
    const int d = cb.fed.dim();
    json phi = json::array();
    for (int a = 0; a < d; ++a) {
        json row = json::array();
        for (int b = 0; b < d; ++b) row.push_back(dec.Phi.at({a, b}).to_string());
        phi.push_back(row);
    }
    json s = json::array();
    for (int a = 0; a < d; ++a) s.push_back(dec.S.at({a}).to_string());
    return json{{"V_zero", dec.V.is_zero()},
                {"Phi", phi},
                {"S", s},
                {"kahler", cb.kahler.has_value()}};
}

}  // namespace

int cmd_verify(const std::string& target, const RunConfig& cfg,
               std::string& report_json) {
    json rep;
    rep["schema"] = 1;
    rep["command"] = "verify";
    rep["target"] = target;
    rep["config"] = config_json(cfg);
    json suites = json::array();
    bool pass = true;

    try {
        auto add = [&](const CheckReport& r) {
            suites.push_back(report_items(r));
            pass = pass && r.all_pass();
        };
        if (target == "rs" || target == "lemma1") {
            ChartBundle cb = resolve_chart(cfg.chart, cfg.n);
            auto fed = std::make_shared<FedosovStructure>(std::move(cb.fed));
            BundleConnection bundle = resolve_bundle(cfg.rep, fed, cfg.seed);
            add(target == "rs" ? run_rs(bundle, cfg)
                               : lemma1_complex(bundle, cfg.deg_bound));
        } else if (target == "tractor") {
            ChartBundle cb = resolve_chart(cfg.chart, cfg.n);
            auto fed = std::make_shared<FedosovStructure>(std::move(cb.fed));
            TractorConnection tc(fed);
            add(tractor_curvature_check(tc));
            add(check_flatness_equivalence(tc));
        } else if (target == "lemma3") {
            ChartBundle cb = resolve_chart(cfg.chart, cfg.n);
            CurvatureDecomp dec = decompose_curvature(cb.fed);
            add(check_decomposition(cb.fed, dec));
            add(check_lemma3(cb.fed, dec));
        } else if (target == "kahler") {
            ChartBundle cb = resolve_chart(cfg.chart, cfg.n);
            if (!cb.kahler)
                throw std::invalid_argument(
                    "kahler suite needs a metric chart");
            add(check_kahler(*cb.kahler));
        } else if (target == "curvature") {
            ChartBundle cb = resolve_chart(cfg.chart, cfg.n);
            add(check_curvature(cb.fed, cfg.seed, std::min(cfg.trials, 4)));
        } else if (target == "all") {
            // Fixed battery over the built-in charts plus seeded structures.
            for (int n = 1; n <= 2; ++n) {
                auto fed = std::make_shared<FedosovStructure>(
                    builtin_chart("flat", n).fed);
                add(verify_rs_complex(BundleConnection::trivial(fed), 1));
                add(verify_rs_complex(BundleConnection::tau_twisted(fed), 1));
                add(lemma1_complex(BundleConnection::trivial(fed), 1));
            }
            {
                ChartBundle fs = builtin_chart("fubini_study", 1);
                auto fed = std::make_shared<FedosovStructure>(fs.fed);
                add(verify_rs_complex(BundleConnection::trivial(fed), 1));
                TractorConnection tc(fed);
                add(verify_rs_complex_jets(tc.bundle()));
                add(lemma1_complex(tc.bundle(), 1));
                add(tractor_curvature_check(tc));
                add(check_flatness_equivalence(tc));
                CurvatureDecomp dec = decompose_curvature(*fed);
                add(check_decomposition(*fed, dec));
                add(check_lemma3(*fed, dec));
                add(check_kahler(*fs.kahler));
            }
            {
                auto fed = std::make_shared<FedosovStructure>(
                    random_fedosov(2, cfg.seed + 1));
                add(check_curvature(*fed, cfg.seed, 1));
                CurvatureDecomp dec = decompose_curvature(*fed);
                add(check_decomposition(*fed, dec));
                add(check_lemma3(*fed, dec));
                TractorConnection tc(fed);
                add(tractor_curvature_check(tc));
                add(check_flatness_equivalence(tc));
            }
            add(check_kahler(random_kahler(2, cfg.seed + 2)));
        } else {
            throw std::invalid_argument("unknown verify target '" + target + "'");
        }
    } catch (const std::invalid_argument& e) {
        rep["error"] = e.what();
        report_json = rep.dump(2) + "\n";
        return 2;
    } catch (const std::exception& e) {
        rep["error"] = e.what();
        report_json = rep.dump(2) + "\n";
        return 2;
    }
    rep["suites"] = suites;
    rep["pass"] = pass;
    report_json = rep.dump(2) + "\n";
    return pass ? 0 : 1;
}

int cmd_cohomology(const RunConfig& cfg, std::string& report_json) {
    json rep;
    rep["schema"] = 1;
    rep["command"] = "cohomology";
    rep["config"] = config_json(cfg);
    try {
        HRep hrep = parse_rep(cfg.rep, cfg.n);
        // Highest-weight comparison only for representations irreducible by
        // construction: trivial, standard, and symmetric powers of standard.
        std::optional<DynkinLabel> labels;
        if (cfg.rep == "trivial") labels = DynkinLabel(cfg.n + 1, 0);
        if (cfg.rep == "standard") {
            labels = DynkinLabel(cfg.n + 1, 0);
            (*labels)[0] = 1;
        }
        if (cfg.rep.rfind("sym:", 0) == 0 &&
            cfg.rep.substr(cfg.rep.find('(')) == "(standard)") {
            int k = std::stoi(cfg.rep.substr(4, cfg.rep.find('(') - 4));
            labels = DynkinLabel(cfg.n + 1, 0);
            (*labels)[0] = k;
        }
        CohomologyResult res = cohomology_suite(hrep, labels);
        rep["rep"] = res.rep;
        rep["n"] = res.n;
        rep["ce_dims"] = res.ce_dims;
        rep["bgg_dims"] = res.bgg_dims;
        json kl = json::array();
        for (const auto& l : res.kostant_labels) kl.push_back(l);
        rep["kostant_labels"] = kl;
        rep["kostant_dims"] = res.kostant_dims;
        rep["match"] = res.match;
        report_json = rep.dump(2) + "\n";
        return res.match ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        rep["error"] = e.what();
        report_json = rep.dump(2) + "\n";
        return 2;
    } catch (const std::exception& e) {
        rep["error"] = e.what();
        report_json = rep.dump(2) + "\n";
        return 1;
    }
}

int cmd_chart_lint(const std::string& chart_spec, const RunConfig& cfg,
                   const std::string& emit_path, std::string& report_json) {
    json rep;
    rep["schema"] = 1;
    rep["command"] = "chart-lint";
    rep["chart"] = chart_spec;
    std::string effective = chart_spec;
    try {
        if (!emit_path.empty()) {
            ChartBundle cb = resolve_chart(chart_spec, cfg.n);
            std::ofstream out(emit_path);
            if (!out)
                throw std::invalid_argument("cannot write '" + emit_path + "'");
            out << chart_to_json(cb);
            out.close();
            effective = emit_path;
            rep["emitted"] = emit_path;
        }
        ChartBundle cb = resolve_chart(effective, cfg.n);
        rep["name"] = cb.fed.chart.name;
        rep["n"] = cb.fed.n();
        rep["valid"] = true;
        rep["summary"] = lint_summary(cb);
        report_json = rep.dump(2) + "\n";
        return 0;
    } catch (const ParseError& e) {
        rep["valid"] = false;
        rep["error"] = e.what();
        report_json = rep.dump(2) + "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        rep["valid"] = false;
        rep["error"] = e.what();
        report_json = rep.dump(2) + "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        // missing files and config problems are usage errors
        std::string what = e.what();
        rep["valid"] = false;
        rep["error"] = what;
        report_json = rep.dump(2) + "\n";
        bool usage = what.find("cannot open") != std::string::npos ||
                     what.find("unknown builtin") != std::string::npos;
        return usage ? 2 : 1;
    } catch (const std::exception& e) {
        rep["valid"] = false;
        rep["error"] = e.what();
        report_json = rep.dump(2) + "\n";
        return 1;
    }
}

std::string render_text(const std::string& report_json) {
    json rep = json::parse(report_json);
    std::string out;
    out += "command: " + rep.value("command", std::string("?")) + "\n";
    if (rep.contains("error")) {
        out += "error: " + rep["error"].get<std::string>() + "\n";
        return out;
    }
    if (rep.contains("suites")) {
        for (const auto& s : rep["suites"]) {
            out += "suite " + s["suite"].get<std::string>() + ": " +
                   (s["pass"].get<bool>() ? "pass" : "FAIL") + "\n";
            for (const auto& i : s["items"]) {
                out += "  [" + i["status"].get<std::string>() + "] " +
                       i["operator_pair"].get<std::string>();
                if (i.contains("witness_component"))
                    out += "  witness: " + i["witness_component"].get<std::string>();
                out += "\n";
            }
        }
        out += std::string("result: ") +
               (rep["pass"].get<bool>() ? "pass" : "FAIL") + "\n";
    }
    if (rep.contains("ce_dims")) {
        auto dims = [](const json& a) {
            std::string s = "(";
            for (size_t i = 0; i < a.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(a[i].get<long long>());
            }
            return s + ")";
        };
        out += "rep: " + rep["rep"].get<std::string>() + "\n";
        out += "ce_dims:  " + dims(rep["ce_dims"]) + "\n";
        out += "bgg_dims: " + dims(rep["bgg_dims"]) + "\n";
        if (!rep["kostant_dims"].empty())
            out += "kostant:  " + dims(rep["kostant_dims"]) + "\n";
        out += std::string("match: ") + (rep["match"].get<bool>() ? "yes" : "NO") +
               "\n";
    }
    if (rep.contains("summary")) {
        out += "chart " + rep["name"].get<std::string>() + " valid\n";
        out += std::string("V = 0: ") +
               (rep["summary"]["V_zero"].get<bool>() ? "yes" : "no") + "\n";
    }
    return out;
}

}  // namespace sympcalc
