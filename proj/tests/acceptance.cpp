// Acceptance suite: one line per criterion, exact verdicts only.
//
// Usage: acceptance [path-to-cli-binary]
// The binary path is used by the byte-determinism criterion; when absent the
// comparison runs at the library level only.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sympcalc/chart_io.hpp"
#include "sympcalc/cli.hpp"
#include "sympcalc/geo_checks.hpp"
#include "sympcalc/heisenberg.hpp"
#include "sympcalc/tractor.hpp"

using namespace sympcalc;

namespace {

int failures = 0;

void verdict(int criterion, bool pass, const std::string& what,
             const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s\n", pass ? "PASS" : "FAIL", criterion,
                what.c_str(), detail.empty() ? "" : ("  -- " + detail).c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

bool all_pass(const CheckReport& rep, std::string& why) {
    for (const auto& i : rep.items)
        if (!i.pass) {
            why = rep.suite + ": " + i.name +
                  (i.witness.empty() ? "" : " [" + i.witness + "]");
            return false;
        }
    return true;
}

FedPtr fed_of(const std::string& name, int n) {
    return std::make_shared<FedosovStructure>(builtin_chart(name, n).fed);
}

}  // namespace

// 1. Uncoupled complex on flat and Fubini-Study charts (n = 1, 2) and three
//    seeded random Fedosov structures: every consecutive composition is
//    exactly zero on degree <= 2 polynomial sections.
static void criterion1() {
    std::string why;
    bool ok = true;
    for (int n = 1; n <= 2 && ok; ++n) {
        ok = all_pass(verify_rs_complex(
                          BundleConnection::trivial(fed_of("flat", n)), 2),
                      why);
        if (ok)
            ok = all_pass(
                verify_rs_complex(
                    BundleConnection::trivial(fed_of("fubini_study", n)), 2),
                why);
    }
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
        if (!ok) break;
        auto fed = std::make_shared<FedosovStructure>(random_fedosov(2, seed));
        ok = all_pass(verify_rs_complex(BundleConnection::trivial(fed), 2), why);
    }
    verdict(1, ok, "uncoupled complex compositions vanish on degree-2 sections",
            why);
}

// 2. Coupled complex: projective-space tractors (n = 1, 2) and the rank-1
//    twisted connection pass; a seeded non-flat connection fails with a
//    witness.
static void criterion2() {
    std::string why;
    bool ok = all_pass(
        verify_rs_complex(TractorConnection(fed_of("fubini_study", 1)).bundle(), 2),
        why);
    if (ok)
        ok = all_pass(verify_rs_complex_jets(
                          TractorConnection(fed_of("fubini_study", 2)).bundle()),
                      why);
    for (int n = 1; n <= 2 && ok; ++n)
        ok = all_pass(
            verify_rs_complex(BundleConnection::tau_twisted(fed_of("flat", n)), 2),
            why);
    if (ok) {
        CheckReport bad = verify_rs_complex(
            BundleConnection::random(fed_of("flat", 1), 2, 5), 1);
        bool witnessed = false;
        for (const auto& i : bad.items)
            if (!i.pass && !i.witness.empty()) witnessed = true;
        ok = !bad.all_pass() && witnessed;
        if (!ok) why = "non-flat connection was not rejected with a witness";
    }
    verdict(2, ok, "coupled complex vanishes exactly; non-flat case witnessed",
            why);
}

// 3. Tractor curvature formula, skew form preservation, and the flatness
//    equivalence on flat, Fubini-Study, and random structures.
static void criterion3() {
    std::string why;
    bool ok = true;
    std::vector<FedPtr> feds;
    for (int n = 1; n <= 2; ++n) {
        feds.push_back(fed_of("flat", n));
        feds.push_back(fed_of("fubini_study", n));
    }
    for (uint64_t seed : {1ull, 2ull, 3ull})
        feds.push_back(std::make_shared<FedosovStructure>(random_fedosov(2, seed)));
    for (const auto& fed : feds) {
        if (!ok) break;
        TractorConnection tc(fed);
        ok = all_pass(tractor_curvature_check(tc), why) &&
             all_pass(check_flatness_equivalence(tc), why);
    }
    if (ok) {
        // the three chart classes realize both sides of the equivalence
        bool flat_v = TractorConnection(fed_of("flat", 1)).decomp().V.is_zero();
        bool fs_v =
            TractorConnection(fed_of("fubini_study", 1)).decomp().V.is_zero();
        auto rnd = std::make_shared<FedosovStructure>(random_fedosov(2, 3));
        bool rnd_v = TractorConnection(rnd).decomp().V.is_zero();
        ok = flat_v && fs_v && !rnd_v;
        if (!ok) why = "expected V = 0 on flat and projective, V != 0 random";
    }
    verdict(3, ok, "tractor curvature formula and flatness equivalence exact",
            why);
}

// 4. Contracted-Bianchi and second-order identities for the decomposition
//    tensors on every constructed structure.
static void criterion4() {
    std::string why;
    bool ok = true;
    std::vector<FedPtr> feds;
    for (int n = 1; n <= 2; ++n) {
        feds.push_back(fed_of("flat", n));
        feds.push_back(fed_of("fubini_study", n));
    }
    for (uint64_t seed : {1ull, 2ull, 3ull})
        feds.push_back(std::make_shared<FedosovStructure>(random_fedosov(2, seed)));
    for (const auto& fed : feds) {
        if (!ok) break;
        CurvatureDecomp dec = decompose_curvature(*fed);
        ok = all_pass(check_decomposition(*fed, dec), why) &&
             all_pass(check_lemma3(*fed, dec), why);
    }
    verdict(4, ok, "derived-tensor identities hold exactly", why);
}

// 5. Kaehler suite: projective space collapses to the constant multiple of
//    the metric (constant reported); the mixed-trace identity holds on
//    seeded Kaehler data with a nonzero antisymmetric part.
static void criterion5() {
    std::string why;
    bool ok = true;
    std::string c_report;
    for (int n = 1; n <= 2 && ok; ++n) {
        ChartBundle cb = builtin_chart("fubini_study", n);
        KahlerDecomp kd = kahler_decompose(*cb.kahler);
        CurvatureDecomp cd = decompose_curvature(cb.fed);
        ok = kd.U.is_zero() && kd.Sigma.is_zero() && kd.Xi.is_zero() &&
             cd.V.is_zero();
        if (!ok) {
            why = "projective-space decomposition has a nonzero part";
            break;
        }
        for (int v = 0; v < 2 * n && ok; ++v)
            ok = kd.Lambda.partial(v).is_zero();
        if (!ok) {
            why = "Lambda is not constant";
            break;
        }
        // Phi = c g with constant c; record c (the Lambda value).
        const int d = 2 * n;
        for (int a = 0; a < d && ok; ++a)
            for (int b = 0; b < d && ok; ++b)
                ok = (cd.Phi.at({a, b}) - kd.Lambda * cb.kahler->g.at({a, b}))
                         .is_zero();
        if (!ok) {
            why = "Phi is not a constant multiple of g";
            break;
        }
        c_report += (n == 1 ? "c(n=1)=" : ", c(n=2)=") +
                    kd.Lambda.to_string();
        ok = all_pass(check_kahler(*cb.kahler), why);
    }
    if (ok) {
        ChartBundle flat = builtin_chart("flat", 2);
        KahlerDecomp kd = kahler_decompose(*flat.kahler);
        ok = kd.U.is_zero() && kd.Xi.is_zero() && kd.Sigma.is_zero() &&
             kd.Lambda.is_zero();
        if (!ok) why = "flat chart decomposition not identically zero";
    }
    for (uint64_t seed : {5ull, 6ull}) {
        if (!ok) break;
        KahlerStructure k = random_kahler(2, seed);
        KahlerDecomp kd = kahler_decompose(k);
        if (kd.Sigma.is_zero()) {
            ok = false;
            why = "seeded Kaehler data degenerate (Sigma = 0)";
            break;
        }
        ok = all_pass(check_kahler(k), why);
    }
    verdict(5, ok, "Kaehler suite exact (" + c_report + ")", why);
}

// 6. The two cohomology computations agree degreewise for the rep zoo, with
//    duality.
static void criterion6() {
    std::string why;
    bool ok = true;
    std::vector<std::string> reps{"trivial",         "standard",
                                  "dual(standard)",  "sym:2(standard)",
                                  "ext:2(standard)", "perp_ext:2(standard)"};
    for (int n = 1; n <= 2 && ok; ++n)
        for (const auto& r : reps) {
            CohomologyResult res = cohomology_suite(parse_rep(r, n), std::nullopt);
            if (res.ce_dims != res.bgg_dims) {
                ok = false;
                why = r + " at n=" + std::to_string(n);
                break;
            }
            for (size_t i = 0; i < res.ce_dims.size(); ++i)
                if (res.ce_dims[i] != res.ce_dims[res.ce_dims.size() - 1 - i]) {
                    ok = false;
                    why = "duality fails for " + r;
                    break;
                }
        }
    if (ok) {
        CohomologyResult res = cohomology_suite(standard_rep(3), std::nullopt);
        ok = res.ce_dims == res.bgg_dims;
        if (!ok) why = "standard at n=3";
    }
    verdict(6, ok, "both cohomology computations agree in every degree", why);
}

// 7. Highest-weight cross-check at n=2 for symmetric powers of the standard
//    representation.
static void criterion7() {
    std::string why;
    bool ok = true;
    for (int k = 0; k <= 2 && ok; ++k) {
        HRep rep = k == 0 ? trivial_rep(2)
                          : (k == 1 ? standard_rep(2)
                                    : sym_rep(standard_rep(2), 2));
        DynkinLabel labels{k, 0, 0};
        CohomologyResult res = cohomology_suite(rep, labels);
        ok = res.match && res.ce_dims == res.kostant_dims &&
             res.ce_dims.size() == 6;
        if (!ok) why = "k = " + std::to_string(k);
        if (ok && k == 1)
            ok = res.ce_dims[0] == 1 && res.ce_dims[1] == 10;
        if (!ok && why.empty()) why = "standard dims differ from 1, 10";
    }
    verdict(7, ok, "cohomology equals the predicted dimensions in all degrees",
            why);
}

// 8. The curvature endomorphism: explicit form on projective space,
//    invertibility; nilpotent standard form on the flat chart.
static void criterion8() {
    std::string why;
    bool ok = true;
    for (int n = 1; n <= 2 && ok; ++n) {
        ChartBundle cb = builtin_chart("fubini_study", n);
        auto fed = std::make_shared<FedosovStructure>(cb.fed);
        TractorConnection tc(fed);
        ThetaEndo th = theta_of(tc.bundle());
        const int d = 2 * n;
        const VarsPtr& vars = fed->vars();
        Tensor expect(vars, {d + 2, d + 2});
        expect.at({0, d + 1}) = RatFunc::constant(vars, Rational(1));
        expect.at({d + 1, 0}) = RatFunc::constant(vars, Rational(-1));
        for (int b = 0; b < d; ++b)
            for (int e = 0; e < d; ++e)
                expect.at({1 + b, 1 + e}) = cb.kahler->Jmix.at({b, e});
        if (!(th - expect).is_zero()) {
            ok = false;
            why = "projective Theta differs entrywise at n=" + std::to_string(n);
            break;
        }
        // invertible: Theta^2 = -identity
        Tensor sq(vars, {d + 2, d + 2});
        for (int i = 0; i < d + 2; ++i)
            for (int j = 0; j < d + 2; ++j) {
                RFAccum acc(vars);
                for (int m = 0; m < d + 2; ++m)
                    acc.add_product(th.at({i, m}), th.at({m, j}));
                if (i == j) acc.add(RatFunc::constant(vars, Rational(1)));
                if (!acc.result().is_zero()) {
                    ok = false;
                    why = "Theta^2 + 1 != 0";
                }
            }
    }
    for (int n = 1; n <= 2 && ok; ++n) {
        auto fed = fed_of("flat", n);
        TractorConnection tc(fed);
        ThetaEndo th = theta_of(tc.bundle());
        const int r = 2 * n + 2;
        // equals the nilpotent standard map: rho into sigma only
        HRep st = standard_rep(n);
        for (int i = 0; i < r && ok; ++i)
            for (int j = 0; j < r && ok; ++j) {
                Rational expect = st.theta.at(i, j);
                RatFunc diff =
                    th.at({i, j}) - RatFunc::constant(fed->vars(), expect);
                if (!diff.is_zero()) {
                    ok = false;
                    why = "flat Theta differs from the algebraic theta";
                }
            }
        if (ok) {
            // Theta^3 = 0
            Tensor t2(fed->vars(), {r, r}), t3(fed->vars(), {r, r});
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    RFAccum acc(fed->vars());
                    for (int m = 0; m < r; ++m)
                        acc.add_product(th.at({i, m}), th.at({m, j}));
                    t2.at({i, j}) = acc.result();
                }
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    RFAccum acc(fed->vars());
                    for (int m = 0; m < r; ++m)
                        acc.add_product(t2.at({i, m}), th.at({m, j}));
                    t3.at({i, j}) = acc.result();
                }
            if (!t3.is_zero()) {
                ok = false;
                why = "flat Theta cubed is nonzero";
            }
        }
    }
    verdict(8, ok, "curvature endomorphism matches the explicit maps", why);
}

// 9. Byte-identical reports for identical seeds.
static void criterion9(const char* cli_path) {
    std::string r1, r2;
    RunConfig cfg;
    cfg.seed = 0;
    int c1 = cmd_verify("all", cfg, r1);
    int c2 = cmd_verify("all", cfg, r2);
    bool ok = c1 == 0 && c2 == 0 && r1 == r2;
    std::string why = ok ? "" : "library-level reports differ";
    if (ok && cli_path) {
        std::string base = "/tmp/sympcalc_det_";
        std::string cmd1 = std::string(cli_path) +
                           " verify all --seed 0 --out " + base + "1.json";
        std::string cmd2 = std::string(cli_path) +
                           " verify all --seed 0 --out " + base + "2.json";
        if (std::system(cmd1.c_str()) != 0 || std::system(cmd2.c_str()) != 0) {
            ok = false;
            why = "cli invocation failed";
        } else {
            std::ifstream f1(base + "1.json"), f2(base + "2.json");
            std::stringstream s1, s2;
            s1 << f1.rdbuf();
            s2 << f2.rdbuf();
            ok = !s1.str().empty() && s1.str() == s2.str();
            if (!ok) why = "cli reports differ between runs";
        }
    }
    verdict(9, ok, "same seed gives byte-identical reports", why);
}

int main(int argc, char** argv) {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9(argc > 1 ? argv[1] : nullptr);
    if (failures) {
        std::printf("%d criterion check(s) FAILED\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
