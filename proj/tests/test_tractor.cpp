#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sympcalc/expr.hpp"
#include "sympcalc/tractor.hpp"

using namespace sympcalc;

namespace {

void require_all(const CheckReport& rep) {
    for (const auto& item : rep.items) {
        INFO(rep.suite, ": ", item.name, " witness ", item.witness);
        CHECK(item.pass);
    }
}

Tensor endo_mul(const Tensor& x, const Tensor& y) {
    const int r = x.dims()[0];
    Tensor out(x.vars(), {r, r});
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            RatFunc acc(x.vars());
            for (int m = 0; m < r; ++m) {
                if (x.at({i, m}).is_zero() || y.at({m, j}).is_zero()) continue;
                acc += x.at({i, m}) * y.at({m, j});
            }
            out.at({i, j}) = acc;
        }
    return out;
}

Tensor endo_identity(const VarsPtr& vars, int r) {
    Tensor out(vars, {r, r});
    for (int i = 0; i < r; ++i)
        out.at({i, i}) = RatFunc::constant(vars, Rational(1));
    return out;
}

}  // namespace

TEST_CASE("tractor connection on the flat chart: formula read-offs") {
    auto fed = std::make_shared<FedosovStructure>(builtin_chart("flat", 2).fed);
    TractorConnection tc(fed);
    const VarsPtr& vars = fed->vars();
    const int d = 4;

    Tensor mu0(vars, {d});
    Tensor t1 = tractor_section(tc, RatFunc(vars), mu0,
                                RatFunc::constant(vars, Rational(1)));
    Tensor dt1 = tractor_nabla(tc, t1);
    // (0,0,1) -> (0, J_a., 0)
    for (int a = 0; a < d; ++a) {
        CHECK(dt1.at({a, tc.sigma_slot()}).is_zero());
        CHECK(dt1.at({a, tc.rho_slot()}).is_zero());
        for (int b = 0; b < d; ++b)
            CHECK((dt1.at({a, tc.mu_slot(b)}) -
                   fed->chart.space.J_lower.at({a, b}))
                      .is_zero());
    }
    // (1,0,0) -> 0 on the flat chart
    Tensor t2 = tractor_section(tc, RatFunc::constant(vars, Rational(1)), mu0,
                                RatFunc(vars));
    CHECK(tractor_nabla(tc, t2).is_zero());
}

TEST_CASE("skew form: antisymmetry and normalization") {
    auto fed = std::make_shared<FedosovStructure>(builtin_chart("flat", 1).fed);
    TractorConnection tc(fed);
    const VarsPtr& vars = fed->vars();
    Tensor s(vars, {4});
    s.at({0}) = parse_expr("x1", vars);
    s.at({1}) = parse_expr("1+y1", vars);
    s.at({2}) = parse_expr("x1*y1", vars);
    s.at({3}) = parse_expr("2", vars);
    CHECK(skew_form(tc, s, s).is_zero());

    Tensor mu0(vars, {2});
    Tensor a = tractor_section(tc, RatFunc::constant(vars, Rational(1)), mu0,
                               RatFunc(vars));
    Tensor b = tractor_section(tc, RatFunc(vars), mu0,
                               RatFunc::constant(vars, Rational(1)));
    CHECK(skew_form(tc, a, b) == RatFunc::constant(vars, Rational(1)));
    CHECK(skew_form(tc, b, a) == RatFunc::constant(vars, Rational(-1)));
}

TEST_CASE("tractor curvature formula: flat, Fubini-Study, random Fedosov") {
    std::vector<FedPtr> feds{
        std::make_shared<FedosovStructure>(builtin_chart("flat", 1).fed),
        std::make_shared<FedosovStructure>(builtin_chart("flat", 2).fed),
        std::make_shared<FedosovStructure>(builtin_chart("fubini_study", 1).fed),
        std::make_shared<FedosovStructure>(random_fedosov(1, 4)),
        std::make_shared<FedosovStructure>(random_fedosov(2, 9))};
    for (const auto& fed : feds) {
        TractorConnection tc(fed);
        require_all(tractor_curvature_check(tc));
    }
}

TEST_CASE("Theta on the projective line matches the explicit map") {
    ChartBundle cb = builtin_chart("fubini_study", 1);
    auto fed = std::make_shared<FedosovStructure>(cb.fed);
    TractorConnection tc(fed);
    ThetaEndo th = theta_of(tc.bundle());
    const int d = 2;
    const VarsPtr& vars = fed->vars();
    // expected: sigma <- rho, mu_d <- J_d^e mu_e, rho <- -sigma
    Tensor expect(vars, {d + 2, d + 2});
    expect.at({tc.sigma_slot(), tc.rho_slot()}) =
        RatFunc::constant(vars, Rational(1));
    expect.at({tc.rho_slot(), tc.sigma_slot()}) =
        RatFunc::constant(vars, Rational(-1));
    for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e)
            expect.at({tc.mu_slot(b), tc.mu_slot(e)}) = cb.kahler->Jmix.at({b, e});
    CHECK((th - expect).is_zero());

    // invertibility: Theta^2 = -identity
    Tensor sq = endo_mul(th, th);
    CHECK((sq + endo_identity(vars, d + 2)).is_zero());
}

TEST_CASE("Theta on the flat chart is the nilpotent standard-representation map") {
    for (int n = 1; n <= 2; ++n) {
        auto fed =
            std::make_shared<FedosovStructure>(builtin_chart("flat", n).fed);
        TractorConnection tc(fed);
        ThetaEndo th = theta_of(tc.bundle());
        Tensor expect(fed->vars(), {2 * n + 2, 2 * n + 2});
        expect.at({tc.sigma_slot(), tc.rho_slot()}) =
            RatFunc::constant(fed->vars(), Rational(1));
        CHECK((th - expect).is_zero());
        Tensor cube = endo_mul(th, endo_mul(th, th));
        CHECK(cube.is_zero());
    }
}

TEST_CASE("flatness of the tractor connection is equivalent to V = 0") {
    // flat chart: V = 0, flat
    auto flat1 = std::make_shared<FedosovStructure>(builtin_chart("flat", 1).fed);
    TractorConnection t1(flat1);
    CHECK(t1.decomp().V.is_zero());
    require_all(check_flatness_equivalence(t1));

    // Fubini-Study: V = 0, flat
    auto fs = std::make_shared<FedosovStructure>(
        builtin_chart("fubini_study", 1).fed);
    TractorConnection t2(fs);
    CHECK(t2.decomp().V.is_zero());
    require_all(check_flatness_equivalence(t2));
    CHECK(is_symplectically_flat(t2.bundle()));

    // random Fedosov with V != 0: not flat, equivalence still holds
    auto rnd = std::make_shared<FedosovStructure>(random_fedosov(2, 9));
    TractorConnection t3(rnd);
    CHECK_FALSE(t3.decomp().V.is_zero());
    require_all(check_flatness_equivalence(t3));
    CHECK_FALSE(is_symplectically_flat(t3.bundle()));
}

TEST_CASE("induced connections: identity power, dual pairing, symmetric square") {
    auto fs = std::make_shared<FedosovStructure>(
        builtin_chart("fubini_study", 1).fed);
    TractorConnection tc(fs);

    BundleConnection sym1 = sym_power_connection(tc.bundle(), 1);
    for (int a = 0; a < 2; ++a)
        CHECK((sym1.A[a] - tc.bundle().A[a]).is_zero());

    BundleConnection dual = dual_connection(tc.bundle());
    ThetaEndo th = theta_of(tc.bundle());
    ThetaEndo thd = theta_of(dual);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK((thd.at({i, j}) + th.at({j, i})).is_zero());

    BundleConnection sym2 = sym_power_connection(tc.bundle(), 2);
    CHECK(sym2.rank == 10);
    CHECK(is_symplectically_flat(sym2));

    BundleConnection sq = tensor_connection(tc.bundle(), tc.bundle());
    CHECK(sq.rank == 16);
    CHECK(is_symplectically_flat(sq));

    CHECK_THROWS(sym_power_connection(tc.bundle(), 3, 10));  // rank cap
}

TEST_CASE("closed-form second-order operator composes through the curvature") {
    // op1: sigma -> nabla_a nabla_b sigma + Phi_ab sigma,
    // op2: antisymmetrized derivative in the first two slots.  Their
    // composition equals -V_ab^d_c nabla_d sigma plus trace terms built from
    // Y, S, Phi; on a chart with V = Y = S = 0 only the removable trace part
    // survives, so the trace-free composition is zero.
    std::vector<FedPtr> feds{
        std::make_shared<FedosovStructure>(builtin_chart("fubini_study", 1).fed),
        std::make_shared<FedosovStructure>(random_fedosov(1, 6)),
        std::make_shared<FedosovStructure>(random_fedosov(2, 2))};
    for (const auto& fed : feds) {
        const int d = fed->dim();
        const VarsPtr& vars = fed->vars();
        const Tensor& J = fed->chart.space.J_lower;
        const Tensor& Ju = fed->chart.space.J_upper;
        CurvatureDecomp dec = decompose_curvature(*fed);
        for (const auto& mono : monomials_up_to(vars, 2)) {
            Tensor sigma(vars, {1});
            sigma[0] = RatFunc{Poly::monomial(vars, mono, Rational(1))};
            Tensor dsig = cov_deriv(*fed, sigma, {Slot::Payload});  // [a][1]
            Tensor grad(vars, {d});
            for (int a = 0; a < d; ++a) grad.at({a}) = dsig.at({a, 0});
            Tensor hess = cov_deriv(*fed, grad, {Slot::Down});  // nabla_a nabla_b
            Tensor op1(vars, {d, d});
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b)
                    op1.at({a, b}) = hess.at({a, b}) + dec.Phi.at({a, b}) * sigma[0];
            Tensor dop1 = cov_deriv(*fed, op1, {Slot::Down, Slot::Down});
            bool ok = true;
            for (int a = 0; a < d && ok; ++a)
                for (int b = 0; b < d && ok; ++b)
                    for (int c = 0; c < d && ok; ++c) {
                        RatFunc lhs = dop1.at({a, b, c}) - dop1.at({b, a, c});
                        RFAccum rhs(vars);
                        for (int e = 0; e < d; ++e)
                            rhs.sub_product(dec.V.at({a, b, e, c}), grad.at({e}));
                        rhs.add_product(dec.Y.at({a, b, c}), sigma[0]);
                        rhs.add_product(J.at({c, a}), dec.S.at({b}), sigma[0]);
                        rhs.sub_product(J.at({c, b}), dec.S.at({a}), sigma[0]);
                        rhs.sub_product(J.at({a, b}).scaled(Rational(2)),
                                        dec.S.at({c}), sigma[0]);
                        for (int e = 0; e < d; ++e)
                            for (int f = 0; f < d; ++f) {
                                if (Ju.at({e, f}).is_zero() ||
                                    grad.at({e}).is_zero())
                                    continue;
                                RFAccum xpart(vars);
                                xpart.add_product(J.at({a, c}), dec.Phi.at({b, f}));
                                xpart.sub_product(J.at({b, c}), dec.Phi.at({a, f}));
                                xpart.add_product(
                                    J.at({a, b}).scaled(Rational(2)),
                                    dec.Phi.at({c, f}));
                                rhs.sub_product(xpart.result(), Ju.at({e, f}),
                                                grad.at({e}));
                            }
                        INFO("chart ", fed->chart.name, " (a,b,c)=(", a, ",",
                             b, ",", c, ")");
                        ok = (lhs - rhs.result()).is_zero();
                        CHECK(ok);
                    }
            if (!ok) return;
        }
    }
}

TEST_CASE("projective-line tractors: full complexes vanish") {
    auto fs = std::make_shared<FedosovStructure>(
        builtin_chart("fubini_study", 1).fed);
    TractorConnection tc(fs);
    require_all(verify_rs_complex(tc.bundle(), 1));
    require_all(lemma1_complex(tc.bundle(), 1));
}

TEST_CASE("induced bundles over the projective line carry the complex too") {
    auto fs = std::make_shared<FedosovStructure>(
        builtin_chart("fubini_study", 1).fed);
    TractorConnection tc(fs);
    require_all(verify_rs_complex_jets(sym_power_connection(tc.bundle(), 2)));
    require_all(verify_rs_complex_jets(dual_connection(tc.bundle())));
}
