#include "sympcalc/geo_checks.hpp"

#include <random>

namespace sympcalc {

namespace {

std::string idx_witness(const std::vector<int>& idx, const RatFunc& v) {
    std::string s = "[";
    for (size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(idx[i]);
    }
    return s + "] = " + v.to_string();
}

Tensor random_vector_field(const FedosovStructure& f, std::mt19937_64& rng) {
    const int d = f.dim();
    Tensor X(f.vars(), {d});
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> pick(0, d - 1);
    std::uniform_int_distribution<int> degree(0, 2);
    for (int c = 0; c < d; ++c) {
        Poly p(f.vars());
        for (int t = 0; t < 2; ++t) {
            Expvec e(f.vars()->size(), 0);
            int dd = degree(rng);
            for (int i = 0; i < dd; ++i) e[pick(rng)]++;
            p += Poly::monomial(f.vars(), e, Rational(coeff(rng)));
        }
        X.at({c}) = RatFunc(std::move(p));
    }
    return X;
}

}  // namespace

CheckReport check_curvature(const FedosovStructure& f, uint64_t seed, int trials) {
    CheckReport rep;
    rep.suite = "curvature";
    const int d = f.dim();
    Tensor R = curvature(f);

    bool ok = true;
    std::string wit;
    for (int a = 0; a < d && ok; ++a)
        for (int b = 0; b <= a && ok; ++b)
            for (int c = 0; c < d && ok; ++c)
                for (int e = 0; e < d && ok; ++e) {
                    RatFunc s = R.at({a, b, c, e}) + R.at({b, a, c, e});
                    if (!s.is_zero()) {
                        ok = false;
                        wit = idx_witness({a, b, c, e}, s);
                    }
                }
    rep.add("R antisymmetric in first pair", ok, wit);

    // First Bianchi: antisymmetrization over the three down slots vanishes.
    ok = true;
    wit.clear();
    for (int a = 0; a < d && ok; ++a)
        for (int b = 0; b < d && ok; ++b)
            for (int c = 0; c < d && ok; ++c)
                for (int e = 0; e < d && ok; ++e) {
                    RatFunc s = R.at({a, b, c, e}) + R.at({b, e, c, a}) +
                                R.at({e, a, c, b});
                    if (!s.is_zero()) {
                        ok = false;
                        wit = idx_witness({a, b, c, e}, s);
                    }
                }
    rep.add("first Bianchi identity", ok, wit);

    // J-symmetry: R_ab^c_d J_ce symmetric in (d, e).
    const Tensor& J = f.chart.space.J_lower;
    ok = true;
    wit.clear();
    for (int a = 0; a < d && ok; ++a)
        for (int b = 0; b < a && ok; ++b)
            for (int e = 0; e < d && ok; ++e)
                for (int e2 = 0; e2 < e && ok; ++e2) {
                    RatFunc lhs(f.vars()), rhs(f.vars());
                    for (int c = 0; c < d; ++c) {
                        if (!R.at({a, b, c, e2}).is_zero() &&
                            !J.at({c, e}).is_zero())
                            lhs += R.at({a, b, c, e2}) * J.at({c, e});
                        if (!R.at({a, b, c, e}).is_zero() &&
                            !J.at({c, e2}).is_zero())
                            rhs += R.at({a, b, c, e}) * J.at({c, e2});
                    }
                    if (!(lhs - rhs).is_zero()) {
                        ok = false;
                        wit = idx_witness({a, b, e2, e}, lhs - rhs);
                    }
                }
    rep.add("J-symmetry of curvature", ok, wit);

    // Second Bianchi: cyclic covariant derivative vanishes.
    Tensor nablaR =
        cov_deriv(f, R, {Slot::Down, Slot::Down, Slot::Up, Slot::Down});
    ok = true;
    wit.clear();
    for (int a = 0; a < d && ok; ++a)
        for (int b = 0; b < d && ok; ++b)
            for (int c = 0; c < d && ok; ++c)
                for (int dd = 0; dd < d && ok; ++dd)
                    for (int e = 0; e < d && ok; ++e) {
                        RatFunc s = nablaR.at({a, b, c, dd, e}) +
                                    nablaR.at({b, c, a, dd, e}) +
                                    nablaR.at({c, a, b, dd, e});
                        if (!s.is_zero()) {
                            ok = false;
                            wit = idx_witness({a, b, c, dd, e}, s);
                        }
                    }
    rep.add("second Bianchi identity", ok, wit);

    // Commutator oracle on random polynomial vector fields.
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        Tensor X = random_vector_field(f, rng);
        Tensor nX = cov_deriv(f, X, {Slot::Up});
        Tensor nnX = cov_deriv(f, nX, {Slot::Down, Slot::Up});
        ok = true;
        wit.clear();
        for (int a = 0; a < d && ok; ++a)
            for (int b = 0; b < a && ok; ++b)
                for (int c = 0; c < d && ok; ++c) {
                    RatFunc lhs = nnX.at({a, b, c}) - nnX.at({b, a, c});
                    RatFunc rhs(f.vars());
                    for (int e = 0; e < d; ++e) {
                        if (R.at({a, b, c, e}).is_zero() || X.at({e}).is_zero())
                            continue;
                        rhs += R.at({a, b, c, e}) * X.at({e});
                    }
                    if (!(lhs - rhs).is_zero()) {
                        ok = false;
                        wit = idx_witness({a, b, c}, lhs - rhs);
                    }
                }
        rep.add("commutator oracle on vector field " + std::to_string(t), ok, wit);
    }
    return rep;
}

CheckReport check_decomposition(const FedosovStructure& f,
                                const CurvatureDecomp& dec) {
    CheckReport rep;
    rep.suite = "decomposition";
    const int d = f.dim();
    const int n = f.n();
    const Tensor& J = f.chart.space.J_lower;
    const Tensor& Ju = f.chart.space.J_upper;

    // Alternative trace expression for Phi.
    bool ok = true;
    std::string wit;
    const Rational scale(1, 4 * (n + 1));
    for (int b = 0; b < d && ok; ++b)
        for (int e = 0; e < d && ok; ++e) {
            RatFunc acc(f.vars());
            for (int a = 0; a < d; ++a)
                for (int a2 = 0; a2 < d; ++a2) {
                    if (Ju.at({a, a2}).is_zero()) continue;
                    for (int c = 0; c < d; ++c) {
                        if (dec.R.at({a, a2, c, b}).is_zero() ||
                            J.at({c, e}).is_zero())
                            continue;
                        acc += Ju.at({a, a2}) * dec.R.at({a, a2, c, b}) * J.at({c, e});
                    }
                }
            RatFunc diff = acc.scaled(scale) - dec.Phi.at({b, e});
            if (!diff.is_zero()) {
                ok = false;
                wit = idx_witness({b, e}, diff);
            }
        }
    rep.add("Phi double-trace expression", ok, wit);

    // V trace-free.
    ok = true;
    wit.clear();
    for (int b = 0; b < d && ok; ++b)
        for (int e = 0; e < d && ok; ++e) {
            RatFunc acc(f.vars());
            for (int a = 0; a < d; ++a) acc += dec.V.at({a, b, a, e});
            if (!acc.is_zero()) {
                ok = false;
                wit = idx_witness({b, e}, acc);
            }
        }
    rep.add("V trace-free", ok, wit);

    // Reassembly.
    ok = true;
    wit.clear();
    Tensor PhiJ(f.vars(), {d, d});
    for (int c = 0; c < d; ++c)
        for (int b = 0; b < d; ++b) {
            RatFunc acc(f.vars());
            for (int e = 0; e < d; ++e) {
                if (dec.Phi.at({b, e}).is_zero() || Ju.at({c, e}).is_zero())
                    continue;
                acc += dec.Phi.at({b, e}) * Ju.at({c, e});
            }
            PhiJ.at({c, b}) = acc;
        }
    for (int a = 0; a < d && ok; ++a)
        for (int b = 0; b < d && ok; ++b)
            for (int c = 0; c < d && ok; ++c)
                for (int e = 0; e < d && ok; ++e) {
                    RatFunc acc = dec.V.at({a, b, c, e});
                    if (a == c) acc += dec.Phi.at({b, e});
                    if (b == c) acc -= dec.Phi.at({a, e});
                    acc += J.at({a, e}) * PhiJ.at({c, b});
                    acc -= J.at({b, e}) * PhiJ.at({c, a});
                    acc += (J.at({a, b}) * PhiJ.at({c, e})).scaled(Rational(2));
                    if (!(acc - dec.R.at({a, b, c, e})).is_zero()) {
                        ok = false;
                        wit = idx_witness({a, b, c, e}, acc - dec.R.at({a, b, c, e}));
                    }
                }
    rep.add("decomposition reassembles R", ok, wit);
    return rep;
}

CheckReport check_lemma3(const FedosovStructure& f, const CurvatureDecomp& dec) {
    CheckReport rep;
    rep.suite = "lemma3";
    const int d = f.dim();
    const int n = f.n();
    const Tensor& J = f.chart.space.J_lower;
    const Tensor& Ju = f.chart.space.J_upper;

    Tensor nablaPhi = cov_deriv(f, dec.Phi, {Slot::Down, Slot::Down});
    bool ok = true;
    std::string wit;
    for (int a = 0; a < d && ok; ++a)
        for (int b = 0; b < d && ok; ++b)
            for (int c = 0; c < d && ok; ++c) {
                RatFunc rhs = nablaPhi.at({a, b, c}) - nablaPhi.at({b, a, c});
                rhs -= J.at({c, a}) * dec.S.at({b}) - J.at({c, b}) * dec.S.at({a});
                rhs += (J.at({a, b}) * dec.S.at({c})).scaled(Rational(2));
                RatFunc diff = dec.Y.at({a, b, c}) - rhs;
                if (!diff.is_zero()) {
                    ok = false;
                    wit = idx_witness({a, b, c}, diff);
                }
            }
    rep.add("contracted Bianchi expression for Y", ok, wit);

    // J^ad nabla_a Y_bcd identity.
    Tensor nablaY = cov_deriv(f, dec.Y, {Slot::Down, Slot::Down, Slot::Down});
    Tensor nablaS = cov_deriv(f, dec.S, {Slot::Down});
    ok = true;
    wit.clear();
    // J^ad (nabla_a S_d - J^ef Phi_ae Phi_df), a scalar
    RatFunc tail(f.vars());
    for (int a = 0; a < d; ++a)
        for (int dd = 0; dd < d; ++dd) {
            if (Ju.at({a, dd}).is_zero()) continue;
            RatFunc inner = nablaS.at({a, dd});
            for (int e = 0; e < d; ++e)
                for (int ff = 0; ff < d; ++ff) {
                    if (Ju.at({e, ff}).is_zero() ||
                        dec.Phi.at({a, e}).is_zero() ||
                        dec.Phi.at({dd, ff}).is_zero())
                        continue;
                    inner -= Ju.at({e, ff}) * dec.Phi.at({a, e}) * dec.Phi.at({dd, ff});
                }
            tail += Ju.at({a, dd}) * inner;
        }
    for (int b = 0; b < d && ok; ++b)
        for (int c = 0; c < d && ok; ++c) {
            RatFunc lhs(f.vars());
            for (int a = 0; a < d; ++a)
                for (int dd = 0; dd < d; ++dd) {
                    if (Ju.at({a, dd}).is_zero() ||
                        nablaY.at({a, b, c, dd}).is_zero())
                        continue;
                    lhs += Ju.at({a, dd}) * nablaY.at({a, b, c, dd});
                }
            RatFunc rhs(f.vars());
            for (int a = 0; a < d; ++a)
                for (int dd = 0; dd < d; ++dd) {
                    if (Ju.at({a, dd}).is_zero()) continue;
                    for (int e = 0; e < d; ++e) {
                        if (dec.V.at({b, c, e, a}).is_zero() ||
                            dec.Phi.at({e, dd}).is_zero())
                            continue;
                        rhs += Ju.at({a, dd}) * dec.V.at({b, c, e, a}) *
                               dec.Phi.at({e, dd});
                    }
                }
            RatFunc mid(f.vars());
            for (int a = 0; a < d; ++a)
                for (int dd = 0; dd < d; ++dd) {
                    if (Ju.at({a, dd}).is_zero() ||
                        dec.Phi.at({b, a}).is_zero() ||
                        dec.Phi.at({c, dd}).is_zero())
                        continue;
                    mid += Ju.at({a, dd}) * dec.Phi.at({b, a}) * dec.Phi.at({c, dd});
                }
            mid -= (nablaS.at({b, c}) - nablaS.at({c, b})).scaled(Rational(1, 2));
            rhs += mid.scaled(Rational(4 * n));
            rhs += (J.at({b, c}) * tail).scaled(Rational(2));
            if (!(lhs - rhs).is_zero()) {
                ok = false;
                wit = idx_witness({b, c}, lhs - rhs);
            }
        }
    rep.add("second-order identity for nabla Y", ok, wit);
    return rep;
}

CheckReport check_kahler(const KahlerStructure& k) {
    CheckReport rep;
    rep.suite = "kahler";
    const int d = k.fed.dim();
    const int n = k.fed.n();
    const VarsPtr& vars = k.fed.vars();
    KahlerDecomp kd = kahler_decompose(k);
    CurvatureDecomp cd = decompose_curvature(k.fed);

    // Xi symmetric and g-trace-free.
    bool ok = true;
    std::string wit;
    for (int a = 0; a < d && ok; ++a)
        for (int b = 0; b < a && ok; ++b)
            if (!(kd.Xi.at({a, b}) - kd.Xi.at({b, a})).is_zero()) {
                ok = false;
                wit = idx_witness({a, b}, kd.Xi.at({a, b}) - kd.Xi.at({b, a}));
            }
    rep.add("Xi symmetric", ok, wit);
    RatFunc tr(vars);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            if (k.g_inv.at({a, b}).is_zero() || kd.Xi.at({a, b}).is_zero())
                continue;
            tr += k.g_inv.at({a, b}) * kd.Xi.at({a, b});
        }
    rep.add("Xi trace-free", tr.is_zero(), tr.is_zero() ? "" : tr.to_string());

    // Sigma antisymmetric and Sigma_ab = J_a^c Xi_bc.
    ok = true;
    wit.clear();
    for (int a = 0; a < d && ok; ++a)
        for (int b = 0; b <= a && ok; ++b)
            if (!(kd.Sigma.at({a, b}) + kd.Sigma.at({b, a})).is_zero()) {
                ok = false;
                wit = idx_witness({a, b}, kd.Sigma.at({a, b}) + kd.Sigma.at({b, a}));
            }
    rep.add("Sigma antisymmetric", ok, wit);

    // U totally trace-free: all pair contractions of the lowered tensor with
    // g^ and J^ vanish.
    Tensor Ul(vars, {d, d, d, d});
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e) {
                    RatFunc acc(vars);
                    for (int ff = 0; ff < d; ++ff) {
                        if (k.g.at({c, ff}).is_zero() ||
                            kd.U.at({a, b, ff, e}).is_zero())
                            continue;
                        acc += k.g.at({c, ff}) * kd.U.at({a, b, ff, e});
                    }
                    Ul.at({a, b, c, e}) = acc;
                }
    const Tensor& Ju = k.fed.chart.space.J_upper;
    ok = true;
    wit.clear();
    for (int s1 = 0; s1 < 4 && ok; ++s1)
        for (int s2 = s1 + 1; s2 < 4 && ok; ++s2) {
            // remaining two slots
            std::vector<int> rest;
            for (int i = 0; i < 4; ++i)
                if (i != s1 && i != s2) rest.push_back(i);
            for (int u = 0; u < d && ok; ++u)
                for (int v = 0; v < d && ok; ++v) {
                    RatFunc with_g(vars), with_j(vars);
                    std::vector<int> idx(4);
                    idx[rest[0]] = u;
                    idx[rest[1]] = v;
                    for (int p = 0; p < d; ++p)
                        for (int q = 0; q < d; ++q) {
                            idx[s1] = p;
                            idx[s2] = q;
                            const RatFunc& val = Ul.at(idx);
                            if (val.is_zero()) continue;
                            if (!k.g_inv.at({p, q}).is_zero())
                                with_g += k.g_inv.at({p, q}) * val;
                            if (!Ju.at({p, q}).is_zero())
                                with_j += Ju.at({p, q}) * val;
                        }
                    if (!with_g.is_zero()) {
                        ok = false;
                        wit = "g-trace on slots (" + std::to_string(s1) + "," +
                              std::to_string(s2) + ") " + idx_witness({u, v}, with_g);
                    } else if (!with_j.is_zero()) {
                        ok = false;
                        wit = "J-trace on slots (" + std::to_string(s1) + "," +
                              std::to_string(s2) + ") " + idx_witness({u, v}, with_j);
                    }
                }
        }
    rep.add("U totally trace-free", ok, wit);

    // Mixed-trace identity: J_c^a V_ab^c_d = -2 n(n+2)/(n+1) Sigma_bd.
    ok = true;
    wit.clear();
    const Rational coef(-2 * n * (n + 2), n + 1);
    for (int b = 0; b < d && ok; ++b)
        for (int e = 0; e < d && ok; ++e) {
            RatFunc lhs(vars);
            for (int a = 0; a < d; ++a)
                for (int c = 0; c < d; ++c) {
                    if (k.Jmix.at({c, a}).is_zero() ||
                        cd.V.at({a, b, c, e}).is_zero())
                        continue;
                    lhs += k.Jmix.at({c, a}) * cd.V.at({a, b, c, e});
                }
            RatFunc diff = lhs - kd.Sigma.at({b, e}).scaled(coef);
            if (!diff.is_zero()) {
                ok = false;
                wit = idx_witness({b, e}, diff);
            }
        }
    rep.add("V against Sigma mixed-trace identity", ok, wit);

    // Phi = (n+2)/(n+1) Xi + Lambda g ties the two decompositions together.
    ok = true;
    wit.clear();
    const Rational xi_coef(n + 2, n + 1);
    for (int a = 0; a < d && ok; ++a)
        for (int b = 0; b < d && ok; ++b) {
            RatFunc rhs = kd.Xi.at({a, b}).scaled(xi_coef) +
                          kd.Lambda * k.g.at({a, b});
            if (!(cd.Phi.at({a, b}) - rhs).is_zero()) {
                ok = false;
                wit = idx_witness({a, b}, cd.Phi.at({a, b}) - rhs);
            }
        }
    rep.add("Phi from Xi and Lambda", ok, wit);
    return rep;
}

}  // namespace sympcalc
