#include "sympcalc/geometry.hpp"

#include <random>
#include <stdexcept>

namespace sympcalc {

namespace {

std::vector<std::string> coord_names(int n) {
    std::vector<std::string> names;
    for (int j = 1; j <= n; ++j) {
        names.push_back("x" + std::to_string(j));
        names.push_back("y" + std::to_string(j));
    }
    return names;
}

RatFunc rf_const(const VarsPtr& v, long long c) {
    return RatFunc::constant(v, Rational(c));
}

}  // namespace

Chart::Chart(int n_, VarsPtr vars_, Tensor j_lower,
             std::vector<Rational> base_point_, std::string name_)
    : n(n_),
      vars(std::move(vars_)),
      space(n_, std::move(j_lower)),
      base_point(std::move(base_point_)),
      name(std::move(name_)) {
    if (n < 1) throw std::invalid_argument("Chart: n must be positive");
    if (static_cast<int>(vars->size()) != 2 * n)
        throw std::invalid_argument("Chart: expected 2n coordinates");
    if (base_point.size() != vars->size())
        throw std::invalid_argument("Chart: base point arity mismatch");
    const int d = 2 * n;
    // dJ = 0: antisymmetrized coordinate derivative vanishes.
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
            for (int c = b + 1; c < d; ++c) {
                RatFunc s = space.J_lower.at({b, c}).partial(a) +
                            space.J_lower.at({c, a}).partial(b) +
                            space.J_lower.at({a, b}).partial(c);
                if (!s.is_zero())
                    throw std::invalid_argument("Chart: J is not closed");
            }
    // Regularity and nondegeneracy at the base point.
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            (void)space.J_lower.at({a, b}).evaluate(base_point);
}

FedosovStructure::FedosovStructure(Chart chart_, Tensor gamma_)
    : chart(std::move(chart_)), gamma(std::move(gamma_)) {
    const int d = dim();
    if (gamma.dims() != std::vector<int>{d, d, d})
        throw std::invalid_argument("FedosovStructure: Gamma shape");
    for (int c = 0; c < d; ++c)
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b)
                if (!(gamma.at({c, a, b}) - gamma.at({c, b, a})).is_zero())
                    throw std::invalid_argument(
                        "FedosovStructure: connection has torsion at (" +
                        std::to_string(c) + "," + std::to_string(a) + "," +
                        std::to_string(b) + ")");
    // nabla_a J_bc = d_a J_bc - Gamma^e_ab J_ec - Gamma^e_ac J_be = 0
    const Tensor& J = chart.space.J_lower;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = b + 1; c < d; ++c) {
                RatFunc s = J.at({b, c}).partial(a);
                for (int e = 0; e < d; ++e) {
                    if (!gamma.at({e, a, b}).is_zero() && !J.at({e, c}).is_zero())
                        s -= gamma.at({e, a, b}) * J.at({e, c});
                    if (!gamma.at({e, a, c}).is_zero() && !J.at({b, e}).is_zero())
                        s -= gamma.at({e, a, c}) * J.at({b, e});
                }
                if (!s.is_zero())
                    throw std::invalid_argument(
                        "FedosovStructure: nabla J != 0 at (" +
                        std::to_string(a) + "," + std::to_string(b) + "," +
                        std::to_string(c) + ")");
            }
}

Tensor cov_deriv(const FedosovStructure& f, const Tensor& t,
                 const std::vector<Slot>& slots) {
    if (static_cast<int>(slots.size()) != t.order())
        throw std::invalid_argument("cov_deriv: slot description mismatch");
    const int d = f.dim();
    std::vector<int> out_dims{d};
    out_dims.insert(out_dims.end(), t.dims().begin(), t.dims().end());
    Tensor out(t.vars(), out_dims);

    std::vector<int> idx(t.order(), 0);
    std::vector<int> oidx(out.order());
    bool more = true;
    while (more) {
        for (int a = 0; a < d; ++a) {
            oidx[0] = a;
            for (int i = 0; i < t.order(); ++i) oidx[i + 1] = idx[i];
            RFAccum acc(t.vars());
            if (!t.at(idx).is_zero()) acc.add(t.at(idx).partial(a));
            for (int s = 0; s < t.order(); ++s) {
                if (slots[s] == Slot::Payload) continue;
                std::vector<int> jdx = idx;
                for (int e = 0; e < d; ++e) {
                    jdx[s] = e;
                    if (slots[s] == Slot::Down)
                        acc.sub_product(f.gamma.at({e, a, idx[s]}), t.at(jdx));
                    else
                        acc.add_product(f.gamma.at({idx[s], a, e}), t.at(jdx));
                }
            }
            out.at(oidx) = acc.result();
        }
        more = t.next_index(idx);
    }
    return out;
}

Tensor curvature(const FedosovStructure& f) {
    const int d = f.dim();
    const Tensor& G = f.gamma;
    Tensor R(f.vars(), {d, d, d, d});
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < a; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e) {
                    // R_ab^c_e = d_a G^c_be - d_b G^c_ae
                    //            + G^c_af G^f_be - G^c_bf G^f_ae
                    RFAccum acc(f.vars());
                    acc.add(G.at({c, b, e}).partial(a));
                    acc.sub(G.at({c, a, e}).partial(b));
                    for (int ff = 0; ff < d; ++ff) {
                        acc.add_product(G.at({c, a, ff}), G.at({ff, b, e}));
                        acc.sub_product(G.at({c, b, ff}), G.at({ff, a, e}));
                    }
                    RatFunc accv = acc.result();
                    R.at({a, b, c, e}) = accv;
                    R.at({b, a, c, e}) = -accv;
                }
    return R;
}

CurvatureDecomp decompose_curvature(const FedosovStructure& f) {
    const int d = f.dim();
    const int n = f.n();
    const VarsPtr& vars = f.vars();
    const Tensor& J = f.chart.space.J_lower;
    const Tensor& Ju = f.chart.space.J_upper;

    Tensor R = curvature(f);

    // Phi_bd = R_ab^a_d / (2(n+1))
    Tensor Phi(vars, {d, d});
    const Rational phi_scale(1, 2 * (n + 1));
    for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e) {
            RatFunc acc(vars);
            for (int a = 0; a < d; ++a) acc += R.at({a, b, a, e});
            Phi.at({b, e}) = acc.scaled(phi_scale);
        }

    // PhiJ[c][b] = Phi_be J^ce
    Tensor PhiJ(vars, {d, d});
    for (int c = 0; c < d; ++c)
        for (int b = 0; b < d; ++b) {
            RatFunc acc(vars);
            for (int e = 0; e < d; ++e) {
                if (Phi.at({b, e}).is_zero() || Ju.at({c, e}).is_zero()) continue;
                acc += Phi.at({b, e}) * Ju.at({c, e});
            }
            PhiJ.at({c, b}) = acc;
        }

    Tensor V = R;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e) {
                    RatFunc corr(vars);
                    if (a == c) corr += Phi.at({b, e});
                    if (b == c) corr -= Phi.at({a, e});
                    if (!J.at({a, e}).is_zero() && !PhiJ.at({c, b}).is_zero())
                        corr += J.at({a, e}) * PhiJ.at({c, b});
                    if (!J.at({b, e}).is_zero() && !PhiJ.at({c, a}).is_zero())
                        corr -= J.at({b, e}) * PhiJ.at({c, a});
                    if (!J.at({a, b}).is_zero() && !PhiJ.at({c, e}).is_zero())
                        corr += (J.at({a, b}) * PhiJ.at({c, e})).scaled(Rational(2));
                    if (!corr.is_zero()) V.at({a, b, c, e}) -= corr;
                }

    // Postconditions: V is trace-free and the pieces reassemble R.
    for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e) {
            RatFunc acc(vars);
            for (int a = 0; a < d; ++a) acc += V.at({a, b, a, e});
            if (!acc.is_zero())
                throw std::logic_error("decompose_curvature: V has a trace");
        }
    for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e)
            if (!(Phi.at({b, e}) - Phi.at({e, b})).is_zero())
                throw std::logic_error("decompose_curvature: Phi asymmetric");

    // S_a = J^bc nabla_c Phi_ab / (2n+1)
    Tensor nablaPhi = cov_deriv(f, Phi, {Slot::Down, Slot::Down});
    Tensor S(vars, {d});
    const Rational s_scale(1, 2 * n + 1);
    for (int a = 0; a < d; ++a) {
        RatFunc acc(vars);
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) {
                if (Ju.at({b, c}).is_zero()) continue;
                const RatFunc& np = nablaPhi.at({c, a, b});
                if (np.is_zero()) continue;
                acc += Ju.at({b, c}) * np;
            }
        S.at({a}) = acc.scaled(s_scale);
    }

    // Y_abc = nabla_d V_ab^d_c / (2n+1)
    Tensor nablaV =
        cov_deriv(f, V, {Slot::Down, Slot::Down, Slot::Up, Slot::Down});
    Tensor Y(vars, {d, d, d});
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) {
                RatFunc acc(vars);
                for (int e = 0; e < d; ++e) acc += nablaV.at({e, a, b, e, c});
                Y.at({a, b, c}) = acc.scaled(s_scale);
            }

    return CurvatureDecomp{std::move(R), std::move(V), std::move(Phi),
                           std::move(S), std::move(Y)};
}

KahlerStructure::KahlerStructure(Chart chart, Tensor g_)
    : fed(FedosovStructure(
          std::move(chart),
          [&]() -> Tensor {
              // Levi-Civita Christoffels from g.
              const VarsPtr vars = g_.vars();
              const int d = g_.dims()[0];
              for (int a = 0; a < d; ++a)
                  for (int b = 0; b < a; ++b)
                      if (!(g_.at({a, b}) - g_.at({b, a})).is_zero())
                          throw std::invalid_argument(
                              "KahlerStructure: g not symmetric");
              std::vector<std::vector<RatFunc>> gm(
                  d, std::vector<RatFunc>(d, RatFunc(vars)));
              for (int a = 0; a < d; ++a)
                  for (int b = 0; b < d; ++b) gm[a][b] = g_.at({a, b});
              auto ginv = rf_invert_matrix(gm);
              Tensor gamma(vars, {d, d, d});
              const Rational half(1, 2);
              for (int c = 0; c < d; ++c)
                  for (int a = 0; a < d; ++a)
                      for (int b = a; b < d; ++b) {
                          RatFunc acc(vars);
                          for (int e = 0; e < d; ++e) {
                              if (ginv[c][e].is_zero()) continue;
                              RatFunc t = g_.at({b, e}).partial(a) +
                                          g_.at({a, e}).partial(b) -
                                          g_.at({a, b}).partial(e);
                              if (t.is_zero()) continue;
                              acc += ginv[c][e] * t;
                          }
                          acc = acc.scaled(half);
                          gamma.at({c, a, b}) = acc;
                          if (a != b) gamma.at({c, b, a}) = acc;
                      }
              return gamma;
          }())),
      g(std::move(g_)),
      g_inv(g.vars(), g.dims()),
      Jmix(g.vars(), g.dims()) {
    const int d = fed.dim();
    const VarsPtr& vars = fed.vars();
    std::vector<std::vector<RatFunc>> gm(d, std::vector<RatFunc>(d, RatFunc(vars)));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) gm[a][b] = g.at({a, b});
    auto ginv = rf_invert_matrix(gm);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) g_inv.at({a, b}) = ginv[a][b];
    // J_a^b = J_ac g^bc
    const Tensor& J = fed.chart.space.J_lower;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            RatFunc acc(vars);
            for (int c = 0; c < d; ++c) {
                if (J.at({a, c}).is_zero() || g_inv.at({b, c}).is_zero()) continue;
                acc += J.at({a, c}) * g_inv.at({b, c});
            }
            Jmix.at({a, b}) = acc;
        }
    // Almost complex structure: J_a^c J_c^b = -delta_a^b.
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            RatFunc acc(vars);
            for (int c = 0; c < d; ++c) {
                if (Jmix.at({a, c}).is_zero() || Jmix.at({c, b}).is_zero()) continue;
                acc += Jmix.at({a, c}) * Jmix.at({c, b});
            }
            RatFunc expect = rf_const(vars, a == b ? -1 : 0);
            if (!(acc - expect).is_zero())
                throw std::invalid_argument("KahlerStructure: J_a^b squared != -1");
        }
}

KahlerDecomp kahler_decompose(const KahlerStructure& k) {
    const int d = k.fed.dim();
    const int n = k.fed.n();
    const VarsPtr& vars = k.fed.vars();
    const Tensor& J = k.fed.chart.space.J_lower;
    const Tensor& g = k.g;
    const Tensor& gi = k.g_inv;
    const Tensor& Jm = k.Jmix;  // J_a^b

    Tensor R = curvature(k.fed);

    Tensor Ric(vars, {d, d});
    for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e) {
            RatFunc acc(vars);
            for (int a = 0; a < d; ++a) acc += R.at({a, b, a, e});
            Ric.at({b, e}) = acc;
        }
    RatFunc scal(vars);
    for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e) {
            if (gi.at({b, e}).is_zero() || Ric.at({b, e}).is_zero()) continue;
            scal += gi.at({b, e}) * Ric.at({b, e});
        }
    RatFunc lambda = scal.scaled(Rational(1, 4 * n * (n + 1)));

    Tensor Xi(vars, {d, d});
    const Rational xi_scale(1, 2 * (n + 2));
    for (int b = 0; b < d; ++b)
        for (int e = 0; e < d; ++e)
            Xi.at({b, e}) =
                (Ric.at({b, e}) - (lambda * g.at({b, e})).scaled(Rational(2 * (n + 1))))
                    .scaled(xi_scale);

    Tensor Sigma(vars, {d, d});
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            RatFunc acc(vars);
            for (int c = 0; c < d; ++c) {
                if (Jm.at({a, c}).is_zero() || Xi.at({b, c}).is_zero()) continue;
                acc += Jm.at({a, c}) * Xi.at({b, c});
            }
            Sigma.at({a, b}) = acc;
        }

    // Raised companions.
    auto raise2 = [&](const Tensor& T) {
        // T_b^c = g^ce T_be
        Tensor out(vars, {d, d});
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) {
                RatFunc acc(vars);
                for (int e = 0; e < d; ++e) {
                    if (gi.at({c, e}).is_zero() || T.at({b, e}).is_zero()) continue;
                    acc += gi.at({c, e}) * T.at({b, e});
                }
                out.at({b, c}) = acc;
            }
        return out;
    };
    auto raise1 = [&](const Tensor& T) {
        // T^c_e = g^cb T_be
        Tensor out(vars, {d, d});
        for (int c = 0; c < d; ++c)
            for (int e = 0; e < d; ++e) {
                RatFunc acc(vars);
                for (int b = 0; b < d; ++b) {
                    if (gi.at({c, b}).is_zero() || T.at({b, e}).is_zero()) continue;
                    acc += gi.at({c, b}) * T.at({b, e});
                }
                out.at({c, e}) = acc;
            }
        return out;
    };
    Tensor Xi_up = raise2(Xi);        // Xi_b^c
    Tensor Sig_up2 = raise2(Sigma);   // Sigma_b^c
    Tensor Sig_up1 = raise1(Sigma);   // Sigma^c_e
    Tensor J_up1 = raise1(J);         // J^c_e

    Tensor U = R;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
                for (int e = 0; e < d; ++e) {
                    RatFunc corr(vars);
                    if (a == c) corr += Xi.at({b, e});
                    if (b == c) corr -= Xi.at({a, e});
                    corr -= g.at({a, e}) * Xi_up.at({b, c});
                    corr += g.at({b, e}) * Xi_up.at({a, c});
                    corr += Jm.at({a, c}) * Sigma.at({b, e});
                    corr -= Jm.at({b, c}) * Sigma.at({a, e});
                    corr -= J.at({a, e}) * Sig_up2.at({b, c});
                    corr += J.at({b, e}) * Sig_up2.at({a, c});
                    corr += (J.at({a, b}) * Sig_up1.at({c, e})).scaled(Rational(2));
                    corr += (J_up1.at({c, e}) * Sigma.at({a, b})).scaled(Rational(2));
                    RatFunc lam_part(vars);
                    if (a == c) lam_part += g.at({b, e});
                    if (b == c) lam_part -= g.at({a, e});
                    lam_part += Jm.at({a, c}) * J.at({b, e});
                    lam_part -= Jm.at({b, c}) * J.at({a, e});
                    lam_part += (J.at({a, b}) * J_up1.at({c, e})).scaled(Rational(2));
                    corr += lambda * lam_part;
                    if (!corr.is_zero()) U.at({a, b, c, e}) -= corr;
                }

    return KahlerDecomp{std::move(U), std::move(Xi), std::move(Sigma),
                        std::move(lambda)};
}

KahlerStructure kahler_from_potential(int n, const VarsPtr& vars,
                                      const RatFunc& potential,
                                      std::string name) {
    const int d = 2 * n;
    // A_jk = (F_xjxk + F_yjyk)/4,  B_jk = (F_xjyk - F_yjxk)/4, with
    // x_j at index 2j and y_j at index 2j+1.
    auto X = [](int j) { return 2 * j; };
    auto Y = [](int j) { return 2 * j + 1; };
    const Rational quarter(1, 4);
    std::vector<std::vector<RatFunc>> A(n, std::vector<RatFunc>(n, RatFunc(vars)));
    std::vector<std::vector<RatFunc>> B(n, std::vector<RatFunc>(n, RatFunc(vars)));
    for (int j = 0; j < n; ++j)
        for (int kk = 0; kk < n; ++kk) {
            A[j][kk] = (potential.partial(X(j)).partial(X(kk)) +
                        potential.partial(Y(j)).partial(Y(kk)))
                           .scaled(quarter);
            B[j][kk] = (potential.partial(X(j)).partial(Y(kk)) -
                        potential.partial(Y(j)).partial(X(kk)))
                           .scaled(quarter);
        }
    Tensor J(vars, {d, d}), g(vars, {d, d});
    for (int j = 0; j < n; ++j)
        for (int kk = 0; kk < n; ++kk) {
            J.at({X(j), X(kk)}) = -B[j][kk];
            J.at({Y(j), Y(kk)}) = -B[j][kk];
            J.at({X(j), Y(kk)}) = A[j][kk];
            J.at({Y(j), X(kk)}) = -A[kk][j];
            g.at({X(j), X(kk)}) = A[j][kk];
            g.at({Y(j), Y(kk)}) = A[j][kk];
            g.at({X(j), Y(kk)}) = B[j][kk];
            g.at({Y(j), X(kk)}) = B[kk][j];
        }
    std::vector<Rational> origin(d, Rational(0));
    Chart chart(n, vars, std::move(J), std::move(origin), std::move(name));
    return KahlerStructure(std::move(chart), std::move(g));
}

ChartBundle builtin_chart(const std::string& name, int n) {
    if (name == "flat") {
        if (n < 1 || n > 3)
            throw std::invalid_argument("builtin flat chart supports n in 1..3");
        VarsPtr vars = make_vars(coord_names(n));
        // Potential sum |z|^2 gives constant standard J and identity metric.
        RatFunc pot(vars);
        for (int i = 0; i < 2 * n; ++i) {
            RatFunc v = RatFunc::variable(vars, i);
            pot += v * v;
        }
        KahlerStructure ks = kahler_from_potential(n, vars, pot, "flat");
        return ChartBundle{ks.fed, std::move(ks)};
    }
    if (name == "fubini_study") {
        if (n < 1 || n > 2)
            throw std::invalid_argument(
                "builtin fubini_study chart supports n in 1..2");
        VarsPtr vars = make_vars(coord_names(n));
        RatFunc r2(vars);
        for (int i = 0; i < 2 * n; ++i) {
            RatFunc v = RatFunc::variable(vars, i);
            r2 += v * v;
        }
        // Exact potential log(1 + r^2) enters only through its Wirtinger
        // second derivatives, which are rational: substitute them directly.
        // h_jk = d_zj d_zbark log(1+|z|^2) = delta_jk/q - zbar_j z_k / q^2,
        // so build A, B from that closed form instead of differentiating a
        // transcendental potential.
        const int d = 2 * n;
        auto X = [](int j) { return 2 * j; };
        auto Y = [](int j) { return 2 * j + 1; };
        RatFunc q = rf_const(vars, 1) + r2;
        std::vector<std::vector<RatFunc>> A(n, std::vector<RatFunc>(n, RatFunc(vars)));
        std::vector<std::vector<RatFunc>> B(n, std::vector<RatFunc>(n, RatFunc(vars)));
        for (int j = 0; j < n; ++j)
            for (int kk = 0; kk < n; ++kk) {
                RatFunc xj = RatFunc::variable(vars, X(j));
                RatFunc yj = RatFunc::variable(vars, Y(j));
                RatFunc xk = RatFunc::variable(vars, X(kk));
                RatFunc yk = RatFunc::variable(vars, Y(kk));
                // zbar_j z_k = (x_j - i y_j)(x_k + i y_k)
                RatFunc re = xj * xk + yj * yk;
                RatFunc im = xj * yk - yj * xk;
                RatFunc hre = ((j == kk ? q : RatFunc(vars)) - re) / (q * q);
                RatFunc him = -im / (q * q);
                A[j][kk] = hre;
                B[j][kk] = him;
            }
        Tensor J(vars, {d, d}), g(vars, {d, d});
        for (int j = 0; j < n; ++j)
            for (int kk = 0; kk < n; ++kk) {
                J.at({X(j), X(kk)}) = -B[j][kk];
                J.at({Y(j), Y(kk)}) = -B[j][kk];
                J.at({X(j), Y(kk)}) = A[j][kk];
                J.at({Y(j), X(kk)}) = -A[kk][j];
                g.at({X(j), X(kk)}) = A[j][kk];
                g.at({Y(j), Y(kk)}) = A[j][kk];
                g.at({X(j), Y(kk)}) = B[j][kk];
                g.at({Y(j), X(kk)}) = B[kk][j];
            }
        std::vector<Rational> origin(d, Rational(0));
        Chart chart(n, vars, std::move(J), std::move(origin), "fubini_study");
        KahlerStructure ks(std::move(chart), std::move(g));
        return ChartBundle{ks.fed, std::move(ks)};
    }
    throw std::invalid_argument("unknown builtin chart '" + name + "'");
}

FedosovStructure random_fedosov(int n, uint64_t seed, int deg) {
    VarsPtr vars = make_vars(coord_names(n));
    const int d = 2 * n;
    SympSpace std_space = SympSpace::standard(n, vars);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::uniform_int_distribution<int> pick(0, d - 1);
    std::uniform_int_distribution<int> degree(0, deg);

    // Totally symmetric Xi with small polynomial entries.
    Tensor Xi(vars, {d, d, d});
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b)
            for (int c = b; c < d; ++c) {
                Poly p(vars);
                for (int t = 0; t < 2; ++t) {
                    Expvec e(vars->size(), 0);
                    int dd = degree(rng);
                    for (int i = 0; i < dd; ++i) e[pick(rng)]++;
                    p += Poly::monomial(vars, e, Rational(coeff(rng)));
                }
                RatFunc v{Poly(p)};
                std::vector<int> idx{a, b, c};
                std::sort(idx.begin(), idx.end());
                do {
                    Xi.at(idx) = v;
                } while (std::next_permutation(idx.begin(), idx.end()));
            }

    Tensor gamma(vars, {d, d, d});
    for (int c = 0; c < d; ++c)
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                RatFunc acc(vars);
                for (int e = 0; e < d; ++e) {
                    if (std_space.J_upper.at({c, e}).is_zero() ||
                        Xi.at({e, a, b}).is_zero())
                        continue;
                    acc += std_space.J_upper.at({c, e}) * Xi.at({e, a, b});
                }
                gamma.at({c, a, b}) = acc;
            }

    Tensor Jl = std_space.J_lower;
    std::vector<Rational> origin(d, Rational(0));
    Chart chart(n, vars, std::move(Jl), std::move(origin),
                "random_fedosov_" + std::to_string(seed));
    return FedosovStructure(std::move(chart), std::move(gamma));
}

KahlerStructure random_kahler(int n, uint64_t seed) {
    VarsPtr vars = make_vars(coord_names(n));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(1, 2);
    std::uniform_int_distribution<int> pick(0, 2 * n - 1);
    RatFunc pot(vars);
    for (int i = 0; i < 2 * n; ++i) {
        RatFunc v = RatFunc::variable(vars, i);
        pot += v * v;
    }
    // A sparse cubic perturbation in at most two coordinates keeps the
    // metric invertible at 0 and the symbolic inverses tractable.
    Poly pert(vars);
    int u = pick(rng), v = pick(rng);
    Expvec e1(vars->size(), 0);
    e1[u] += 2;
    e1[v] += 1;
    pert += Poly::monomial(vars, e1, Rational(coeff(rng), 4));
    Expvec e2(vars->size(), 0);
    e2[pick(rng)] += 3;
    pert += Poly::monomial(vars, e2, Rational(coeff(rng), 8));
    pot += RatFunc(std::move(pert));
    return kahler_from_potential(n, vars, pot,
                                 "random_kahler_" + std::to_string(seed));
}

}  // namespace sympcalc
