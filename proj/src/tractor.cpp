#include "sympcalc/tractor.hpp"

#include <random>
#include <stdexcept>

namespace sympcalc {

namespace {

// Multisets of size k from {0..r-1}, ascending, lexicographic.
std::vector<std::vector<int>> k_multisets(int r, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k, 0);
    if (k == 0) {
        out.push_back({});
        return out;
    }
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == r - 1) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[i];
    }
    return out;
}

}  // namespace

TractorConnection::TractorConnection(FedPtr fed)
    : fed_(std::move(fed)), dec_(decompose_curvature(*fed_)) {
    const int d = fed_->dim();
    const int r = d + 2;
    const VarsPtr& vars = fed_->vars();
    const Tensor& J = fed_->chart.space.J_lower;
    const Tensor& Ju = fed_->chart.space.J_upper;

    std::vector<Tensor> A(d, Tensor(vars, {r, r}));
    for (int a = 0; a < d; ++a) {
        Tensor& m = A[a];
        m.at({0, 1 + a}) = RatFunc::constant(vars, Rational(-1));
        for (int b = 0; b < d; ++b) {
            m.at({1 + b, 0}) = dec_.Phi.at({a, b});
            for (int c = 0; c < d; ++c)
                m.at({1 + b, 1 + c}) = -fed_->gamma.at({c, a, b});
            m.at({1 + b, d + 1}) = J.at({a, b});
            RatFunc acc(vars);
            for (int e = 0; e < d; ++e) {
                if (dec_.Phi.at({a, e}).is_zero() || Ju.at({e, b}).is_zero())
                    continue;
                acc += dec_.Phi.at({a, e}) * Ju.at({e, b});
            }
            m.at({d + 1, 1 + b}) = -acc;
        }
        m.at({d + 1, 0}) = dec_.S.at({a});
    }
    bundle_ = std::make_shared<BundleConnection>(fed_, r, std::move(A));

    // Post-construction check: the connection is metric for the skew form,
    // verified on all pairs of frame sections.
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Tensor ei(vars, {r}), ej(vars, {r});
            ei.at({i}) = RatFunc::constant(vars, Rational(1));
            ej.at({j}) = RatFunc::constant(vars, Rational(1));
            RatFunc pairing = skew_form(*this, ei, ej);
            BundleValuedForm bi(0, false, ei), bj(0, false, ej);
            Tensor di = coupled_deriv(*bundle_, bi);
            Tensor dj = coupled_deriv(*bundle_, bj);
            for (int a = 0; a < d; ++a) {
                // slice the derivative sections at direction a
                Tensor si(vars, {r}), sj(vars, {r});
                for (int p = 0; p < r; ++p) {
                    si.at({p}) = di.at({a, p});
                    sj.at({p}) = dj.at({a, p});
                }
                RatFunc lhs = pairing.partial(a);
                RatFunc rhs = skew_form(*this, si, ej) + skew_form(*this, ei, sj);
                if (!(lhs - rhs).is_zero())
                    throw std::logic_error(
                        "TractorConnection: skew form not preserved");
            }
        }
}

Tensor tractor_section(const TractorConnection& t, const RatFunc& sigma,
                       const Tensor& mu, const RatFunc& rho) {
    const int d = t.fed()->dim();
    Tensor s(t.fed()->vars(), {d + 2});
    s.at({t.sigma_slot()}) = sigma;
    for (int b = 0; b < d; ++b) s.at({t.mu_slot(b)}) = mu.at({b});
    s.at({t.rho_slot()}) = rho;
    return s;
}

Tensor tractor_nabla(const TractorConnection& t, const Tensor& section) {
    const FedosovStructure& f = *t.fed();
    const int d = f.dim();
    const VarsPtr& vars = f.vars();
    const Tensor& J = f.chart.space.J_lower;
    const Tensor& Ju = f.chart.space.J_upper;
    const CurvatureDecomp& dec = t.decomp();

    const RatFunc& sigma = section.at({t.sigma_slot()});
    const RatFunc& rho = section.at({t.rho_slot()});
    Tensor out(vars, {d, d + 2});
    for (int a = 0; a < d; ++a) {
        // sigma row: nabla_a sigma - mu_a
        out.at({a, t.sigma_slot()}) =
            sigma.partial(a) - section.at({t.mu_slot(a)});
        // mu row: nabla_a mu_b + J_ab rho + Phi_ab sigma
        for (int b = 0; b < d; ++b) {
            RatFunc acc = section.at({t.mu_slot(b)}).partial(a);
            for (int e = 0; e < d; ++e) {
                const RatFunc& g = f.gamma.at({e, a, b});
                if (!g.is_zero() && !section.at({t.mu_slot(e)}).is_zero())
                    acc -= g * section.at({t.mu_slot(e)});
            }
            acc += J.at({a, b}) * rho;
            acc += dec.Phi.at({a, b}) * sigma;
            out.at({a, t.mu_slot(b)}) = std::move(acc);
        }
        // rho row: nabla_a rho - Phi_ab J^bc mu_c + S_a sigma
        RatFunc acc = rho.partial(a);
        for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c) {
                if (dec.Phi.at({a, b}).is_zero() || Ju.at({b, c}).is_zero() ||
                    section.at({t.mu_slot(c)}).is_zero())
                    continue;
                acc -= dec.Phi.at({a, b}) * Ju.at({b, c}) *
                       section.at({t.mu_slot(c)});
            }
        acc += dec.S.at({a}) * sigma;
        out.at({a, t.rho_slot()}) = std::move(acc);
    }
    return out;
}

RatFunc skew_form(const TractorConnection& t, const Tensor& s1, const Tensor& s2) {
    const int d = t.fed()->dim();
    const Tensor& Ju = t.fed()->chart.space.J_upper;
    RatFunc acc = s1.at({t.sigma_slot()}) * s2.at({t.rho_slot()}) -
                  s1.at({t.rho_slot()}) * s2.at({t.sigma_slot()});
    for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) {
            if (Ju.at({b, c}).is_zero() || s1.at({t.mu_slot(b)}).is_zero() ||
                s2.at({t.mu_slot(c)}).is_zero())
                continue;
            acc += Ju.at({b, c}) * s1.at({t.mu_slot(b)}) * s2.at({t.mu_slot(c)});
        }
    return acc;
}

CheckReport tractor_curvature_check(const TractorConnection& t) {
    CheckReport rep;
    rep.suite = "tractor_curvature";
    const FedosovStructure& f = *t.fed();
    const int d = f.dim();
    const int n = f.n();
    const int r = d + 2;
    const VarsPtr& vars = f.vars();
    const Tensor& J = f.chart.space.J_lower;
    const Tensor& Ju = f.chart.space.J_upper;
    const CurvatureDecomp& dec = t.decomp();
    const BundleConnection& c = t.bundle();

    Tensor nablaY = cov_deriv(f, dec.Y, {Slot::Down, Slot::Down, Slot::Down});
    Tensor nablaS = cov_deriv(f, dec.S, {Slot::Down});

    bool ok = true;
    std::string wit;
    for (int a = 0; a < d && ok; ++a)
        for (int b = 0; b < a && ok; ++b) {
            // direct commutator of the connection matrices
            Tensor lhs(vars, {r, r});
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    RatFunc acc = c.A[b].at({i, j}).partial(a) -
                                  c.A[a].at({i, j}).partial(b);
                    for (int m = 0; m < r; ++m) {
                        if (!c.A[a].at({i, m}).is_zero() &&
                            !c.A[b].at({m, j}).is_zero())
                            acc += c.A[a].at({i, m}) * c.A[b].at({m, j});
                        if (!c.A[b].at({i, m}).is_zero() &&
                            !c.A[a].at({m, j}).is_zero())
                            acc -= c.A[b].at({i, m}) * c.A[a].at({m, j});
                    }
                    lhs.at({i, j}) = std::move(acc);
                }

            // displayed formula
            Tensor rhs(vars, {r, r});
            rhs.at({t.sigma_slot(), t.rho_slot()}) = J.at({a, b}).scaled(Rational(2));
            for (int dd = 0; dd < d; ++dd) {
                // mu_d row
                for (int e = 0; e < d; ++e) {
                    RatFunc acc = -dec.V.at({a, b, e, dd});
                    RatFunc m2(vars);
                    for (int cc = 0; cc < d; ++cc) {
                        if (Ju.at({cc, e}).is_zero() ||
                            dec.Phi.at({cc, dd}).is_zero())
                            continue;
                        m2 += Ju.at({cc, e}) * dec.Phi.at({cc, dd});
                    }
                    acc += (J.at({a, b}) * m2).scaled(Rational(2));
                    rhs.at({t.mu_slot(dd), t.mu_slot(e)}) = std::move(acc);
                }
                rhs.at({t.mu_slot(dd), t.sigma_slot()}) =
                    dec.Y.at({a, b, dd}) -
                    (J.at({a, b}) * dec.S.at({dd})).scaled(Rational(2));
                // rho row, mu coefficient
                RatFunc acc(vars);
                for (int cc = 0; cc < d; ++cc) {
                    if (!dec.Y.at({a, b, cc}).is_zero() &&
                        !Ju.at({cc, dd}).is_zero())
                        acc -= dec.Y.at({a, b, cc}) * Ju.at({cc, dd});
                    if (!dec.S.at({cc}).is_zero() && !Ju.at({cc, dd}).is_zero())
                        acc += (J.at({a, b}) * dec.S.at({cc}) * Ju.at({cc, dd}))
                                   .scaled(Rational(2));
                }
                rhs.at({t.rho_slot(), t.mu_slot(dd)}) = std::move(acc);
            }
            // rho row, sigma coefficient
            {
                RatFunc vphi(vars), ny(vars);
                for (int cc = 0; cc < d; ++cc)
                    for (int dd = 0; dd < d; ++dd) {
                        if (Ju.at({cc, dd}).is_zero()) continue;
                        for (int e = 0; e < d; ++e) {
                            if (dec.V.at({a, b, e, cc}).is_zero() ||
                                dec.Phi.at({dd, e}).is_zero())
                                continue;
                            vphi += Ju.at({cc, dd}) * dec.V.at({a, b, e, cc}) *
                                    dec.Phi.at({dd, e});
                        }
                        if (!nablaY.at({cc, a, b, dd}).is_zero())
                            ny += Ju.at({cc, dd}) * nablaY.at({cc, a, b, dd});
                    }
                RatFunc tail(vars);
                for (int cc = 0; cc < d; ++cc)
                    for (int dd = 0; dd < d; ++dd) {
                        if (Ju.at({cc, dd}).is_zero()) continue;
                        RatFunc inner = nablaS.at({cc, dd});
                        for (int e = 0; e < d; ++e)
                            for (int ff = 0; ff < d; ++ff) {
                                if (Ju.at({e, ff}).is_zero() ||
                                    dec.Phi.at({cc, e}).is_zero() ||
                                    dec.Phi.at({dd, ff}).is_zero())
                                    continue;
                                inner -= Ju.at({e, ff}) * dec.Phi.at({cc, e}) *
                                         dec.Phi.at({dd, ff});
                            }
                        if (!inner.is_zero()) tail += Ju.at({cc, dd}) * inner;
                    }
                rhs.at({t.rho_slot(), t.sigma_slot()}) =
                    (vphi - ny).scaled(Rational(1, 2 * n)) +
                    (J.at({a, b}) * tail).scaled(Rational(1, n));
            }

            for (int i = 0; i < r && ok; ++i)
                for (int j = 0; j < r && ok; ++j) {
                    RatFunc diff = lhs.at({i, j}) - rhs.at({i, j});
                    if (!diff.is_zero()) {
                        ok = false;
                        wit = "(a,b)=(" + std::to_string(a) + "," +
                              std::to_string(b) + ") entry (" +
                              std::to_string(i) + "," + std::to_string(j) +
                              "): " + diff.to_string();
                    }
                }
        }
    rep.add("commutator equals displayed curvature formula", ok, wit);

    // Skew-form Leibniz on a pair of random polynomial sections.
    {
        std::mt19937_64 rng(2);
        std::uniform_int_distribution<int> coeff(-2, 2);
        std::uniform_int_distribution<int> pick(0, d - 1);
        auto rand_section = [&] {
            Tensor s(vars, {r});
            for (int i = 0; i < r; ++i) {
                Expvec e(vars->size(), 0);
                e[pick(rng)] += 1;
                Poly p = Poly::monomial(vars, e, Rational(coeff(rng)));
                p += Poly(vars, Rational(coeff(rng)));
                s.at({i}) = RatFunc(std::move(p));
            }
            return s;
        };
        Tensor s1 = rand_section(), s2 = rand_section();
        Tensor d1 = tractor_nabla(t, s1), d2 = tractor_nabla(t, s2);
        bool lok = true;
        std::string lwit;
        RatFunc pairing = skew_form(t, s1, s2);
        for (int a = 0; a < d && lok; ++a) {
            Tensor u(vars, {r}), v(vars, {r});
            for (int p = 0; p < r; ++p) {
                u.at({p}) = d1.at({a, p});
                v.at({p}) = d2.at({a, p});
            }
            RatFunc diff = pairing.partial(a) - skew_form(t, u, s2) -
                           skew_form(t, s1, v);
            if (!diff.is_zero()) {
                lok = false;
                lwit = "direction " + std::to_string(a) + ": " + diff.to_string();
            }
        }
        rep.add("skew form parallel along random sections", lok, lwit);
    }

    // The matrix assembly agrees with the componentwise formula.
    {
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<int> coeff(-2, 2);
        Tensor s(vars, {r});
        for (int i = 0; i < r; ++i) {
            Poly p(vars, Rational(coeff(rng)));
            Expvec e(vars->size(), 0);
            e[i % vars->size()] += 1;
            p += Poly::monomial(vars, e, Rational(coeff(rng)));
            s.at({i}) = RatFunc(std::move(p));
        }
        BundleValuedForm sec(0, false, s);
        Tensor via_matrices = coupled_deriv(c, sec);
        Tensor via_formula = tractor_nabla(t, s);
        rep.add("matrix assembly matches the three-component formula",
                (via_matrices - via_formula).is_zero());
    }
    return rep;
}

CheckReport check_flatness_equivalence(const TractorConnection& t) {
    CheckReport rep;
    rep.suite = "tractor_flatness";
    bool v_zero = t.decomp().V.is_zero();
    FlatnessResult fl = symplectic_flatness(t.bundle());
    rep.add("flat iff V = 0", fl.flat == v_zero,
            "V zero: " + std::to_string(v_zero) +
                ", flat: " + std::to_string(fl.flat) +
                (fl.witness.empty() ? "" : ", " + fl.witness));
    return rep;
}

BundleConnection dual_connection(const BundleConnection& c) {
    const int d = c.dim();
    std::vector<Tensor> A(d, Tensor(c.vars(), {c.rank, c.rank}));
    for (int a = 0; a < d; ++a)
        for (int i = 0; i < c.rank; ++i)
            for (int j = 0; j < c.rank; ++j)
                A[a].at({i, j}) = -c.A[a].at({j, i});
    return BundleConnection(c.fed, c.rank, std::move(A));
}

BundleConnection tensor_connection(const BundleConnection& a,
                                   const BundleConnection& b, int max_rank) {
    if (a.fed != b.fed)
        throw std::invalid_argument("tensor_connection: different bases");
    const int d = a.dim();
    const int r = a.rank * b.rank;
    if (r > max_rank) throw std::invalid_argument("tensor_connection: rank cap");
    std::vector<Tensor> A(d, Tensor(a.vars(), {r, r}));
    for (int x = 0; x < d; ++x)
        for (int i = 0; i < a.rank; ++i)
            for (int j = 0; j < b.rank; ++j) {
                const int row = i * b.rank + j;
                for (int p = 0; p < a.rank; ++p)
                    if (!a.A[x].at({i, p}).is_zero())
                        A[x].at({row, p * b.rank + j}) += a.A[x].at({i, p});
                for (int q = 0; q < b.rank; ++q)
                    if (!b.A[x].at({j, q}).is_zero())
                        A[x].at({row, i * b.rank + q}) += b.A[x].at({j, q});
            }
    return BundleConnection(a.fed, r, std::move(A));
}

BundleConnection sym_power_connection(const BundleConnection& c, int k,
                                      int max_rank) {
    const int d = c.dim();
    auto basis = k_multisets(c.rank, k);
    const int r = static_cast<int>(basis.size());
    if (r > max_rank)
        throw std::invalid_argument("sym_power_connection: rank cap");
    std::map<std::vector<int>, int> pos;
    for (int i = 0; i < r; ++i) pos[basis[i]] = i;

    std::vector<Tensor> A(d, Tensor(c.vars(), {r, r}));
    for (int x = 0; x < d; ++x)
        for (int col = 0; col < r; ++col) {
            const auto& M = basis[col];
            for (size_t t = 0; t < M.size(); ++t)
                for (int j = 0; j < c.rank; ++j) {
                    const RatFunc& v = c.A[x].at({j, M[t]});
                    if (v.is_zero()) continue;
                    std::vector<int> M2 = M;
                    M2[t] = j;
                    std::sort(M2.begin(), M2.end());
                    A[x].at({pos[M2], col}) += v;
                }
        }
    return BundleConnection(c.fed, r, std::move(A));
}

BundleConnection induced_connection(const TractorConnection& t,
                                    TractorFunctor functor, int max_rank) {
    switch (functor) {
        case TractorFunctor::Dual:
            return dual_connection(t.bundle());
        case TractorFunctor::Sym2:
            return sym_power_connection(t.bundle(), 2, max_rank);
        case TractorFunctor::Sym3:
            return sym_power_connection(t.bundle(), 3, max_rank);
        case TractorFunctor::TensorSquare:
            return tensor_connection(t.bundle(), t.bundle(), max_rank);
    }
    throw std::logic_error("induced_connection: unknown functor");
}

}  // namespace sympcalc
