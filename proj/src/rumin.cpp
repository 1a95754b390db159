#include "sympcalc/rumin.hpp"

#include <random>
#include <stdexcept>

namespace sympcalc {

BundleConnection::BundleConnection(FedPtr fed_, int rank_, std::vector<Tensor> a)
    : fed(std::move(fed_)), rank(rank_), A(std::move(a)) {
    if (rank < 1) throw std::invalid_argument("BundleConnection: rank < 1");
    if (static_cast<int>(A.size()) != dim())
        throw std::invalid_argument("BundleConnection: expected 2n matrices");
    for (const auto& m : A)
        if (m.dims() != std::vector<int>{rank, rank})
            throw std::invalid_argument("BundleConnection: matrix shape");
}

BundleConnection BundleConnection::trivial(FedPtr fed, int rank) {
    const int d = fed->dim();
    std::vector<Tensor> a(d, Tensor(fed->vars(), {rank, rank}));
    return BundleConnection(std::move(fed), rank, std::move(a));
}

BundleConnection BundleConnection::tau_twisted(FedPtr fed) {
    const int d = fed->dim();
    const VarsPtr& vars = fed->vars();
    const Tensor& J = fed->chart.space.J_lower;
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            if (!J.at({a, b}).is_zero() && !J.at({a, b}).is_constant())
                throw std::invalid_argument(
                    "tau_twisted: needs a constant-J chart");
    // tau_b = x^c J_cb, so that alt(d tau)_ab = J_ab exactly.
    std::vector<Tensor> A(d, Tensor(vars, {1, 1}));
    for (int b = 0; b < d; ++b) {
        RatFunc acc(vars);
        for (int c = 0; c < d; ++c) {
            if (J.at({c, b}).is_zero()) continue;
            acc += RatFunc::variable(vars, c) * J.at({c, b});
        }
        A[b].at({0, 0}) = acc;
    }
    return BundleConnection(std::move(fed), 1, std::move(A));
}

BundleConnection BundleConnection::random(FedPtr fed, int rank, uint64_t seed) {
    const int d = fed->dim();
    const VarsPtr& vars = fed->vars();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::uniform_int_distribution<int> pick(0, d - 1);
    std::uniform_int_distribution<int> degree(0, 1);
    std::vector<Tensor> A(d, Tensor(vars, {rank, rank}));
    for (int a = 0; a < d; ++a)
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) {
                Poly p(vars);
                Expvec e(vars->size(), 0);
                if (degree(rng)) e[pick(rng)]++;
                p += Poly::monomial(vars, e, Rational(coeff(rng)));
                A[a].at({i, j}) = RatFunc(std::move(p));
            }
    return BundleConnection(std::move(fed), rank, std::move(A));
}

Tensor coupled_deriv(const BundleConnection& c, const BundleValuedForm& f) {
    const int d = c.dim();
    const int k = f.degree;
    const Tensor& G = c.fed->gamma;
    std::vector<int> out_dims{d};
    out_dims.insert(out_dims.end(), f.comps.dims().begin(), f.comps.dims().end());
    Tensor out(c.vars(), out_dims);

    std::vector<int> idx(f.comps.order(), 0);
    std::vector<int> oidx(out.order());
    const bool flat_gamma = G.is_zero();
    bool more = true;
    while (more) {
        for (int a = 0; a < d; ++a) {
            oidx[0] = a;
            for (int i = 0; i < f.comps.order(); ++i) oidx[i + 1] = idx[i];
            RFAccum acc(c.vars());
            if (!f.comps.at(idx).is_zero()) acc.add(f.comps.at(idx).partial(a));
            if (!flat_gamma) {
                for (int s = 0; s < k; ++s) {
                    std::vector<int> jdx = idx;
                    for (int e = 0; e < d; ++e) {
                        jdx[s] = e;
                        acc.sub_product(G.at({e, a, idx[s]}), f.comps.at(jdx));
                    }
                }
            }
            // connection action on the value slot
            {
                std::vector<int> jdx = idx;
                const int vslot = f.comps.order() - 1;
                for (int j = 0; j < c.rank; ++j) {
                    jdx[vslot] = j;
                    acc.add_product(c.A[a].at({idx[vslot], j}), f.comps.at(jdx));
                }
            }
            out.at(oidx) = acc.result();
        }
        more = f.comps.next_index(idx);
    }
    return out;
}

BundleValuedForm apply_endo(const ThetaEndo& m, const BundleValuedForm& f) {
    const int rank = m.dims()[0];
    Tensor out(f.comps.vars(), f.comps.dims());
    std::vector<int> idx(f.comps.order(), 0);
    const int vslot = f.comps.order() - 1;
    bool more = true;
    while (more) {
        if (idx[vslot] == 0) {
            for (int i = 0; i < rank; ++i) {
                RatFunc acc(f.comps.vars());
                std::vector<int> jdx = idx;
                for (int j = 0; j < rank; ++j) {
                    jdx[vslot] = j;
                    const RatFunc& v = f.comps.at(jdx);
                    if (v.is_zero() || m.at({i, j}).is_zero()) continue;
                    acc += m.at({i, j}) * v;
                }
                jdx[vslot] = i;
                out.at(jdx) = std::move(acc);
            }
        }
        more = f.comps.next_index(idx);
    }
    return BundleValuedForm(f.degree, f.perp, std::move(out));
}

BundleValuedForm dperp_up(const BundleConnection& c, const BundleValuedForm& f) {
    const int n = c.n();
    const int k = f.degree;
    if (k >= n)
        throw std::invalid_argument("dperp_up: degree must be below n");
    Tensor nabla = coupled_deriv(c, f);
    if (k == 0) return BundleValuedForm(1, false, std::move(nabla));

    Tensor alt = alternate_front(nabla, k + 1);
    // trace correction: k/(2(n+1-k)) J ^ (J^ab nabla_a f_b...)
    Tensor tau = j_trace(c.fed->chart.space, nabla);
    Tensor corr = wedge_front(c.fed->chart.space.J_lower, 2, tau, k - 1);
    alt -= corr.scaled(Rational(k, 2 * (n + 1 - k)));
    return BundleValuedForm(k + 1, true, std::move(alt));
}

BundleValuedForm dperp_down(const BundleConnection& c, const BundleValuedForm& f) {
    if (f.degree < 1) throw std::invalid_argument("dperp_down: degree 0 input");
    Tensor nabla = coupled_deriv(c, f);
    Tensor out = j_trace(c.fed->chart.space, nabla);
    return BundleValuedForm(f.degree - 1, f.degree - 1 >= 1 && f.perp,
                            std::move(out));
}

ThetaEndo theta_of(const BundleConnection& c) {
    const int d = c.dim();
    const VarsPtr& vars = c.vars();
    const Tensor& Ju = c.fed->chart.space.J_upper;
    Tensor theta(vars, {c.rank, c.rank});
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const RatFunc& ju = Ju.at({a, b});
            if (ju.is_zero()) continue;
            for (int i = 0; i < c.rank; ++i)
                for (int j = 0; j < c.rank; ++j) {
                    RFAccum term(vars);
                    if (!c.A[b].at({i, j}).is_zero())
                        term.add(c.A[b].at({i, j}).partial(a));
                    for (int m = 0; m < c.rank; ++m)
                        term.add_product(c.A[a].at({i, m}), c.A[b].at({m, j}));
                    if (!term.is_zero_so_far())
                        theta.at({i, j}) += ju * term.result();
                }
        }
    // J^ab nabla_a nabla_b = 2n Theta, and d = 2n.
    return theta.scaled(Rational(1, d));
}

FlatnessResult symplectic_flatness(const BundleConnection& c) {
    const int d = c.dim();
    FlatnessResult res{true, "", theta_of(c)};
    const Tensor& J = c.fed->chart.space.J_lower;
    for (int a = 0; a < d && res.flat; ++a)
        for (int b = 0; b < a && res.flat; ++b)
            for (int i = 0; i < c.rank && res.flat; ++i)
                for (int j = 0; j < c.rank && res.flat; ++j) {
                    RFAccum facc(c.vars());
                    facc.add(c.A[b].at({i, j}).partial(a));
                    facc.sub(c.A[a].at({i, j}).partial(b));
                    for (int m = 0; m < c.rank; ++m) {
                        facc.add_product(c.A[a].at({i, m}), c.A[b].at({m, j}));
                        facc.sub_product(c.A[b].at({i, m}), c.A[a].at({m, j}));
                    }
                    facc.sub_product(J.at({a, b}).scaled(Rational(2)),
                                     res.theta.at({i, j}));
                    RatFunc diff = facc.result();
                    if (!diff.is_zero()) {
                        res.flat = false;
                        res.witness = "curvature[" + std::to_string(a) + "," +
                                      std::to_string(b) + "](" +
                                      std::to_string(i) + "," +
                                      std::to_string(j) +
                                      ") - 2J*Theta = " + diff.to_string();
                    }
                }
    return res;
}

bool is_symplectically_flat(const BundleConnection& c) {
    return symplectic_flatness(c).flat;
}

BundleValuedForm middle_operator(const BundleConnection& c,
                                 const BundleValuedForm& f,
                                 const ThetaEndo& theta) {
    const int n = c.n();
    if (f.degree != n)
        throw std::invalid_argument("middle_operator: degree must equal n");
    BundleValuedForm down = dperp_down(c, f);
    Tensor nabla = coupled_deriv(c, down);
    Tensor raw = alternate_front(nabla, n);
    if (n >= 2) {
        Tensor tr = j_trace(c.fed->chart.space, raw);
        if (!tr.is_zero())
            throw std::logic_error(
                "middle_operator: intermediate derivative has a trace "
                "(connection not symplectically flat?)");
    }
    BundleValuedForm theta_f = apply_endo(theta, f);
    raw -= theta_f.comps.scaled(Rational(2, n));
    return BundleValuedForm(n, true, std::move(raw));
}

Tensor nabla_endo(const BundleConnection& c, const ThetaEndo& m) {
    const int d = c.dim();
    Tensor out(c.vars(), {d, c.rank, c.rank});
    for (int a = 0; a < d; ++a)
        for (int i = 0; i < c.rank; ++i)
            for (int j = 0; j < c.rank; ++j) {
                RatFunc acc = m.at({i, j}).is_zero() ? RatFunc(c.vars())
                                                     : m.at({i, j}).partial(a);
                for (int p = 0; p < c.rank; ++p) {
                    if (!c.A[a].at({i, p}).is_zero() && !m.at({p, j}).is_zero())
                        acc += c.A[a].at({i, p}) * m.at({p, j});
                    if (!m.at({i, p}).is_zero() && !c.A[a].at({p, j}).is_zero())
                        acc -= m.at({i, p}) * c.A[a].at({p, j});
                }
                out.at({a, i, j}) = std::move(acc);
            }
    return out;
}

std::vector<Expvec> monomials_up_to(const VarsPtr& vars, int max_deg) {
    std::vector<Expvec> out;
    Expvec cur(vars->size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t pos, int left) {
        if (pos == cur.size()) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[pos] = static_cast<uint16_t>(e);
            rec(pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    rec(0, max_deg);
    return out;
}

std::vector<Tensor> perp_frame(const SympSpace& s, int k) {
    const int d = s.dim();
    std::vector<Tensor> frame;
    if (k == 0) {
        Tensor one(s.vars(), {1});
        one[0] = RatFunc::constant(s.vars(), Rational(1));
        frame.push_back(std::move(one));
        return frame;
    }
    for (const auto& idx : k_subsets(d, k)) {
        Tensor e = basis_form(s.vars(), d, idx);
        frame.push_back(k >= 2 ? perp_project(s, e, k) : std::move(e));
    }
    return frame;
}

namespace {

struct OpChain {
    // op[i] maps degree src_deg[i] to src_deg[i+1]; names for the report.
    std::vector<std::function<BundleValuedForm(const BundleValuedForm&)>> ops;
    std::vector<int> src_deg;
    std::vector<std::string> names;
};

OpChain rs_chain(const BundleConnection& c, const ThetaEndo& theta) {
    const int n = c.n();
    OpChain ch;
    ch.ops.push_back([&c](const BundleValuedForm& f) { return dperp_up(c, f); });
    ch.src_deg.push_back(0);
    ch.names.push_back("nabla");
    for (int k = 1; k < n; ++k) {
        ch.ops.push_back([&c](const BundleValuedForm& f) { return dperp_up(c, f); });
        ch.src_deg.push_back(k);
        ch.names.push_back("dperp_up[" + std::to_string(k) + "]");
    }
    ch.ops.push_back([&c, &theta](const BundleValuedForm& f) {
        return middle_operator(c, f, theta);
    });
    ch.src_deg.push_back(n);
    ch.names.push_back("middle");
    for (int k = n; k >= 1; --k) {
        ch.ops.push_back(
            [&c](const BundleValuedForm& f) { return dperp_down(c, f); });
        ch.src_deg.push_back(k);
        ch.names.push_back("dperp_down[" + std::to_string(k) + "]");
    }
    return ch;
}

std::string monomial_name(const VarsPtr& vars, const Expvec& e) {
    std::string s;
    for (size_t i = 0; i < e.size(); ++i)
        for (int p = 0; p < e[i]; ++p) {
            if (!s.empty()) s += "*";
            s += vars->names[i];
        }
    return s.empty() ? "1" : s;
}

// All sections x^alpha * frame_j * basis-vector_i of the degree-k space.
struct SectionSet {
    std::vector<BundleValuedForm> sections;
    std::vector<std::string> names;
};

SectionSet sections_of(const BundleConnection& c, int k, bool perp_space,
                       int deg_bound) {
    SectionSet out;
    const SympSpace& s = c.fed->chart.space;
    const int d = c.dim();
    std::vector<Tensor> frame =
        perp_space ? perp_frame(s, k)
                   : [&] {
                         std::vector<Tensor> fr;
                         if (k == 0) return perp_frame(s, 0);
                         for (const auto& idx : k_subsets(d, k))
                             fr.push_back(basis_form(s.vars(), d, idx));
                         return fr;
                     }();
    auto monos = monomials_up_to(c.vars(), deg_bound);
    for (size_t fj = 0; fj < frame.size(); ++fj) {
        for (const auto& mono : monos) {
            RatFunc m{Poly::monomial(c.vars(), mono, Rational(1))};
            for (int vi = 0; vi < c.rank; ++vi) {
                std::vector<int> dims(k, d);
                dims.push_back(c.rank);
                Tensor comps(c.vars(), dims);
                if (k == 0) {
                    comps.at({vi}) = m;
                } else {
                    std::vector<int> idx(k, 0);
                    bool more = true;
                    while (more) {
                        const RatFunc& v = frame[fj].at(idx);
                        if (!v.is_zero()) {
                            std::vector<int> full = idx;
                            full.push_back(vi);
                            comps.at(full) = v * m;
                        }
                        more = frame[fj].next_index(idx);
                    }
                }
                out.sections.emplace_back(k, perp_space && k >= 2,
                                          std::move(comps));
                out.names.push_back("frame" + std::to_string(fj) + "*" +
                                    monomial_name(c.vars(), mono) + "*v" +
                                    std::to_string(vi));
            }
        }
    }
    return out;
}

std::string first_nonzero_component(const Tensor& t) {
    std::vector<int> idx(t.order(), 0);
    bool more = true;
    while (more) {
        if (!t.at(idx).is_zero()) {
            std::string s = "[";
            for (size_t i = 0; i < idx.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(idx[i]);
            }
            return s + "] = " + t.at(idx).to_string();
        }
        more = t.next_index(idx);
    }
    return "";
}

}  // namespace

JetContext::JetContext(const VarsPtr& vars, int order_cap) {
    betas = monomials_up_to(vars, order_cap);
    for (size_t i = 0; i < betas.size(); ++i)
        index[betas[i]] = static_cast<int>(i);
}

Tensor jet_coupled_deriv(const BundleConnection& c, const Tensor& comps,
                         int degree, const JetContext& jets) {
    const int d = c.dim();
    const Tensor& G = c.fed->gamma;
    std::vector<int> out_dims{d};
    out_dims.insert(out_dims.end(), comps.dims().begin(), comps.dims().end());
    Tensor out(c.vars(), out_dims);
    const int order = comps.order();
    const int vslot = order - 2;
    const int jslot = order - 1;
    const bool flat_gamma = G.is_zero();

    std::vector<int> idx(order, 0);
    std::vector<int> oidx(order + 1);
    bool more = true;
    while (more) {
        const Expvec& beta = jets.betas[idx[jslot]];
        for (int a = 0; a < d; ++a) {
            oidx[0] = a;
            for (int i = 0; i < order; ++i) oidx[i + 1] = idx[i];
            RFAccum acc(c.vars());
            // coefficient derivative at the same jet
            if (!comps.at(idx).is_zero()) acc.add(comps.at(idx).partial(a));
            // jet raising: contribution from beta - e_a
            if (beta[a] > 0) {
                Expvec lower = beta;
                lower[a] -= 1;
                std::vector<int> jdx = idx;
                jdx[jslot] = jets.index.at(lower);
                acc.add(comps.at(jdx));
            }
            if (!flat_gamma) {
                for (int s = 0; s < degree; ++s) {
                    std::vector<int> jdx = idx;
                    for (int e = 0; e < d; ++e) {
                        jdx[s] = e;
                        acc.sub_product(G.at({e, a, idx[s]}), comps.at(jdx));
                    }
                }
            }
            {
                std::vector<int> jdx = idx;
                for (int j = 0; j < c.rank; ++j) {
                    jdx[vslot] = j;
                    acc.add_product(c.A[a].at({idx[vslot], j}), comps.at(jdx));
                }
            }
            out.at(oidx) = acc.result();
        }
        more = comps.next_index(idx);
    }
    return out;
}

JetForm jet_dperp_up(const BundleConnection& c, const JetForm& f,
                     const JetContext& jets) {
    const int n = c.n();
    const int k = f.degree;
    if (k >= n) throw std::invalid_argument("jet_dperp_up: degree must be below n");
    Tensor nabla = jet_coupled_deriv(c, f.comps, k, jets);
    if (k == 0) return JetForm{1, std::move(nabla)};
    Tensor alt = alternate_front(nabla, k + 1);
    Tensor tau = j_trace(c.fed->chart.space, nabla);
    Tensor corr = wedge_front(c.fed->chart.space.J_lower, 2, tau, k - 1);
    alt -= corr.scaled(Rational(k, 2 * (n + 1 - k)));
    return JetForm{k + 1, std::move(alt)};
}

JetForm jet_dperp_down(const BundleConnection& c, const JetForm& f,
                       const JetContext& jets) {
    if (f.degree < 1)
        throw std::invalid_argument("jet_dperp_down: degree 0 input");
    Tensor nabla = jet_coupled_deriv(c, f.comps, f.degree, jets);
    return JetForm{f.degree - 1, j_trace(c.fed->chart.space, nabla)};
}

JetForm jet_middle(const BundleConnection& c, const JetForm& f,
                   const ThetaEndo& theta, const JetContext& jets) {
    const int n = c.n();
    if (f.degree != n)
        throw std::invalid_argument("jet_middle: degree must equal n");
    JetForm down = jet_dperp_down(c, f, jets);
    Tensor nabla = jet_coupled_deriv(c, down.comps, down.degree, jets);
    Tensor raw = alternate_front(nabla, n);
    if (n >= 2) {
        Tensor tr = j_trace(c.fed->chart.space, raw);
        if (!tr.is_zero())
            throw std::logic_error(
                "jet_middle: intermediate derivative has a trace "
                "(connection not symplectically flat?)");
    }
    // theta on the value slot (order-2 position)
    const int order = f.comps.order();
    const int vslot = order - 2;
    Tensor tf(c.vars(), f.comps.dims());
    std::vector<int> idx(order, 0);
    bool more = true;
    while (more) {
        if (idx[vslot] == 0) {
            for (int i = 0; i < c.rank; ++i) {
                RFAccum acc(c.vars());
                std::vector<int> jdx = idx;
                for (int j = 0; j < c.rank; ++j) {
                    jdx[vslot] = j;
                    acc.add_product(theta.at({i, j}), f.comps.at(jdx));
                }
                jdx[vslot] = i;
                tf.at(jdx) = acc.result();
            }
        }
        more = f.comps.next_index(idx);
    }
    raw -= tf.scaled(Rational(2, n));
    return JetForm{n, std::move(raw)};
}

CheckReport verify_rs_complex_jets(const BundleConnection& c) {
    CheckReport rep;
    rep.suite = "rs_complex";
    FlatnessResult fl = symplectic_flatness(c);
    rep.add("symplectically flat", fl.flat, fl.witness);

    const int n = c.n();
    const SympSpace& s = c.fed->chart.space;
    const int d = c.dim();
    JetContext jets(c.vars(), 3);

    // operator chain in jet form
    std::vector<std::function<JetForm(const JetForm&)>> ops;
    std::vector<int> src_deg;
    std::vector<std::string> names;
    for (int k = 0; k < n; ++k) {
        ops.push_back([&c, &jets](const JetForm& f) {
            return jet_dperp_up(c, f, jets);
        });
        src_deg.push_back(k);
        names.push_back(k == 0 ? "nabla" : "dperp_up[" + std::to_string(k) + "]");
    }
    ops.push_back([&c, &fl, &jets](const JetForm& f) {
        return jet_middle(c, f, fl.theta, jets);
    });
    src_deg.push_back(n);
    names.push_back("middle");
    for (int k = n; k >= 1; --k) {
        ops.push_back([&c, &jets](const JetForm& f) {
            return jet_dperp_down(c, f, jets);
        });
        src_deg.push_back(k);
        names.push_back("dperp_down[" + std::to_string(k) + "]");
    }

    for (size_t i = 0; i + 1 < ops.size(); ++i) {
        const int k = src_deg[i];
        const bool perp_src = k >= 2 && k <= n;
        std::vector<Tensor> frame =
            perp_src ? perp_frame(s, k) : [&] {
                std::vector<Tensor> fr;
                if (k == 0) return perp_frame(s, 0);
                for (const auto& idxs : k_subsets(d, k))
                    fr.push_back(basis_form(s.vars(), d, idxs));
                return fr;
            }();
        bool ok = true;
        std::string wit;
        for (size_t fj = 0; fj < frame.size() && ok; ++fj) {
            for (int vi = 0; vi < c.rank && ok; ++vi) {
                std::vector<int> dims(k, d);
                dims.push_back(c.rank);
                dims.push_back(jets.size());
                Tensor comps(c.vars(), dims);
                if (k == 0) {
                    comps.at({vi, 0}) = RatFunc::constant(c.vars(), Rational(1));
                } else {
                    std::vector<int> idx(k, 0);
                    bool more = true;
                    while (more) {
                        if (!frame[fj].at(idx).is_zero()) {
                            std::vector<int> full = idx;
                            full.push_back(vi);
                            full.push_back(0);
                            comps.at(full) = frame[fj].at(idx);
                        }
                        more = frame[fj].next_index(idx);
                    }
                }
                try {
                    JetForm sec{k, std::move(comps)};
                    JetForm mid = ops[i](sec);
                    JetForm end = ops[i + 1](mid);
                    if (!end.comps.is_zero()) {
                        ok = false;
                        wit = "jet slice frame" + std::to_string(fj) + "*v" +
                              std::to_string(vi) + " -> component " +
                              first_nonzero_component(end.comps);
                    }
                } catch (const std::exception& e) {
                    ok = false;
                    wit = "jet slice frame" + std::to_string(fj) + "*v" +
                          std::to_string(vi) + " -> " + e.what();
                }
            }
        }
        rep.add(names[i + 1] + " . " + names[i], ok, wit, k);
    }
    return rep;
}

CheckReport verify_rs_complex(const BundleConnection& c, int deg_bound) {
    CheckReport rep;
    rep.suite = "rs_complex";
    FlatnessResult fl = symplectic_flatness(c);
    rep.add("symplectically flat", fl.flat, fl.witness);

    OpChain ch = rs_chain(c, fl.theta);
    const int n = c.n();
    for (size_t i = 0; i + 1 < ch.ops.size(); ++i) {
        const int k = ch.src_deg[i];
        const bool perp_src = k >= 2 && k <= n;
        SectionSet src = sections_of(c, k, perp_src, deg_bound);
        bool ok = true;
        std::string wit;
        for (size_t si = 0; si < src.sections.size() && ok; ++si) {
            try {
                BundleValuedForm mid = ch.ops[i](src.sections[si]);
                BundleValuedForm end = ch.ops[i + 1](mid);
                if (!end.comps.is_zero()) {
                    ok = false;
                    wit = "section " + src.names[si] + " -> component " +
                          first_nonzero_component(end.comps);
                }
            } catch (const std::exception& e) {
                ok = false;
                wit = "section " + src.names[si] + " -> " + e.what();
            }
        }
        rep.add(ch.names[i + 1] + " . " + ch.names[i], ok, wit, k);
    }
    return rep;
}

namespace {

// One stage of the two-row resolution: at level r the element is a pair
// (omega in r-forms, psi in (r-1)-forms); psi is absent at r = 0.
struct StagePair {
    BundleValuedForm omega;
    BundleValuedForm psi;
    bool has_psi = false;
};

StagePair stage_zero(const BundleConnection& c, int r) {
    const int d = c.dim();
    std::vector<int> od(r, d);
    od.push_back(c.rank);
    std::vector<int> pd(r >= 1 ? r - 1 : 0, d);
    pd.push_back(c.rank);
    return StagePair{BundleValuedForm(r, false, Tensor(c.vars(), od)),
                     BundleValuedForm(r >= 1 ? r - 1 : 0, false,
                                      Tensor(c.vars(), pd)),
                     r >= 1};
}

// (omega, psi) -> (alt nabla omega + s J^psi, alt nabla psi + s Theta omega)
// with s = (-1)^r.
StagePair lemma1_differential(const BundleConnection& c, const ThetaEndo& theta,
                              int r, const StagePair& in) {
    const Rational sgn(r % 2 == 0 ? 1 : -1);
    StagePair out = stage_zero(c, r + 1);

    Tensor o = alternate_front(coupled_deriv(c, in.omega), r + 1);
    if (in.has_psi) {
        Tensor jpsi = wedge_front(c.fed->chart.space.J_lower, 2, in.psi.comps,
                                  in.psi.degree);
        o += jpsi.scaled(sgn);
    }
    out.omega = BundleValuedForm(r + 1, false, std::move(o));

    Tensor p = in.has_psi ? alternate_front(coupled_deriv(c, in.psi), r)
                          : Tensor(c.vars(), out.psi.comps.dims());
    p += apply_endo(theta, in.omega).comps.scaled(sgn);
    out.psi = BundleValuedForm(r, false, std::move(p));
    return out;
}

}  // namespace

CheckReport lemma1_complex(const BundleConnection& c, int deg_bound) {
    CheckReport rep;
    rep.suite = "lemma1_complex";
    FlatnessResult fl = symplectic_flatness(c);
    rep.add("symplectically flat", fl.flat, fl.witness);
    if (!fl.flat) return rep;

    Tensor ntheta = nabla_endo(c, fl.theta);
    rep.add("nabla Theta = 0", ntheta.is_zero(),
            ntheta.is_zero() ? "" : first_nonzero_component(ntheta));

    const int n = c.n();
    for (int r = 0; r + 1 <= 2 * n; ++r) {
        bool ok = true;
        std::string wit;
        auto run = [&](const BundleValuedForm& sec, bool into_psi,
                       const std::string& name) {
            if (!ok) return;
            StagePair in = stage_zero(c, r);
            if (into_psi)
                in.psi = sec;
            else
                in.omega = sec;
            StagePair mid = lemma1_differential(c, fl.theta, r, in);
            StagePair end = lemma1_differential(c, fl.theta, r + 1, mid);
            if (!end.omega.comps.is_zero() || !end.psi.comps.is_zero()) {
                ok = false;
                wit = name + " -> " +
                      first_nonzero_component(end.omega.comps.is_zero()
                                                  ? end.psi.comps
                                                  : end.omega.comps);
            }
        };
        SectionSet omega_secs = sections_of(c, r, false, deg_bound);
        for (size_t si = 0; si < omega_secs.sections.size() && ok; ++si)
            run(omega_secs.sections[si], false,
                "omega section " + omega_secs.names[si]);
        if (r >= 1) {
            SectionSet psi_secs = sections_of(c, r - 1, false, deg_bound);
            for (size_t si = 0; si < psi_secs.sections.size() && ok; ++si)
                run(psi_secs.sections[si], true,
                    "psi section " + psi_secs.names[si]);
        }
        rep.add("stage " + std::to_string(r + 1) + " after stage " +
                    std::to_string(r),
                ok, wit, r);
    }
    return rep;
}

}  // namespace sympcalc
