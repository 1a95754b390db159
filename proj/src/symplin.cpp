#include "sympcalc/symplin.hpp"

#include <stdexcept>

namespace sympcalc {

// Exact inverse of a square RatFunc matrix; throws when singular.
std::vector<std::vector<RatFunc>> rf_invert_matrix(std::vector<std::vector<RatFunc>> m) {
    const size_t n = m.size();
    std::vector<std::vector<RatFunc>> inv(n, std::vector<RatFunc>(n, RatFunc(m[0][0].vars())));
    for (size_t i = 0; i < n; ++i)
        inv[i][i] = RatFunc::constant(m[0][0].vars(), Rational(1));
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) throw std::domain_error("rf_invert_matrix: singular matrix");
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        RatFunc d = m[c][c];
        for (size_t j = 0; j < n; ++j) {
            m[c][j] = m[c][j] / d;
            inv[c][j] = inv[c][j] / d;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c].is_zero()) continue;
            RatFunc f = m[i][c];
            for (size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

SympSpace::SympSpace(int n_, Tensor j_lower)
    : n(n_), J_lower(std::move(j_lower)), J_upper(J_lower.vars(), J_lower.dims()) {
    const int d = 2 * n;
    if (J_lower.dims() != std::vector<int>{d, d})
        throw std::invalid_argument("SympSpace: J must be 2n x 2n");
    for (int a = 0; a < d; ++a)
        for (int b = 0; b <= a; ++b)
            if (!(J_lower.at({a, b}) + J_lower.at({b, a})).is_zero())
                throw std::invalid_argument("SympSpace: J not antisymmetric");

    // Invert exactly over the function field; J_ab J^ac = delta_b^c means
    // J_upper as a matrix is inverse(J_lower^T) contracted on the first
    // index: (J^T)^{-1}.
    std::vector<std::vector<RatFunc>> m(d, std::vector<RatFunc>(d, RatFunc(vars())));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) m[a][b] = J_lower.at({a, b});
    auto inv = rf_invert_matrix(m);  // inv[a][b] with sum_b J_ab inv[b][c] = delta_a^c
    // We need X^{ac} with sum_a J_ab X^{ac} = delta_b^c, i.e. X = (J^{-1})^T
    // contracted appropriately: J_ab X^{ac} = (J^T)_{ba} X^{ac} -> X = ((J^T)^{-1})
    // as a matrix in (a,c).  Since J^T = -J, (J^T)^{-1} = -J^{-1}.
    for (int a = 0; a < d; ++a)
        for (int c = 0; c < d; ++c) J_upper.at({a, c}) = -inv[a][c];

    // Exact identity check J_ab J^ac = delta_b^c.
    for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) {
            RatFunc acc(vars());
            for (int a = 0; a < d; ++a) {
                if (J_lower.at({a, b}).is_zero() || J_upper.at({a, c}).is_zero())
                    continue;
                acc += J_lower.at({a, b}) * J_upper.at({a, c});
            }
            RatFunc expect = RatFunc::constant(vars(), Rational(b == c ? 1 : 0));
            if (!(acc - expect).is_zero())
                throw std::logic_error("SympSpace: J inverse identity failed");
        }
}

SympSpace SympSpace::standard(int n, VarsPtr vars) {
    Tensor j(vars, {2 * n, 2 * n});
    for (int i = 0; i < n; ++i) {
        j.at({2 * i, 2 * i + 1}) = RatFunc::constant(vars, Rational(1));
        j.at({2 * i + 1, 2 * i}) = RatFunc::constant(vars, Rational(-1));
    }
    return SympSpace(n, std::move(j));
}

std::optional<std::vector<RatFunc>> rf_solve(std::vector<std::vector<RatFunc>> m,
                                             std::vector<RatFunc> rhs) {
    const size_t n = m.size();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return std::nullopt;
        std::swap(m[p], m[c]);
        std::swap(rhs[p], rhs[c]);
        RatFunc d = m[c][c];
        for (size_t j = c; j < n; ++j) m[c][j] = m[c][j] / d;
        rhs[c] = rhs[c] / d;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c].is_zero()) continue;
            RatFunc f = m[i][c];
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
            rhs[i] -= f * rhs[c];
        }
    }
    return rhs;
}

Tensor basis_form(const VarsPtr& vars, int dim, const std::vector<int>& idx) {
    const int k = static_cast<int>(idx.size());
    Tensor t(vars, std::vector<int>(k, dim));
    if (k == 0) {
        t[0] = RatFunc::constant(vars, Rational(1));
        return t;
    }
    std::vector<int> perm = idx;
    do {
        int sign = 1;
        for (size_t i = 0; i < perm.size(); ++i)
            for (size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) sign = -sign;
        t.at(perm) = RatFunc::constant(vars, Rational(sign));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return t;
}

Tensor wedge_front(const Tensor& a, int p, const Tensor& b, int q) {
    if (!same_vars(a.vars(), b.vars()))
        throw std::invalid_argument("wedge: scalar context mismatch");
    const int dim = p > 0 ? a.dims()[0] : (q > 0 ? b.dims()[0] : 1);
    std::vector<int> out_dims(p + q, dim);
    std::vector<int> payload(b.dims().begin() + q, b.dims().end());
    out_dims.insert(out_dims.end(), payload.begin(), payload.end());
    Tensor out(a.vars(), out_dims);
    if (p + q > dim) return out;  // degree exceeds fiber dimension: zero

    // factor p!q!/(p+q)!
    long long fa = 1, fb = 1, fs = 1;
    for (int i = 2; i <= p; ++i) fa *= i;
    for (int i = 2; i <= q; ++i) fb *= i;
    for (int i = 2; i <= p + q; ++i) fs *= i;
    const Rational factor(fa * fb, fs);

    auto subs = k_subsets(dim, p + q);
    auto choose = k_subsets(p + q, p);
    std::vector<int> ia(p), ib(q), full(out.order()), rest(payload.size(), 0);

    for (const auto& s : subs) {
        bool more_rest = true;
        while (more_rest) {
            RFAccum acc(a.vars());
            for (const auto& c : choose) {
                // positions c of s go to a, complement to b; shuffle sign
                std::vector<bool> used(p + q, false);
                for (int i = 0; i < p; ++i) {
                    ia[i] = s[c[i]];
                    used[c[i]] = true;
                }
                int bi = 0;
                for (int i = 0; i < p + q; ++i)
                    if (!used[i]) ib[bi++] = s[i];
                // parity of the shuffle permutation (a-part then b-part)
                std::vector<int> arranged;
                arranged.reserve(p + q);
                for (int i = 0; i < p; ++i) arranged.push_back(c[i]);
                for (int i = 0; i < p + q; ++i)
                    if (!used[i]) arranged.push_back(i);
                int sign = sort_sign(arranged);

                const RatFunc& va = p ? a.at(ia) : a[0];
                if (va.is_zero()) continue;
                std::vector<int> bidx = ib;
                bidx.insert(bidx.end(), rest.begin(), rest.end());
                const RatFunc& vb = b.at(bidx);
                if (vb.is_zero()) continue;
                if (sign > 0)
                    acc.add_product(va, vb);
                else
                    acc.sub_product(va, vb);
            }
            RatFunc accv = acc.result().scaled(factor);
            if (!accv.is_zero()) {
                std::vector<int> perm = s;
                do {
                    int sign = sort_sign(perm);
                    for (int i = 0; i < p + q; ++i) full[i] = perm[i];
                    for (size_t i = 0; i < rest.size(); ++i)
                        full[p + q + i] = rest[i];
                    out.at(full) = sign > 0 ? accv : -accv;
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
            more_rest = false;
            for (size_t i = rest.size(); i-- > 0;) {
                if (++rest[i] < payload[i]) {
                    more_rest = true;
                    break;
                }
                rest[i] = 0;
            }
        }
    }
    return out;
}

Tensor wedge(const Tensor& a, int p, const Tensor& b, int q) {
    return wedge_front(a, p, b, q);
}

Tensor j_trace(const SympSpace& s, const Tensor& t) {
    if (t.order() < 2) throw std::invalid_argument("j_trace: degree < 2");
    const int d = s.dim();
    std::vector<int> out_dims(t.dims().begin() + 2, t.dims().end());
    Tensor out(t.vars(), out_dims.empty() ? std::vector<int>{1} : out_dims);
    bool scalar_out = out_dims.empty();
    std::vector<int> rest(out_dims.size(), 0);
    bool more = true;
    std::vector<int> full(t.order());
    while (more) {
        RFAccum acc(t.vars());
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                const RatFunc& ju = s.J_upper.at({a, b});
                if (ju.is_zero()) continue;
                full[0] = a;
                full[1] = b;
                for (size_t i = 0; i < rest.size(); ++i) full[2 + i] = rest[i];
                acc.add_product(ju, t.at(full));
            }
        if (scalar_out)
            out[0] = acc.result();
        else
            out.at(rest) = acc.result();
        more = false;
        for (size_t i = rest.size(); i-- > 0;) {
            if (++rest[i] < out_dims[i]) {
                more = true;
                break;
            }
            rest[i] = 0;
        }
    }
    return out;
}

RatFunc j_trace_scalar(const SympSpace& s, const Tensor& t) {
    Tensor tr = j_trace(s, t);
    return tr[0];
}

long long perp_dim(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("perp_dim: k out of range");
    return binomial(2 * n, k) - binomial(2 * n, k - 2);
}

Tensor perp_project(const SympSpace& s, const Tensor& t, int k) {
    if (k > s.n)
        throw std::invalid_argument("perp_project: degree above n has no "
                                    "complementary splitting of this form");
    if (k <= 1) return t;
    const int d = s.dim();
    const VarsPtr& vars = t.vars();

    // Solve trace(t - J ^ psi) = 0 for psi in degree k-2, per payload index.
    auto lower = k_subsets(d, k - 2);
    const size_t m = lower.size();

    // System matrix M[K][I] = trace(J ^ e_I)_K is payload-independent.
    std::vector<std::vector<RatFunc>> M(m, std::vector<RatFunc>(m, RatFunc(vars)));
    for (size_t I = 0; I < m; ++I) {
        Tensor eI = basis_form(vars, d, lower[I]);
        Tensor JeI = wedge_front(s.J_lower, 2, eI, k - 2);
        Tensor tr = j_trace(s, JeI);
        for (size_t K = 0; K < m; ++K)
            M[K][I] = (k - 2 == 0) ? tr[0] : tr.at(lower[K]);
    }

    Tensor traced = j_trace(s, t);
    std::vector<int> payload(t.dims().begin() + k, t.dims().end());
    Tensor psi(vars, [&] {
        std::vector<int> dims(k - 2, d);
        dims.insert(dims.end(), payload.begin(), payload.end());
        if (dims.empty()) dims.push_back(1);
        return dims;
    }());

    std::vector<int> rest(payload.size(), 0);
    bool more = true;
    while (more) {
        std::vector<RatFunc> rhs(m, RatFunc(vars));
        for (size_t K = 0; K < m; ++K) {
            std::vector<int> idx = lower[K];
            idx.insert(idx.end(), rest.begin(), rest.end());
            if (idx.empty()) idx.push_back(0);
            rhs[K] = (k - 2 == 0 && payload.empty()) ? traced[0] : traced.at(idx);
        }
        auto sol = rf_solve(M, rhs);
        if (!sol)
            throw std::logic_error("perp_project: trace system singular");
        for (size_t I = 0; I < m; ++I) {
            if (sol->at(I).is_zero()) continue;
            // write psi components over all permutations of lower[I]
            std::vector<int> perm = lower[I];
            if (perm.empty()) {
                if (rest.empty())
                    psi[0] = sol->at(I);
                else
                    psi.at(rest) = sol->at(I);
                continue;
            }
            do {
                int sign = sort_sign(perm);
                std::vector<int> idx = perm;
                idx.insert(idx.end(), rest.begin(), rest.end());
                psi.at(idx) = sol->at(I).scaled(Rational(sign));
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        more = false;
        for (size_t i = rest.size(); i-- > 0;) {
            if (++rest[i] < payload[i]) {
                more = true;
                break;
            }
            rest[i] = 0;
        }
    }

    Tensor jpsi = wedge_front(s.J_lower, 2, psi, k - 2);
    // wedge_front added a payload slot of extent 1 when psi was a scalar;
    // reshape by construction: dims of jpsi are k form slots + payload.
    Tensor out = t;
    if (payload.empty() && k - 2 == 0) {
        // jpsi has dims {d, d, 1}; drop the dummy payload slot.
        Tensor fixed(vars, t.dims());
        std::vector<int> idx{0, 0};
        for (idx[0] = 0; idx[0] < d; ++idx[0])
            for (idx[1] = 0; idx[1] < d; ++idx[1])
                fixed.at(idx) = jpsi.at({idx[0], idx[1], 0});
        out -= fixed;
    } else {
        out -= jpsi;
    }
    return out;
}

std::string form_to_string(const Tensor& t, int k) {
    const int d = k > 0 ? t.dims()[0] : 1;
    auto subs = k_subsets(d, k);
    std::string out;
    for (const auto& s : subs) {
        const RatFunc& c = k == 0 ? t[0] : t.at(s);
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")";
        for (size_t i = 0; i < s.size(); ++i) {
            out += (i == 0 ? "*" : "^");
            out += "e[" + std::to_string(s[i] + 1) + "]";
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace sympcalc
