#include "sympcalc/heisenberg.hpp"

#include <stdexcept>

namespace sympcalc {

namespace {

QMatrix kron_sum(const QMatrix& a, const QMatrix& b) {
    // a x I + I x b
    const size_t ra = a.rows(), rb = b.rows();
    QMatrix m(ra * rb, ra * rb);
    for (size_t i = 0; i < ra; ++i)
        for (size_t j = 0; j < ra; ++j) {
            if (a.at(i, j).is_zero()) continue;
            for (size_t k = 0; k < rb; ++k)
                m.at(i * rb + k, j * rb + k) += a.at(i, j);
        }
    for (size_t i = 0; i < ra; ++i)
        for (size_t k = 0; k < rb; ++k)
            for (size_t l = 0; l < rb; ++l) {
                if (b.at(k, l).is_zero()) continue;
                m.at(i * rb + k, i * rb + l) += b.at(k, l);
            }
    return m;
}

std::vector<std::vector<int>> k_multisets(int r, int k) {
    std::vector<std::vector<int>> out;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    std::vector<int> cur(k, 0);
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

// Insert value into sorted subset; returns (position index in result, sign)
// or sign 0 if the value already occurs.
std::pair<std::vector<int>, int> insert_sorted(const std::vector<int>& s, int v) {
    std::vector<int> out = s;
    int pos = 0;
    while (pos < static_cast<int>(out.size()) && out[pos] < v) ++pos;
    if (pos < static_cast<int>(out.size()) && out[pos] == v) return {{}, 0};
    out.insert(out.begin() + pos, v);
    return {out, (pos % 2 == 0) ? 1 : -1};
}

}  // namespace

QMatrix standard_j_lower(int n) {
    QMatrix j(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        j.at(2 * i, 2 * i + 1) = Rational(1);
        j.at(2 * i + 1, 2 * i) = Rational(-1);
    }
    return j;
}

QMatrix standard_j_upper(int n) {
    // J_ab J^ac = delta_b^c is solved by the same matrix for the standard J.
    return standard_j_lower(n);
}

HRep::HRep(int n_, std::vector<QMatrix> partial_, QMatrix theta_,
           std::string descriptor_)
    : n(n_),
      dim(static_cast<int>(theta_.rows())),
      partial(std::move(partial_)),
      theta(std::move(theta_)),
      descriptor(std::move(descriptor_)) {
    if (static_cast<int>(partial.size()) != 2 * n)
        throw std::invalid_argument("HRep: expected 2n operators");
    QMatrix j = standard_j_lower(n);
    for (int a = 0; a < 2 * n; ++a) {
        if (partial[a].rows() != theta.rows() ||
            partial[a].cols() != theta.cols())
            throw std::invalid_argument("HRep: operator shape mismatch");
        if (!commutator(partial[a], theta).is_zero())
            throw std::invalid_argument("HRep: theta is not central");
        for (int b = 0; b < a; ++b) {
            QMatrix lhs = commutator(partial[a], partial[b]);
            QMatrix rhs = theta.scaled(j.at(a, b) * Rational(2));
            if (!(lhs - rhs).is_zero())
                throw std::invalid_argument(
                    "HRep: bracket relation [p_a, p_b] = 2 J_ab theta fails");
        }
    }
}

HRep trivial_rep(int n) {
    std::vector<QMatrix> p(2 * n, QMatrix(1, 1));
    return HRep(n, std::move(p), QMatrix(1, 1), "trivial");
}

HRep standard_rep(int n) {
    const int d = 2 * n;
    const int dim = d + 2;
    QMatrix j = standard_j_lower(n);
    QMatrix theta(dim, dim);
    theta.at(0, dim - 1) = Rational(1);
    std::vector<QMatrix> p(d, QMatrix(dim, dim));
    for (int a = 0; a < d; ++a) {
        p[a].at(0, 1 + a) = Rational(-1);  // sigma-component: -mu_a
        for (int b = 0; b < d; ++b)
            if (!j.at(a, b).is_zero())
                p[a].at(1 + b, dim - 1) = j.at(a, b);  // mu_b: J_ab rho
    }
    return HRep(n, std::move(p), std::move(theta), "standard");
}

HRep dual_rep(const HRep& r) {
    std::vector<QMatrix> p;
    p.reserve(r.partial.size());
    for (const auto& m : r.partial) p.push_back(m.transposed().scaled(Rational(-1)));
    return HRep(r.n, std::move(p), r.theta.transposed().scaled(Rational(-1)),
                "dual(" + r.descriptor + ")");
}

HRep tensor_rep(const HRep& a, const HRep& b, int dim_bound) {
    if (a.n != b.n) throw std::invalid_argument("tensor_rep: different n");
    if (a.dim * b.dim > dim_bound)
        throw std::invalid_argument("tensor_rep: dimension bound exceeded");
    std::vector<QMatrix> p;
    for (int x = 0; x < 2 * a.n; ++x)
        p.push_back(kron_sum(a.partial[x], b.partial[x]));
    return HRep(a.n, std::move(p), kron_sum(a.theta, b.theta),
                "tensor(" + a.descriptor + "," + b.descriptor + ")");
}

namespace {

QMatrix derivation_on_multisets(const QMatrix& m,
                                const std::vector<std::vector<int>>& basis) {
    std::map<std::vector<int>, int> pos;
    for (size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = static_cast<int>(i);
    QMatrix out(basis.size(), basis.size());
    for (size_t col = 0; col < basis.size(); ++col) {
        const auto& M = basis[col];
        for (size_t t = 0; t < M.size(); ++t)
            for (size_t j = 0; j < m.rows(); ++j) {
                const Rational& v = m.at(j, M[t]);
                if (v.is_zero()) continue;
                std::vector<int> M2 = M;
                M2[t] = static_cast<int>(j);
                std::sort(M2.begin(), M2.end());
                out.at(pos[M2], col) += v;
            }
    }
    return out;
}

QMatrix derivation_on_subsets(const QMatrix& m,
                              const std::vector<std::vector<int>>& basis) {
    std::map<std::vector<int>, int> pos;
    for (size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = static_cast<int>(i);
    QMatrix out(basis.size(), basis.size());
    for (size_t col = 0; col < basis.size(); ++col) {
        const auto& S = basis[col];
        for (size_t t = 0; t < S.size(); ++t)
            for (size_t j = 0; j < m.rows(); ++j) {
                const Rational& v = m.at(j, S[t]);
                if (v.is_zero()) continue;
                std::vector<int> rest;
                for (size_t q = 0; q < S.size(); ++q)
                    if (q != t) rest.push_back(S[q]);
                // sign to pull slot t to the front
                int pull = (t % 2 == 0) ? 1 : -1;
                auto [ins, s2] = insert_sorted(rest, static_cast<int>(j));
                if (s2 == 0) continue;
                out.at(pos[ins], col) += v * Rational(pull * s2);
            }
    }
    return out;
}

}  // namespace

HRep sym_rep(const HRep& r, int k, int dim_bound) {
    auto basis = k_multisets(r.dim, k);
    if (static_cast<int>(basis.size()) > dim_bound)
        throw std::invalid_argument("sym_rep: dimension bound exceeded");
    std::vector<QMatrix> p;
    for (const auto& m : r.partial) p.push_back(derivation_on_multisets(m, basis));
    return HRep(r.n, std::move(p), derivation_on_multisets(r.theta, basis),
                "sym:" + std::to_string(k) + "(" + r.descriptor + ")");
}

HRep ext_rep(const HRep& r, int k, int dim_bound) {
    auto basis = k_subsets(r.dim, k);
    if (static_cast<int>(basis.size()) > dim_bound)
        throw std::invalid_argument("ext_rep: dimension bound exceeded");
    std::vector<QMatrix> p;
    for (const auto& m : r.partial) p.push_back(derivation_on_subsets(m, basis));
    return HRep(r.n, std::move(p), derivation_on_subsets(r.theta, basis),
                "ext:" + std::to_string(k) + "(" + r.descriptor + ")");
}

HRep perp_ext_rep(const HRep& r, int k, int dim_bound) {
    if (r.dim != 2 * r.n + 2)
        throw std::invalid_argument(
            "perp_ext_rep: base must have the standard 2n+2 shape");
    HRep full = ext_rep(r, k, dim_bound * 4);
    auto basis = k_subsets(r.dim, k);
    auto low = k_subsets(r.dim, k - 2);
    // invariant skew form on R^{2n+2}: <(s,m,t),(s',m',t')> =
    // s t' + J^bc m_b m'_c - t s'
    QMatrix omega(r.dim, r.dim);
    omega.at(0, r.dim - 1) = Rational(1);
    omega.at(r.dim - 1, 0) = Rational(-1);
    QMatrix ju = standard_j_upper(r.n);
    for (int b = 0; b < 2 * r.n; ++b)
        for (int c = 0; c < 2 * r.n; ++c)
            omega.at(1 + b, 1 + c) = ju.at(b, c);

    // trace matrix Lambda^k -> Lambda^{k-2}
    QMatrix tr(low.size(), basis.size());
    for (size_t col = 0; col < basis.size(); ++col) {
        const auto& S = basis[col];
        // contract omega into slot pairs (s < t), shuffle sign
        for (size_t s = 0; s < S.size(); ++s)
            for (size_t t = s + 1; t < S.size(); ++t) {
                const Rational& w = omega.at(S[s], S[t]);
                if (w.is_zero()) continue;
                std::vector<int> rest;
                for (size_t q = 0; q < S.size(); ++q)
                    if (q != s && q != t) rest.push_back(S[q]);
                int sign = ((s + t) % 2 == 1) ? 1 : -1;
                // omega antisymmetric: both orders contribute, factor 2
                auto it = std::lower_bound(low.begin(), low.end(), rest);
                tr.at(static_cast<size_t>(it - low.begin()), col) +=
                    w * Rational(2 * sign);
            }
    }
    auto kernel = tr.nullspace();
    const int sub = static_cast<int>(kernel.size());
    if (sub > dim_bound)
        throw std::invalid_argument("perp_ext_rep: dimension bound exceeded");
    QMatrix P(basis.size(), sub);
    for (int j = 0; j < sub; ++j)
        for (size_t i = 0; i < basis.size(); ++i) P.at(i, j) = kernel[j][i];

    // restrict the action: solve P X = M P for each operator
    auto restrict_to = [&](const QMatrix& m) {
        QMatrix mp = m * P;
        QMatrix x(sub, sub);
        for (int col = 0; col < sub; ++col) {
            std::vector<Rational> rhs(basis.size());
            for (size_t i = 0; i < basis.size(); ++i) rhs[i] = mp.at(i, col);
            auto sol = P.solve(rhs);
            if (!sol)
                throw std::logic_error(
                    "perp_ext_rep: action does not preserve the trace-free "
                    "subspace");
            for (int i = 0; i < sub; ++i) x.at(i, col) = (*sol)[i];
            // exactness check: P * sol == rhs
            auto back = P.apply(*sol);
            for (size_t i = 0; i < basis.size(); ++i)
                if (!(back[i] - rhs[i]).is_zero())
                    throw std::logic_error(
                        "perp_ext_rep: action does not preserve the "
                        "trace-free subspace");
        }
        return x;
    };
    std::vector<QMatrix> p;
    for (const auto& m : full.partial) p.push_back(restrict_to(m));
    return HRep(r.n, std::move(p), restrict_to(full.theta),
                "perp_ext:" + std::to_string(k) + "(" + r.descriptor + ")");
}

namespace {

struct RepParser {
    const std::string& s;
    size_t pos = 0;
    int n;
    int dim_bound;

    HRep parse() {
        HRep r = rep();
        skip();
        if (pos != s.size())
            throw std::invalid_argument("rep descriptor: trailing input");
        return r;
    }
    void skip() {
        while (pos < s.size() && isspace((unsigned char)s[pos])) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string word() {
        skip();
        size_t start = pos;
        while (pos < s.size() && (isalnum((unsigned char)s[pos]) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }
    int integer() {
        skip();
        size_t start = pos;
        while (pos < s.size() && isdigit((unsigned char)s[pos])) ++pos;
        if (start == pos)
            throw std::invalid_argument("rep descriptor: expected integer");
        return std::stoi(s.substr(start, pos - start));
    }
    HRep rep() {
        std::string w = word();
        if (w == "trivial") return trivial_rep(n);
        if (w == "standard") return standard_rep(n);
        if (w == "dual") {
            expect('(');
            HRep inner = rep();
            expect(')');
            return dual_rep(inner);
        }
        if (w == "tensor") {
            expect('(');
            HRep a = rep();
            expect(',');
            HRep b = rep();
            expect(')');
            return tensor_rep(a, b, dim_bound);
        }
        if (w == "sym" || w == "ext" || w == "perp_ext") {
            expect(':');
            int k = integer();
            expect('(');
            HRep inner = rep();
            expect(')');
            if (w == "sym") return sym_rep(inner, k, dim_bound);
            if (w == "ext") return ext_rep(inner, k, dim_bound);
            return perp_ext_rep(inner, k, dim_bound);
        }
        throw std::invalid_argument("rep descriptor: unknown constructor '" +
                                    w + "'");
    }
    void expect(char c) {
        if (!eat(c))
            throw std::invalid_argument(std::string("rep descriptor: expected '") +
                                        c + "'");
    }
};

}  // namespace

HRep parse_rep(const std::string& descriptor, int n, int dim_bound) {
    RepParser p{descriptor, 0, n, dim_bound};
    return p.parse();
}

namespace {

// Block matrix of the alternated action Lambda^r x V -> Lambda^{r+1} x V.
QMatrix alt_partial_matrix(const HRep& rep, int r) {
    const int d = 2 * rep.n;
    auto src = k_subsets(d, r);
    auto dst = k_subsets(d, r + 1);
    std::map<std::vector<int>, int> spos;
    for (size_t i = 0; i < src.size(); ++i) spos[src[i]] = static_cast<int>(i);
    QMatrix m(dst.size() * rep.dim, src.size() * rep.dim);
    const Rational scale(1, r + 1);
    for (size_t ti = 0; ti < dst.size(); ++ti) {
        const auto& T = dst[ti];
        for (size_t t = 0; t < T.size(); ++t) {
            std::vector<int> rest;
            for (size_t q = 0; q < T.size(); ++q)
                if (q != t) rest.push_back(T[q]);
            int sign = (t % 2 == 0) ? 1 : -1;
            int col_block = spos[rest] * rep.dim;
            const QMatrix& op = rep.partial[T[t]];
            for (int v2 = 0; v2 < rep.dim; ++v2)
                for (int v = 0; v < rep.dim; ++v) {
                    if (op.at(v2, v).is_zero()) continue;
                    m.at(ti * rep.dim + v2, col_block + v) +=
                        op.at(v2, v) * scale * Rational(sign);
                }
        }
    }
    return m;
}

// J ^ (.) : Lambda^{r-1} x V -> Lambda^{r+1} x V (identity on V).
QMatrix j_wedge_matrix(const HRep& rep, int r) {
    const int d = 2 * rep.n;
    QMatrix j = standard_j_lower(rep.n);
    auto src = k_subsets(d, r - 1);
    auto dst = k_subsets(d, r + 1);
    std::map<std::vector<int>, int> spos;
    for (size_t i = 0; i < src.size(); ++i) spos[src[i]] = static_cast<int>(i);
    QMatrix m(dst.size() * rep.dim, src.size() * rep.dim);
    const Rational coef(2, r * (r + 1));
    for (size_t ti = 0; ti < dst.size(); ++ti) {
        const auto& T = dst[ti];
        for (size_t s = 0; s < T.size(); ++s)
            for (size_t t = s + 1; t < T.size(); ++t) {
                const Rational& w = j.at(T[s], T[t]);
                if (w.is_zero()) continue;
                std::vector<int> rest;
                for (size_t q = 0; q < T.size(); ++q)
                    if (q != s && q != t) rest.push_back(T[q]);
                int sign = ((s + t) % 2 == 1) ? 1 : -1;
                int col_block = spos[rest] * rep.dim;
                for (int v = 0; v < rep.dim; ++v)
                    m.at(ti * rep.dim + v, col_block + v) +=
                        w * coef * Rational(sign);
            }
    }
    return m;
}

// trace-with-partial: Lambda^k x V -> Lambda^{k-1} x V,
// phi -> J^ab partial_a phi_{b,...}.
QMatrix trace_partial_matrix(const HRep& rep, int k) {
    const int d = 2 * rep.n;
    QMatrix ju = standard_j_upper(rep.n);
    auto src = k_subsets(d, k);
    auto dst = k_subsets(d, k - 1);
    std::map<std::vector<int>, int> spos;
    for (size_t i = 0; i < src.size(); ++i) spos[src[i]] = static_cast<int>(i);
    QMatrix m(dst.size() * rep.dim, src.size() * rep.dim);
    for (size_t ei = 0; ei < dst.size(); ++ei) {
        const auto& E = dst[ei];
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                if (ju.at(a, b).is_zero()) continue;
                auto [ins, sign] = insert_sorted(E, b);
                if (sign == 0) continue;
                int col_block = spos[ins] * rep.dim;
                const QMatrix& op = rep.partial[a];
                for (int v2 = 0; v2 < rep.dim; ++v2)
                    for (int v = 0; v < rep.dim; ++v) {
                        if (op.at(v2, v).is_zero()) continue;
                        m.at(ei * rep.dim + v2, col_block + v) +=
                            ju.at(a, b) * Rational(sign) * op.at(v2, v);
                    }
            }
    }
    return m;
}

QMatrix theta_block(const HRep& rep, size_t forms) {
    QMatrix m(forms * rep.dim, forms * rep.dim);
    for (size_t f = 0; f < forms; ++f)
        for (int i = 0; i < rep.dim; ++i)
            for (int j = 0; j < rep.dim; ++j)
                if (!rep.theta.at(i, j).is_zero())
                    m.at(f * rep.dim + i, f * rep.dim + j) = rep.theta.at(i, j);
    return m;
}

// Stack [A; B] vertically and [A B] horizontally.
QMatrix hstack(const QMatrix& a, const QMatrix& b) {
    QMatrix m(a.rows(), a.cols() + b.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
        for (size_t j = 0; j < b.cols(); ++j) m.at(i, a.cols() + j) = b.at(i, j);
    }
    return m;
}

QMatrix vstack(const QMatrix& a, const QMatrix& b) {
    QMatrix m(a.rows() + b.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) m.at(a.rows() + i, j) = b.at(i, j);
    return m;
}

}  // namespace

ChainComplex ce_complex(const HRep& rep) {
    const int d = 2 * rep.n;
    const int L = 2 * rep.n + 1;  // spaces 0..L
    ChainComplex ch;
    auto lam = [&](int r) -> long long {
        return r < 0 ? 0 : binomial(d, r) * rep.dim;
    };
    for (int r = 0; r <= L; ++r) ch.space_dims.push_back(lam(r) + lam(r - 1));

    for (int r = 0; r < L; ++r) {
        // D_r (omega, psi) = (alt d omega + s J^psi, alt d psi + s theta omega)
        const Rational s(r % 2 == 0 ? 1 : -1);
        QMatrix top_left = alt_partial_matrix(rep, r);
        QMatrix bottom_right =
            r >= 1 ? alt_partial_matrix(rep, r - 1)
                   : QMatrix(lam(r), 0);
        QMatrix top_right =
            r >= 1 ? j_wedge_matrix(rep, r).scaled(s)
                   : QMatrix(lam(r + 1), 0);
        QMatrix bottom_left =
            theta_block(rep, binomial(d, r)).scaled(s);
        ch.d.push_back(vstack(hstack(top_left, top_right),
                              hstack(bottom_left, bottom_right)));
    }
    return ch;
}

namespace {

// J-trace on the form part: Lambda^r -> Lambda^{r-2}.
QMatrix j_trace_form_matrix(const HRep& rep, int r) {
    const int d = 2 * rep.n;
    QMatrix ju = standard_j_upper(rep.n);
    auto forms = k_subsets(d, r);
    auto low = k_subsets(d, r - 2);
    std::map<std::vector<int>, int> lpos;
    for (size_t i = 0; i < low.size(); ++i) lpos[low[i]] = static_cast<int>(i);
    QMatrix tr(low.size(), forms.size());
    for (size_t col = 0; col < forms.size(); ++col) {
        const auto& S = forms[col];
        for (size_t s = 0; s < S.size(); ++s)
            for (size_t t2 = s + 1; t2 < S.size(); ++t2) {
                const Rational& w = ju.at(S[s], S[t2]);
                if (w.is_zero()) continue;
                std::vector<int> rest;
                for (size_t q = 0; q < S.size(); ++q)
                    if (q != s && q != t2) rest.push_back(S[q]);
                int sign = ((s + t2) % 2 == 1) ? 1 : -1;
                tr.at(lpos[rest], col) += w * Rational(2 * sign);
            }
    }
    return tr;
}

// Columns spanning the trace-free subspace of Lambda^r (form part only).
QMatrix perp_basis_matrix(const HRep& rep, int r) {
    const int d = 2 * rep.n;
    auto forms = k_subsets(d, r);
    if (r <= 1) return QMatrix::identity(forms.size());
    auto kernel = j_trace_form_matrix(rep, r).nullspace();
    QMatrix P(forms.size(), kernel.size());
    for (size_t j = 0; j < kernel.size(); ++j)
        for (size_t i = 0; i < forms.size(); ++i) P.at(i, j) = kernel[j][i];
    return P;
}

// Tensor the form-space basis with the identity on V.
QMatrix expand_with_v(const QMatrix& p, int dim) {
    QMatrix m(p.rows() * dim, p.cols() * dim);
    for (size_t i = 0; i < p.rows(); ++i)
        for (size_t j = 0; j < p.cols(); ++j) {
            if (p.at(i, j).is_zero()) continue;
            for (int v = 0; v < dim; ++v)
                m.at(i * dim + v, j * dim + v) = p.at(i, j);
        }
    return m;
}

// Coordinates of the columns of `vecs` in the column span of `basis`;
// throws when a column leaves the span.
QMatrix coords_in(const QMatrix& basis, const QMatrix& vecs) {
    QMatrix x(basis.cols(), vecs.cols());
    for (size_t col = 0; col < vecs.cols(); ++col) {
        std::vector<Rational> rhs(vecs.rows());
        for (size_t i = 0; i < vecs.rows(); ++i) rhs[i] = vecs.at(i, col);
        auto sol = basis.solve(rhs);
        if (!sol) throw std::logic_error("coords_in: inconsistent system");
        auto back = basis.apply(*sol);
        for (size_t i = 0; i < vecs.rows(); ++i)
            if (!(back[i] - rhs[i]).is_zero())
                throw std::logic_error("coords_in: image leaves the subspace");
        for (size_t i = 0; i < basis.cols(); ++i) x.at(i, col) = (*sol)[i];
    }
    return x;
}

}  // namespace

ChainComplex bgg_complex(const HRep& rep) {
    const int n = rep.n;
    ChainComplex ch;

    // Perp bases per degree (form part), expanded with V.
    std::vector<QMatrix> P(n + 1, QMatrix(0, 0));
    std::vector<QMatrix> PV(n + 1, QMatrix(0, 0));
    for (int r = 0; r <= n; ++r) {
        P[r] = perp_basis_matrix(rep, r);
        PV[r] = expand_with_v(P[r], rep.dim);
    }

    // spaces: 0..n ascending, n+1..2n+1 descending mirror
    for (int r = 0; r <= n; ++r)
        ch.space_dims.push_back(static_cast<long long>(PV[r].cols()));
    for (int r = n; r >= 0; --r)
        ch.space_dims.push_back(static_cast<long long>(PV[r].cols()));

    // ascending operators
    for (int k = 0; k < n; ++k) {
        QMatrix up_raw = alt_partial_matrix(rep, k);
        if (k >= 1) {
            QMatrix corr = j_wedge_matrix(rep, k) * trace_partial_matrix(rep, k);
            up_raw = up_raw - corr.scaled(Rational(k, 2 * (n + 1 - k)));
        }
        // restrict to perp source, express in perp target coordinates
        ch.d.push_back(coords_in(PV[k + 1], up_raw * PV[k]));
    }
    // middle: alt partial after trace-partial, minus (2/n) theta
    {
        QMatrix second = alt_partial_matrix(rep, n - 1) * trace_partial_matrix(rep, n);
        if (n >= 2) {
            // the second-order part is trace-free on trace-free input, so no
            // projection is needed before subtracting theta
            QMatrix tr = expand_with_v(j_trace_form_matrix(rep, n), rep.dim);
            if (!(tr * (second * PV[n])).is_zero())
                throw std::logic_error(
                    "bgg_complex: middle intermediate has a trace");
        }
        QMatrix th = theta_block(rep, binomial(2 * n, n));
        QMatrix mid = second - th.scaled(Rational(2, n));
        ch.d.push_back(coords_in(PV[n], mid * PV[n]));
    }
    // descending operators
    for (int k = n; k >= 1; --k) {
        QMatrix down = trace_partial_matrix(rep, k);
        ch.d.push_back(coords_in(PV[k - 1], down * PV[k]));
    }
    return ch;
}

std::vector<long long> cohomology_dims(const ChainComplex& chain) {
    const size_t L = chain.d.size();
    for (size_t r = 0; r + 1 < L; ++r) {
        QMatrix prod = chain.d[r + 1] * chain.d[r];
        if (!prod.is_zero())
            throw std::logic_error("cohomology_dims: not a complex at step " +
                                   std::to_string(r));
    }
    std::vector<size_t> ranks(L);
    for (size_t r = 0; r < L; ++r) ranks[r] = chain.d[r].rank();
    std::vector<long long> h;
    for (size_t r = 0; r <= L; ++r) {
        long long nullity =
            r < L ? chain.space_dims[r] - static_cast<long long>(ranks[r])
                  : chain.space_dims[r];
        long long im = r > 0 ? static_cast<long long>(ranks[r - 1]) : 0;
        h.push_back(nullity - im);
    }
    return h;
}

std::vector<DynkinLabel> kostant_predict(const DynkinLabel& labels) {
    const int rank = static_cast<int>(labels.size());
    if (rank < 2)
        throw std::invalid_argument("kostant_predict: rank must be >= 2");
    const int n = rank - 1;
    std::vector<DynkinLabel> out;
    // H^0 drops the first label
    out.push_back(DynkinLabel(labels.begin() + 1, labels.end()));
    // H^r merges labels r and r+1 with +1 at node r (1-based)
    for (int r = 1; r <= n; ++r) {
        DynkinLabel l;
        for (int i = 0; i < r - 1; ++i) l.push_back(labels[i]);
        l.push_back(labels[r - 1] + labels[r] + 1);
        for (int i = r + 1; i <= n; ++i) l.push_back(labels[i]);
        out.push_back(std::move(l));
    }
    // duality for the upper half
    for (int r = n + 1; r <= 2 * n + 1; ++r) out.push_back(out[2 * n + 1 - r]);
    return out;
}

long long weyl_dim(const DynkinLabel& label) {
    const int m = static_cast<int>(label.size());
    if (m < 1) throw std::invalid_argument("weyl_dim: empty label");
    for (int a : label)
        if (a < 0) throw std::invalid_argument("weyl_dim: negative label");
    // e-coordinates: v_j = sum_{i >= j} a_i + (m - j + 1)
    std::vector<Rational> v(m), rho(m);
    for (int j = 0; j < m; ++j) {
        long long s = 0;
        for (int i = j; i < m; ++i) s += label[i];
        rho[j] = Rational(m - j);
        v[j] = Rational(s) + rho[j];
    }
    Rational dim(1);
    for (int i = 0; i < m; ++i) {
        dim *= v[i] / rho[i];  // long roots 2 e_i
        for (int j = i + 1; j < m; ++j) {
            dim *= (v[i] - v[j]) / (rho[i] - rho[j]);
            dim *= (v[i] + v[j]) / (rho[i] + rho[j]);
        }
    }
    if (!dim.is_integer())
        throw std::logic_error("weyl_dim: non-integral result");
    return dim.num().to_i64();
}

CohomologyResult cohomology_suite(const HRep& rep,
                                  const std::optional<DynkinLabel>& labels) {
    CohomologyResult res;
    res.rep = rep.descriptor;
    res.n = rep.n;
    res.ce_dims = cohomology_dims(ce_complex(rep));
    res.bgg_dims = cohomology_dims(bgg_complex(rep));
    res.match = res.ce_dims == res.bgg_dims;
    if (labels) {
        res.kostant_labels = kostant_predict(*labels);
        for (const auto& l : res.kostant_labels)
            res.kostant_dims.push_back(weyl_dim(l));
        res.match = res.match && res.kostant_dims == res.ce_dims;
    }
    return res;
}

}  // namespace sympcalc
