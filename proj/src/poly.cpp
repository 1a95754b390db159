#include "sympcalc/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace sympcalc {

VarsPtr make_vars(std::vector<std::string> names) {
    if (names.size() > kMaxVars)
        throw std::invalid_argument("make_vars: at most 7 coordinates");
    return std::make_shared<const Vars>(Vars{std::move(names)});
}

namespace {
inline int shift_for(int var) { return 48 - 8 * var; }
}  // namespace

Mono pack_mono(const Expvec& e) {
    if (e.size() > kMaxVars)
        throw std::invalid_argument("pack_mono: too many variables");
    uint64_t m = 0;
    unsigned deg = 0;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] > 255) throw std::overflow_error("pack_mono: exponent > 255");
        deg += e[i];
        m |= static_cast<uint64_t>(e[i]) << shift_for(static_cast<int>(i));
    }
    if (deg > 255) throw std::overflow_error("pack_mono: total degree > 255");
    m |= static_cast<uint64_t>(deg) << 56;
    return m;
}

Expvec unpack_mono(Mono m, size_t nvars) {
    Expvec e(nvars, 0);
    for (size_t i = 0; i < nvars; ++i)
        e[i] = static_cast<uint16_t>((m >> shift_for(static_cast<int>(i))) & 0xff);
    return e;
}

int mono_total_degree(Mono m) { return static_cast<int>(m >> 56); }

int mono_exponent(Mono m, int var) {
    return static_cast<int>((m >> shift_for(var)) & 0xff);
}

bool mono_divides(Mono b, Mono a) {
    for (int s = 0; s < 64; s += 8)
        if (((a >> s) & 0xff) < ((b >> s) & 0xff)) return false;
    return true;
}

Poly::Poly(VarsPtr vars, const Rational& c) : vars_(std::move(vars)) {
    if (!c.is_zero()) terms_.push_back({0, c});
}

Poly Poly::variable(VarsPtr vars, int index) {
    if (index < 0 || index >= static_cast<int>(vars->size()))
        throw std::out_of_range("Poly::variable: index");
    Expvec e(vars->size(), 0);
    e[index] = 1;
    return monomial(std::move(vars), e, Rational(1));
}

Poly Poly::monomial(VarsPtr vars, const Expvec& e, const Rational& c) {
    Poly p(std::move(vars));
    if (e.size() != p.vars_->size())
        throw std::invalid_argument("Poly: exponent vector length mismatch");
    if (!c.is_zero()) p.terms_.push_back({pack_mono(e), c});
    return p;
}

Poly Poly::from_sorted_terms(VarsPtr vars, TermVec terms) {
    Poly p(std::move(vars));
    p.terms_ = std::move(terms);
    return p;
}

void Poly::set_term(const Expvec& e, const Rational& c) {
    Mono m = pack_mono(e);
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), m,
        [](const Term& t, Mono v) { return t.mono < v; });
    if (it != terms_.end() && it->mono == m) {
        if (c.is_zero())
            terms_.erase(it);
        else
            it->coeff = c;
    } else if (!c.is_zero()) {
        terms_.insert(it, {m, c});
    }
}

Rational Poly::constant_value() const {
    if (!terms_.empty() && terms_.front().mono == 0) return terms_.front().coeff;
    return Rational();
}

int Poly::total_degree() const {
    return terms_.empty() ? -1 : mono_total_degree(terms_.back().mono);
}

int Poly::degree_in(int var) const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, mono_exponent(t.mono, var));
    return d;
}

bool Poly::uses_var(int var) const {
    for (const auto& t : terms_)
        if (mono_exponent(t.mono, var)) return true;
    return false;
}

Expvec Poly::leading_exponent() const {
    if (terms_.empty()) throw std::logic_error("Poly: leading term of zero");
    return unpack_mono(terms_.back().mono, vars_->size());
}

const Rational& Poly::leading_coeff() const {
    if (terms_.empty()) throw std::logic_error("Poly: leading term of zero");
    return terms_.back().coeff;
}

Mono Poly::leading_mono() const {
    if (terms_.empty()) throw std::logic_error("Poly: leading term of zero");
    return terms_.back().mono;
}

void Poly::add_term_(Mono m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), m,
        [](const Term& t, Mono v) { return t.mono < v; });
    if (it != terms_.end() && it->mono == m) {
        it->coeff += c;
        if (it->coeff.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, {m, c});
    }
}

namespace {

// Merge two ascending term vectors with sign applied to b.
Poly::TermVec merge_terms(const Poly::TermVec& a, const Poly::TermVec& b,
                          bool negate_b) {
    Poly::TermVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].mono < b[j].mono) {
            out.push_back(a[i++]);
        } else if (a[i].mono > b[j].mono) {
            out.push_back({b[j].mono, negate_b ? -b[j].coeff : b[j].coeff});
            ++j;
        } else {
            Rational c = negate_b ? a[i].coeff - b[j].coeff
                                  : a[i].coeff + b[j].coeff;
            if (!c.is_zero()) out.push_back({a[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) {
        out.push_back({b[j].mono, negate_b ? -b[j].coeff : b[j].coeff});
        ++j;
    }
    return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& b) {
    terms_ = merge_terms(terms_, b.terms_, false);
    return *this;
}

Poly& Poly::operator-=(const Poly& b) {
    terms_ = merge_terms(terms_, b.terms_, true);
    return *this;
}

Poly operator+(const Poly& a, const Poly& b) {
    return Poly::from_sorted_terms(a.vars_, merge_terms(a.terms_, b.terms_, false));
}

Poly operator-(const Poly& a, const Poly& b) {
    return Poly::from_sorted_terms(a.vars_, merge_terms(a.terms_, b.terms_, true));
}

Poly Poly::operator-() const {
    Poly r(vars_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono, -t.coeff});
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.vars_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.terms_.size() == 1) {
        r.terms_.reserve(b.terms_.size());
        for (const auto& t : b.terms_)
            r.terms_.push_back({t.mono + a.terms_[0].mono,
                                t.coeff * a.terms_[0].coeff});
        return r;
    }
    if (b.terms_.size() == 1) return b * a;

    // Collect all products, sort by key, combine.
    Poly::TermVec prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_)
            prod.push_back({ta.mono + tb.mono, ta.coeff * tb.coeff});
    std::sort(prod.begin(), prod.end(),
              [](const Poly::Term& x, const Poly::Term& y) {
                  return x.mono < y.mono;
              });
    Poly::TermVec out;
    out.reserve(prod.size());
    for (auto& t : prod) {
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coeff += t.coeff;
            if (out.back().coeff.is_zero()) out.pop_back();
        } else {
            out.push_back(std::move(t));
        }
    }
    r.terms_ = std::move(out);
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r(vars_);
    if (c.is_zero()) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono, t.coeff * c});
    return r;
}

Poly Poly::mul_monomial(const Expvec& e, const Rational& c) const {
    Poly r(vars_);
    if (c.is_zero()) return r;
    Mono m = pack_mono(e);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono + m, t.coeff * c});
    return r;
}

Poly Poly::pow(int k) const {
    if (k < 0) throw std::invalid_argument("Poly: negative power");
    Poly r(vars_, Rational(1));
    Poly base = *this;
    while (k) {
        if (k & 1) r = r * base;
        if (k >>= 1) base = base * base;
    }
    return r;
}

Poly Poly::partial(int var) const {
    Poly r(vars_);
    const uint64_t step = (1ull << shift_for(var)) | (1ull << 56);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        int e = mono_exponent(t.mono, var);
        if (e == 0) continue;
        r.terms_.push_back({t.mono - step, t.coeff * Rational(e)});
    }
    // subtracting a fixed step preserves the ascending order
    return r;
}

Rational Poly::evaluate(const std::vector<Rational>& point) const {
    if (point.size() != vars_->size())
        throw std::invalid_argument("Poly: evaluation point arity mismatch");
    Rational acc;
    for (const auto& t : terms_) {
        Rational v = t.coeff;
        for (size_t i = 0; i < point.size(); ++i) {
            int e = mono_exponent(t.mono, static_cast<int>(i));
            for (int k = 0; k < e; ++k) v *= point[i];
        }
        acc += v;
    }
    return acc;
}

bool Poly::operator==(const Poly& b) const {
    if (terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].mono != b.terms_[i].mono ||
            terms_[i].coeff != b.terms_[i].coeff)
            return false;
    return true;
}

bool Poly::divide_exact(const Poly& b, Poly& q) const {
    if (b.is_zero()) throw std::domain_error("Poly: division by zero");
    if (is_zero()) {
        q = Poly(vars_);
        return true;
    }
    Poly rem = *this;
    Poly quo(vars_);
    const Mono lb = b.leading_mono();
    const Rational& cb = b.leading_coeff();
    while (!rem.is_zero()) {
        Mono lr = rem.leading_mono();
        if (!mono_divides(lb, lr)) return false;
        Mono m = lr - lb;
        Rational c = rem.leading_coeff() / cb;
        quo.add_term_(m, c);
        // rem -= b * (c, m)
        TermVec scaled;
        scaled.reserve(b.terms_.size());
        for (const auto& t : b.terms_)
            scaled.push_back({t.mono + m, t.coeff * c});
        rem.terms_ = merge_terms(rem.terms_, scaled, true);
    }
    q = std::move(quo);
    return true;
}

Rational Poly::rational_content() const {
    if (terms_.empty()) return Rational();
    BigInt num_gcd(0), den_lcm(1);
    for (const auto& t : terms_) {
        num_gcd = BigInt::gcd(num_gcd, t.coeff.num());
        den_lcm = den_lcm * (t.coeff.den() / BigInt::gcd(den_lcm, t.coeff.den()));
    }
    Rational content(num_gcd, den_lcm);
    if (leading_coeff().is_negative()) content = -content;
    return content;
}

Poly Poly::primitive_part() const {
    if (terms_.empty()) return *this;
    return scaled(rational_content().inverse());
}

Poly Poly::coeff_of_power_(const Poly& a, int var, int k) {
    Poly r(a.vars_);
    const uint64_t clear = ~((0xffull << shift_for(var)) | (0xffull << 56));
    for (const auto& t : a.terms_) {
        if (mono_exponent(t.mono, var) != k) continue;
        Mono m = t.mono & clear;
        int deg = mono_total_degree(t.mono) - k;
        m |= static_cast<uint64_t>(deg) << 56;
        r.terms_.push_back({m, t.coeff});
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& x, const Term& y) { return x.mono < y.mono; });
    return r;
}

Poly Poly::substitute(int var, const BigInt& value) const {
    Poly r(vars_);
    int dmax = degree_in(var);
    if (dmax <= 0 && !uses_var(var)) return *this;
    std::vector<BigInt> powers(static_cast<size_t>(dmax) + 1, BigInt(1));
    for (int i = 1; i <= dmax; ++i) powers[i] = powers[i - 1] * value;
    const uint64_t clear = ~((0xffull << shift_for(var)) | (0xffull << 56));
    for (const auto& t : terms_) {
        int e = mono_exponent(t.mono, var);
        Mono m = t.mono & clear;
        m |= static_cast<uint64_t>(mono_total_degree(t.mono) - e) << 56;
        r.add_term_(m, t.coeff * Rational(powers[e]));
    }
    return r;
}

BigInt Poly::max_coeff_norm() const {
    BigInt m(0);
    for (const auto& t : terms_) {
        BigInt a = t.coeff.num().abs();
        if (BigInt::compare(a, m) > 0) m = std::move(a);
    }
    return m;
}

namespace {

// Symmetric remainder coefficientwise into (-xi/2, xi/2].
Poly smod_poly(const Poly& p, const BigInt& xi) {
    Poly::TermVec out;
    BigInt half = xi / BigInt(2);
    for (const auto& t : p.terms()) {
        BigInt m = t.coeff.num() % xi;
        if (BigInt::compare(m, half) > 0)
            m = m - xi;
        else if (BigInt::compare(m, -half) < 0)
            m = m + xi;
        if (!m.is_zero()) out.push_back({t.mono, Rational(std::move(m))});
    }
    return Poly::from_sorted_terms(p.vars(), std::move(out));
}

// Full gcd over Z of integer-coefficient polynomials: the integer content
// gcd times the primitive-part gcd (Gauss's lemma); the content carries the
// evaluated variable's contribution inside the heuristic recursion.
Poly gcd_over_z(const Poly& a, const Poly& b) {
    Rational ca = a.rational_content();
    Rational cb = b.rational_content();
    Poly pa = a.primitive_part();
    Poly pb = b.primitive_part();
    Poly g(a.vars());
    if (!Poly::gcd_heuristic_(pa, pb, g)) g = Poly::gcd_prs_(pa, pb);
    BigInt cg = BigInt::gcd(ca.num(), cb.num());
    return g.scaled(Rational(std::move(cg)));
}

}  // namespace

// Heuristic GCD: evaluate one variable at a large integer, take the full
// Z-gcd of the evaluations, reconstruct coefficients from balanced base-xi
// digits, and verify by exact trial division.  Inputs must be primitive with
// integer coefficients; the result is primitive.
bool Poly::gcd_heuristic_(const Poly& a, const Poly& b, Poly& out) {
    const size_t nv = a.vars_->size();
    int var = -1, best = -1;
    for (size_t i = 0; i < nv; ++i) {
        int da = a.degree_in(static_cast<int>(i));
        int db = b.degree_in(static_cast<int>(i));
        if (da <= 0 || db <= 0) continue;
        int score = std::max(da, db);
        if (var < 0 || score > best) {
            var = static_cast<int>(i);
            best = score;
        }
    }
    if (var < 0) return false;

    BigInt na = a.max_coeff_norm(), nb = b.max_coeff_norm();
    BigInt xi = (BigInt::compare(na, nb) < 0 ? na : nb) * BigInt(2) + BigInt(29);
    for (int attempt = 0; attempt < 4; ++attempt) {
        Poly ea = a.substitute(var, xi);
        Poly eb = b.substitute(var, xi);
        if (!ea.is_zero() && !eb.is_zero()) {
            Poly g(a.vars_);
            if (ea.is_constant() || eb.is_constant()) {
                BigInt acc(0);
                for (const auto& t : ea.terms_) acc = BigInt::gcd(acc, t.coeff.num());
                for (const auto& t : eb.terms_) acc = BigInt::gcd(acc, t.coeff.num());
                g = Poly(a.vars_, Rational(std::move(acc)));
            } else {
                g = gcd_over_z(ea, eb);
            }
            // Reconstruct base-xi digits.
            Poly rec(a.vars_);
            Poly cursor = std::move(g);
            int power = 0;
            bool ok = true;
            while (!cursor.is_zero()) {
                if (power > 255) {
                    ok = false;
                    break;
                }
                Poly digit = smod_poly(cursor, xi);
                if (!digit.is_zero()) {
                    Expvec shift(nv, 0);
                    shift[var] = static_cast<uint16_t>(power);
                    rec += digit.mul_monomial(shift, Rational(1));
                }
                Poly diff = cursor - digit;
                Poly next(a.vars_);
                for (const auto& t : diff.terms_) {
                    BigInt q, r;
                    BigInt::divmod(t.coeff.num(), xi, q, r);
                    if (!r.is_zero()) {
                        ok = false;
                        break;
                    }
                    if (!q.is_zero()) next.terms_.push_back({t.mono, Rational(std::move(q))});
                }
                if (!ok) break;
                cursor = std::move(next);
                ++power;
            }
            if (ok && !rec.is_zero()) {
                rec = rec.primitive_part();
                Poly q(a.vars_);
                if (a.divide_exact(rec, q) && b.divide_exact(rec, q)) {
                    out = std::move(rec);
                    return true;
                }
            }
        }
        xi = xi * xi / BigInt(3) + BigInt(31);
    }
    return false;
}

Poly Poly::gcd_inner_(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero() ? a : b.primitive_part();
    if (b.is_zero()) return a.primitive_part();

    Poly pa = a.primitive_part();
    Poly pb = b.primitive_part();
    if (pa == pb) return pa;
    if (pa.is_constant() || pb.is_constant()) return Poly(a.vars_, Rational(1));

    // Divisibility fast paths cover the common power-of-a-factor cases.
    Poly q(a.vars_);
    if (pa.divide_exact(pb, q)) return pb;
    if (pb.divide_exact(pa, q)) return pa;

    Poly h(a.vars_);
    if (gcd_heuristic_(pa, pb, h)) return h.primitive_part();
    return gcd_prs_(pa, pb);
}

Poly Poly::content_in_var_(const Poly& a, int var) {
    Poly g(a.vars_);
    int d = a.degree_in(var);
    for (int k = 0; k <= d; ++k) {
        Poly ck = coeff_of_power_(a, var, k);
        if (ck.is_zero()) continue;
        g = gcd_inner_(g, ck);
        if (g.is_constant() && !g.is_zero()) break;
    }
    return g;
}

Poly Poly::pseudo_rem_(const Poly& a, const Poly& b, int var) {
    const int db = b.degree_in(var);
    Poly lb = coeff_of_power_(b, var, db);
    Poly r = a;
    Expvec shift(a.vars_->size(), 0);
    while (!r.is_zero()) {
        int dr = r.degree_in(var);
        if (dr < db) break;
        Poly lr = coeff_of_power_(r, var, dr);
        shift[var] = static_cast<uint16_t>(dr - db);
        r = lb * r - (lr * b).mul_monomial(shift, Rational(1));
    }
    return r;
}

// Primitive pseudo-remainder sequence fallback.
Poly Poly::gcd_prs_(const Poly& pa, const Poly& pb) {
    const VarsPtr& vars = pa.vars_;
    const size_t nv = vars->size();
    int var = -1, best = 0;
    for (size_t i = 0; i < nv; ++i) {
        int da = pa.degree_in(static_cast<int>(i));
        int db = pb.degree_in(static_cast<int>(i));
        if (da <= 0 || db <= 0) continue;
        int score = std::min(da, db);
        if (var < 0 || score < best) {
            var = static_cast<int>(i);
            best = score;
        }
    }
    if (var < 0) {
        // No variable occurs in both: the primitive parts are coprime.
        return Poly(vars, Rational(1));
    }

    Poly ca = content_in_var_(pa, var);
    Poly cb = content_in_var_(pb, var);
    Poly cg = gcd_inner_(ca, cb);
    Poly ua(vars), ub(vars);
    if (!pa.divide_exact(ca, ua) || !pb.divide_exact(cb, ub))
        throw std::logic_error("Poly::gcd: content division failed");

    Poly f = ua, g = ub;
    if (f.degree_in(var) < g.degree_in(var)) std::swap(f, g);
    while (true) {
        Poly r = pseudo_rem_(f, g, var);
        if (r.is_zero()) break;
        if (r.degree_in(var) == 0) {
            g = Poly(vars, Rational(1));
            break;
        }
        Poly cr = content_in_var_(r, var);
        Poly rp(vars);
        if (!r.divide_exact(cr, rp))
            throw std::logic_error("Poly::gcd: primitive part failed");
        f = std::move(g);
        g = std::move(rp);
    }
    return (cg * g).primitive_part();
}

Poly Poly::gcd(const Poly& a, const Poly& b) {
    if (!same_vars(a.vars(), b.vars()))
        throw std::invalid_argument("Poly::gcd: variable set mismatch");
    return gcd_inner_(a, b);
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rational cc = it->coeff;
        if (first) {
            if (cc.is_negative()) {
                out += "-";
                cc = -cc;
            }
            first = false;
        } else if (cc.is_negative()) {
            out += " - ";
            cc = -cc;
        } else {
            out += " + ";
        }
        bool any_var = false;
        std::string mono;
        for (size_t i = 0; i < vars_->size(); ++i) {
            int e = mono_exponent(it->mono, static_cast<int>(i));
            if (!e) continue;
            if (any_var) mono += "*";
            mono += vars_->names[i];
            if (e > 1) mono += "^" + std::to_string(e);
            any_var = true;
        }
        if (!any_var) {
            out += cc.to_string();
        } else if (cc.is_one()) {
            out += mono;
        } else if (cc.is_integer()) {
            out += cc.num().to_string() + "*" + mono;
        } else {
            out += cc.num().to_string() + "*" + mono + "/" + cc.den().to_string();
        }
    }
    return out;
}

}  // namespace sympcalc
