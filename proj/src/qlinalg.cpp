#include "sympcalc/qlinalg.hpp"

#include <stdexcept>

namespace sympcalc {

QMatrix QMatrix::identity(size_t n) {
    QMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

QMatrix operator+(const QMatrix& x, const QMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
        throw std::invalid_argument("QMatrix: shape mismatch");
    QMatrix r(x.rows_, x.cols_);
    for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] + y.a_[i];
    return r;
}

QMatrix operator-(const QMatrix& x, const QMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
        throw std::invalid_argument("QMatrix: shape mismatch");
    QMatrix r(x.rows_, x.cols_);
    for (size_t i = 0; i < x.a_.size(); ++i) r.a_[i] = x.a_[i] - y.a_[i];
    return r;
}

QMatrix operator*(const QMatrix& x, const QMatrix& y) {
    if (x.cols_ != y.rows_)
        throw std::invalid_argument("QMatrix: shape mismatch in product");
    QMatrix r(x.rows_, y.cols_);
    for (size_t i = 0; i < x.rows_; ++i)
        for (size_t k = 0; k < x.cols_; ++k) {
            const Rational& v = x.at(i, k);
            if (v.is_zero()) continue;
            for (size_t j = 0; j < y.cols_; ++j) {
                const Rational& w = y.at(k, j);
                if (w.is_zero()) continue;
                r.at(i, j) += v * w;
            }
        }
    return r;
}

QMatrix QMatrix::scaled(const Rational& c) const {
    QMatrix r(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * c;
    return r;
}

QMatrix QMatrix::transposed() const {
    QMatrix r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool QMatrix::is_zero() const {
    for (const auto& v : a_)
        if (!v.is_zero()) return false;
    return true;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("QMatrix: apply shape");
    std::vector<Rational> r(rows_, Rational(0));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            if (at(i, j).is_zero() || v[j].is_zero()) continue;
            r[i] += at(i, j) * v[j];
        }
    return r;
}

size_t QMatrix::rank() const {
    if (rows_ == 0 || cols_ == 0) return 0;
    // Scale every row to integers (rank is invariant under row scaling).
    std::vector<std::vector<BigInt>> m(rows_, std::vector<BigInt>(cols_));
    for (size_t i = 0; i < rows_; ++i) {
        BigInt lcm(1);
        for (size_t j = 0; j < cols_; ++j) {
            const BigInt& d = at(i, j).den();
            lcm = lcm * (d / BigInt::gcd(lcm, d));
        }
        for (size_t j = 0; j < cols_; ++j)
            m[i][j] = at(i, j).num() * (lcm / at(i, j).den());
    }

    // Bareiss fraction-free elimination with row pivoting.
    size_t rank = 0;
    BigInt prev(1);
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; ++c) {
        size_t p = r;
        while (p < rows_ && m[p][c].is_zero()) ++p;
        if (p == rows_) continue;
        std::swap(m[p], m[r]);
        for (size_t i = r + 1; i < rows_; ++i) {
            for (size_t j = c + 1; j < cols_; ++j)
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) / prev;
            m[i][c] = BigInt(0);
        }
        prev = m[r][c];
        ++r;
        ++rank;
    }
    return rank;
}

std::vector<size_t> QMatrix::rref_() {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; ++c) {
        size_t p = r;
        while (p < rows_ && at(p, c).is_zero()) ++p;
        if (p == rows_) continue;
        for (size_t j = 0; j < cols_; ++j) std::swap(at(p, j), at(r, j));
        Rational inv = at(r, c).inverse();
        for (size_t j = c; j < cols_; ++j) at(r, j) *= inv;
        for (size_t i = 0; i < rows_; ++i) {
            if (i == r || at(i, c).is_zero()) continue;
            Rational f = at(i, c);
            for (size_t j = c; j < cols_; ++j) at(i, j) -= f * at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<Rational>> QMatrix::nullspace() const {
    QMatrix m = *this;
    std::vector<size_t> pivots = m.rref_();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (size_t c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rational> v(cols_, Rational(0));
        v[c] = Rational(1);
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m.at(r, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> QMatrix::solve(
    const std::vector<Rational>& b) const {
    if (b.size() != rows_) throw std::invalid_argument("QMatrix: solve shape");
    QMatrix aug(rows_, cols_ + 1);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_) = b[i];
    }
    std::vector<size_t> pivots = aug.rref_();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<Rational> x(cols_, Rational(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
    return x;
}

std::optional<QMatrix> QMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("QMatrix: inverse of non-square");
    QMatrix aug(rows_, 2 * cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = Rational(1);
    }
    std::vector<size_t> pivots = aug.rref_();
    if (pivots.size() != rows_) return std::nullopt;
    for (size_t r = 0; r < rows_; ++r)
        if (pivots[r] != r) return std::nullopt;
    QMatrix inv(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
}

QMatrix commutator(const QMatrix& x, const QMatrix& y) {
    return x * y - y * x;
}

}  // namespace sympcalc
