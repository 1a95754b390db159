// Exact linear algebra over the rationals: dense matrices, fraction-free
// Gaussian elimination (Bareiss) for ranks, reduced row echelon form for
// nullspaces and solves.  Matrix sizes here stay in the hundreds, so dense
// arithmetic is fine.

#pragma once

#include <optional>
#include <vector>

#include "sympcalc/rational.hpp"

namespace sympcalc {

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rational(0)) {}

    static QMatrix identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    Rational& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Rational& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    friend QMatrix operator+(const QMatrix& x, const QMatrix& y);
    friend QMatrix operator-(const QMatrix& x, const QMatrix& y);
    friend QMatrix operator*(const QMatrix& x, const QMatrix& y);
    QMatrix scaled(const Rational& c) const;
    QMatrix transposed() const;
    bool is_zero() const;
    bool operator==(const QMatrix& y) const {
        return rows_ == y.rows_ && cols_ == y.cols_ && a_ == y.a_;
    }

    std::vector<Rational> apply(const std::vector<Rational>& v) const;

    // Exact rank via fraction-free (Bareiss) elimination on an integer
    // scaling of the matrix.
    size_t rank() const;

    // Basis of the right nullspace (column vectors), via rational RREF.
    std::vector<std::vector<Rational>> nullspace() const;

    // Solve A x = b exactly; empty when inconsistent.  When the solution is
    // not unique an arbitrary representative is returned (free vars = 0).
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;

    // Inverse; empty when singular.
    std::optional<QMatrix> inverse() const;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;

    // RREF in place, returns pivot columns.
    std::vector<size_t> rref_();
};

// Commutator x*y - y*x.
QMatrix commutator(const QMatrix& x, const QMatrix& y);

}  // namespace sympcalc
