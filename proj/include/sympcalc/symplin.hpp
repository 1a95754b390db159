// Symplectic multilinear algebra on a 2n-dimensional fiber: alternating
// forms, the symplectic trace, wedge with the symplectic form, and the
// projection onto the trace-free constituent of k-forms.
//
// Conventions fixed here and used everywhere downstream:
//   * square brackets (antisymmetrization) mean the unweighted average over
//     permutations, so the operation is idempotent;
//   * a wedge of alternating tensors is the antisymmetrized tensor product
//     in that same convention;
//   * basis k-forms e[i1]^...^e[ik] take component +1 at (i1..ik).

#pragma once

#include <optional>
#include <string>

#include "sympcalc/comb.hpp"
#include "sympcalc/tensor.hpp"

namespace sympcalc {

// 2n-dimensional symplectic fiber with J entries in the scalar field.
// J_upper is the inverse normalized by J_ab J^ac = delta_b^c.
struct SympSpace {
    int n = 0;
    Tensor J_lower;
    Tensor J_upper;

    SympSpace(int n_, Tensor j_lower);

    int dim() const { return 2 * n; }
    const VarsPtr& vars() const { return J_lower.vars(); }

    // Standard constant form e1^e2 + e3^e4 + ... over the given variables.
    static SympSpace standard(int n, VarsPtr vars);
};

// Solve a square linear system over the RatFunc field by Gaussian
// elimination; empty when singular.
std::optional<std::vector<RatFunc>> rf_solve(std::vector<std::vector<RatFunc>> m,
                                             std::vector<RatFunc> rhs);

// Exact inverse of a square RatFunc matrix; throws when singular.
std::vector<std::vector<RatFunc>> rf_invert_matrix(
    std::vector<std::vector<RatFunc>> m);

// Basis k-form with determinant normalization; idx must be ascending.
Tensor basis_form(const VarsPtr& vars, int dim, const std::vector<int>& idx);

// Wedge of a pure p-form with a tensor whose first q slots are form slots;
// payload slots after the form slots are carried along.
Tensor wedge_front(const Tensor& a, int p, const Tensor& b, int q);

// Plain wedge of two pure forms.  Degrees beyond the fiber dimension give
// the zero tensor.
Tensor wedge(const Tensor& a, int p, const Tensor& b, int q);

// Contraction of J^ab into the first two form slots; degree drops by two.
Tensor j_trace(const SympSpace& s, const Tensor& t);

// J-trace down to a scalar for a 2-form.
RatFunc j_trace_scalar(const SympSpace& s, const Tensor& t);

// dim of the trace-free part of k-forms: C(2n,k) - C(2n,k-2).
long long perp_dim(int n, int k);

// Projection of a k-form (first k slots; payload carried) onto the
// trace-free constituent: phi - J^psi with psi the unique solution of
// trace(phi - J^psi) = 0.  Requires k <= n; identity for k <= 1.
Tensor perp_project(const SympSpace& s, const Tensor& t, int k);

// Printable form in the ascending basis, e.g. "x*e[1]^e[3] + e[2]^e[4]".
std::string form_to_string(const Tensor& t, int k);

}  // namespace sympcalc
