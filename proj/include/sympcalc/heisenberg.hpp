// Finite-dimensional representations of the (2n+1)-dimensional Heisenberg
// algebra over Q, their Chevalley-Eilenberg complexes realized in split
// form, the finite-dimensional analogue of the trace-free complex, exact
// cohomology dimensions via fraction-free elimination, the highest-weight
// bookkeeping for type C (moving between C_{n+1} and C_n labels), and the
// Weyl dimension formula.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sympcalc/comb.hpp"
#include "sympcalc/qlinalg.hpp"
#include "sympcalc/report.hpp"

namespace sympcalc {

// Representation data: 2n operators partial_a and the central action theta,
// with [partial_a, partial_b] = 2 J_ab theta (standard constant J) and
// [partial_a, theta] = 0, both verified at construction.
struct HRep {
    int n = 0;
    int dim = 0;
    std::vector<QMatrix> partial;
    QMatrix theta;
    std::string descriptor;

    HRep(int n_, std::vector<QMatrix> partial_, QMatrix theta_,
         std::string descriptor_);
};

// Standard constant symplectic form on R^{2n}: J(2i, 2i+1) = 1.
QMatrix standard_j_lower(int n);
QMatrix standard_j_upper(int n);

HRep trivial_rep(int n);
// Restriction of the defining symplectic representation on R^{2n+2}:
// theta: (sigma, mu, rho) -> (rho, 0, 0),
// partial_a: (sigma, mu_b, rho) -> (-mu_a, J_ab rho, 0).
HRep standard_rep(int n);

HRep dual_rep(const HRep& r);
HRep tensor_rep(const HRep& a, const HRep& b, int dim_bound = 256);
HRep sym_rep(const HRep& r, int k, int dim_bound = 256);
HRep ext_rep(const HRep& r, int k, int dim_bound = 256);
// Kernel of the invariant skew-form trace inside ext_k; only defined when
// the action preserves that subspace (it does for the standard family).
HRep perp_ext_rep(const HRep& r, int k, int dim_bound = 256);

// Descriptor grammar:
//   trivial | standard | dual(R) | sym:k(R) | ext:k(R) | perp_ext:k(R)
//   | tensor(R,R)
HRep parse_rep(const std::string& descriptor, int n, int dim_bound = 256);

struct ChainComplex {
    std::vector<long long> space_dims;  // length L+1
    std::vector<QMatrix> d;             // length L, d[r]: space r -> space r+1
};

// Split Chevalley-Eilenberg realization: degree r carries
// (Lambda^r g1 + Lambda^{r-1} g1) tensor V with the two-row differentials.
ChainComplex ce_complex(const HRep& rep);

// The trace-free analogue: V, g1 x V, perp forms up to degree n, then the
// mirrored descending row, with the second-order middle map.
ChainComplex bgg_complex(const HRep& rep);

// Exact cohomology dimensions; throws when consecutive maps do not compose
// to zero.
std::vector<long long> cohomology_dims(const ChainComplex& chain);

// Fundamental-weight coefficients for type C, last node = long root.
using DynkinLabel = std::vector<int>;

// The printed recipe for H^r of the Heisenberg algebra with coefficients in
// the irreducible C_{n+1}-representation `labels` (length n+1, n >= 1):
// H^0 drops the first label, H^r merges labels r and r+1 with +1 at node r,
// and the top half mirrors the bottom.  Returns 2n+2 labels of C_n.
std::vector<DynkinLabel> kostant_predict(const DynkinLabel& labels);

// Weyl dimension formula for C_m; exact, result verified integral.
long long weyl_dim(const DynkinLabel& label);

struct CohomologyResult {
    std::string rep;
    int n = 0;
    std::vector<long long> ce_dims;
    std::vector<long long> bgg_dims;
    std::vector<DynkinLabel> kostant_labels;  // empty if not applicable
    std::vector<long long> kostant_dims;
    bool match = false;
};

// Runs both complexes (and the highest-weight prediction when the rep is
// irreducible by construction, i.e. trivial/standard/sym powers).
CohomologyResult cohomology_suite(const HRep& rep,
                                  const std::optional<DynkinLabel>& labels);

}  // namespace sympcalc
