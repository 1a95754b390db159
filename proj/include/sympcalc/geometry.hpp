// Charts, Fedosov structures (symplectic form + compatible torsion-free
// connection), exact covariant differentiation and curvature, the symplectic
// curvature decomposition (V, Phi, S, Y) and the Kaehler curvature
// decomposition (U, Xi, Sigma, Lambda).
//
// Curvature sign convention, fixed by the commutator on vector fields:
//   (nabla_a nabla_b - nabla_b nabla_a) X^c = R_ab^c_d X^d.

#pragma once

#include <optional>
#include <string>

#include "sympcalc/symplin.hpp"

namespace sympcalc {

enum class Slot { Down, Up, Payload };

struct Chart {
    int n;
    VarsPtr vars;  // 2n coordinate names
    SympSpace space;
    std::vector<Rational> base_point;
    std::string name;

    // Validates: 2n coordinates, dJ = 0 symbolically, J invertible as a
    // rational-function matrix, denominators regular at the base point.
    Chart(int n_, VarsPtr vars_, Tensor j_lower,
          std::vector<Rational> base_point_, std::string name_);
};

struct FedosovStructure {
    Chart chart;
    Tensor gamma;  // gamma[c][a][b] = Gamma^c_ab

    // Validates torsion-freeness (symmetry in the lower pair) and
    // nabla_a J_bc = 0, both as exact identities.
    FedosovStructure(Chart chart_, Tensor gamma_);

    int n() const { return chart.n; }
    int dim() const { return 2 * chart.n; }
    const VarsPtr& vars() const { return chart.vars; }
};

// Covariant derivative with one new leading Down slot.  `slots` describes
// each slot of t; Payload slots get no Christoffel correction.
Tensor cov_deriv(const FedosovStructure& f, const Tensor& t,
                 const std::vector<Slot>& slots);

// R[a][b][c][d] = R_ab^c_d.
Tensor curvature(const FedosovStructure& f);

struct CurvatureDecomp {
    Tensor R;    // [a][b][c up][d]
    Tensor V;    // trace-free part, same shape
    Tensor Phi;  // symmetric [b][d]
    Tensor S;    // [a]
    Tensor Y;    // [a][b][c], antisymmetric in a,b
};

// Splits R into the trace-free part V and Phi, and derives S and Y.
// Postconditions checked exactly: V_ab^a_d = 0, Phi symmetric, reassembly
// reproduces R.
CurvatureDecomp decompose_curvature(const FedosovStructure& f);

struct KahlerStructure {
    FedosovStructure fed;  // chart with J, Levi-Civita connection
    Tensor g;              // metric [a][b]
    Tensor g_inv;          // [a][b] with g_ab g^bc = delta
    Tensor Jmix;           // J_a^b = J_ac g^bc

    KahlerStructure(Chart chart, Tensor g_);
};

struct KahlerDecomp {
    Tensor U;       // [a][b][c up][d]
    Tensor Xi;      // symmetric trace-free [a][b]
    Tensor Sigma;   // antisymmetric [a][b]
    RatFunc Lambda; // scalar
};

KahlerDecomp kahler_decompose(const KahlerStructure& k);

// Kaehler data from a real potential on the chart with the standard complex
// structure (coordinates interleaved x1,y1,...,xn,yn).
KahlerStructure kahler_from_potential(int n, const VarsPtr& vars,
                                      const RatFunc& potential,
                                      std::string name);

// Built-in charts.  "flat": constant standard J, Gamma = 0 (n in 1..3);
// "fubini_study": the affine-chart Fubini-Study structure normalized so the
// curvature trace part equals the metric (n in 1..2).
struct ChartBundle {
    FedosovStructure fed;
    std::optional<KahlerStructure> kahler;
};

ChartBundle builtin_chart(const std::string& name, int n);

// Seeded random Fedosov structure on the flat chart: Gamma^c_ab =
// J^cd Xi_dab with Xi totally symmetric and small polynomial entries, which
// makes nabla J = 0 automatic.
FedosovStructure random_fedosov(int n, uint64_t seed, int deg = 2);

// Seeded random Kaehler structure from a perturbed flat potential.
KahlerStructure random_kahler(int n, uint64_t seed);

}  // namespace sympcalc
