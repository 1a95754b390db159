// Exact identity suites for the geometry layer: curvature symmetries and
// Bianchi identities, the derived-tensor identities for the curvature
// decomposition, and the Kaehler decomposition checks.

#pragma once

#include "sympcalc/geometry.hpp"
#include "sympcalc/report.hpp"

namespace sympcalc {

// Commutator oracle on seeded random polynomial vector fields plus the
// displayed symmetries: antisymmetry, first Bianchi, J-symmetry, second
// Bianchi.
CheckReport check_curvature(const FedosovStructure& f, uint64_t seed = 0,
                            int trials = 3);

// Trace identities of the decomposition: the alternative J-trace expression
// for Phi, V trace-freeness, exact reassembly.
CheckReport check_decomposition(const FedosovStructure& f,
                                const CurvatureDecomp& dec);

// Contracted-Bianchi expression for Y and the second-order identity for
// J^ad nabla_a Y_bcd.
CheckReport check_lemma3(const FedosovStructure& f, const CurvatureDecomp& dec);

// Kaehler decomposition: exact reassembly, trace-freeness of U and Xi,
// Sigma antisymmetric and J-related to Xi, the mixed identity relating V to
// Sigma, and the relation Phi = (n+2)/(n+1) Xi + Lambda g.
CheckReport check_kahler(const KahlerStructure& k);

}  // namespace sympcalc
