// The symplectic analogue of the de Rham complex and its coupled version:
// first-order operators d_perp up and down between trace-free form bundles,
// the second-order middle operator, the curvature endomorphism Theta, the
// symplectic-flatness test, and exact verification that all consecutive
// compositions vanish on generic polynomial sections.
//
// Sections of rank-r bundles are tensors whose last slot is the value slot;
// the uncoupled case is rank 1 with a vanishing connection form.

#pragma once

#include <functional>
#include <memory>

#include "sympcalc/geometry.hpp"
#include "sympcalc/report.hpp"

namespace sympcalc {

using FedPtr = std::shared_ptr<const FedosovStructure>;

struct BundleConnection {
    FedPtr fed;
    int rank = 1;
    std::vector<Tensor> A;  // one rank x rank matrix per coordinate

    BundleConnection(FedPtr fed_, int rank_, std::vector<Tensor> a);
    static BundleConnection trivial(FedPtr fed, int rank = 1);
    // Rank-1 connection with form tau satisfying alt(d tau) = J on a
    // constant-J chart; its Theta is the identity.
    static BundleConnection tau_twisted(FedPtr fed);
    static BundleConnection random(FedPtr fed, int rank, uint64_t seed);

    int dim() const { return fed->dim(); }
    int n() const { return fed->n(); }
    const VarsPtr& vars() const { return fed->vars(); }
};

struct BundleValuedForm {
    int degree = 0;
    bool perp = false;
    Tensor comps;  // dims: [2n]^degree + [rank]

    BundleValuedForm(int degree_, bool perp_, Tensor comps_)
        : degree(degree_), perp(perp_), comps(std::move(comps_)) {}
};

using ThetaEndo = Tensor;  // rank x rank

// Coupled covariant derivative: one new leading form slot.
Tensor coupled_deriv(const BundleConnection& c, const BundleValuedForm& f);

// Apply an endomorphism to the value slot.
BundleValuedForm apply_endo(const ThetaEndo& m, const BundleValuedForm& f);

// First-order operator raising the degree, trace-free output; degree must
// satisfy 0 <= k < n (k = 0 is the plain coupled derivative).
BundleValuedForm dperp_up(const BundleConnection& c, const BundleValuedForm& f);

// First-order operator lowering the degree: J^bc nabla_b psi_c....
BundleValuedForm dperp_down(const BundleConnection& c, const BundleValuedForm& f);

// Curvature endomorphism normalized so that a symplectically flat
// connection has commutator exactly 2 J_ab Theta.
ThetaEndo theta_of(const BundleConnection& c);

struct FlatnessResult {
    bool flat = false;
    std::string witness;  // first failing component when not flat
    ThetaEndo theta;
};
FlatnessResult symplectic_flatness(const BundleConnection& c);
bool is_symplectically_flat(const BundleConnection& c);

// Second-order middle operator on trace-free degree-n forms.  Checks that
// the intermediate derivative is already trace-free before reusing it.
BundleValuedForm middle_operator(const BundleConnection& c,
                                 const BundleValuedForm& f,
                                 const ThetaEndo& theta);

// nabla Theta as a 1-form of endomorphisms.
Tensor nabla_endo(const BundleConnection& c, const ThetaEndo& m);

// Every consecutive composition in the full two-row complex (up the
// trace-free row, middle operator, down the mirrored row) on generic
// polynomial sections of total degree <= deg_bound.
CheckReport verify_rs_complex(const BundleConnection& c, int deg_bound = 2);

// The flat-resolution complex with stages (r-forms) + (r-1 forms) and
// differentials (nabla omega +- J^psi, nabla psi +- Theta omega), plus the
// parallel-Theta check.
CheckReport lemma1_complex(const BundleConnection& c, int deg_bound = 1);

// Generic-section machinery shared with the tractor checks.
std::vector<Expvec> monomials_up_to(const VarsPtr& vars, int max_deg);
// Frame of the trace-free degree-k subbundle (spanning set: projections of
// the constant basis forms); degree 0/1 give the plain bases.
std::vector<Tensor> perp_frame(const SympSpace& s, int k);

// Formal-jet sections: the scalar factor of a section slice stays symbolic,
// represented by a trailing slot indexed by derivative multi-indices.  An
// operator composition that vanishes identically in the jet symbols is zero
// on every smooth section, which covers the bounded-degree polynomial
// sections required of the complex checks.
struct JetContext {
    std::vector<Expvec> betas;
    std::map<Expvec, int> index;
    explicit JetContext(const VarsPtr& vars, int order_cap);
    int size() const { return static_cast<int>(betas.size()); }
};

// Jet-aware coupled derivative: slots are [form]*degree + [value] + [jet].
Tensor jet_coupled_deriv(const BundleConnection& c, const Tensor& comps,
                         int degree, const JetContext& jets);

struct JetForm {
    int degree = 0;
    Tensor comps;  // [2n]^degree x rank x jets
};

JetForm jet_dperp_up(const BundleConnection& c, const JetForm& f,
                     const JetContext& jets);
JetForm jet_dperp_down(const BundleConnection& c, const JetForm& f,
                       const JetContext& jets);
JetForm jet_middle(const BundleConnection& c, const JetForm& f,
                   const ThetaEndo& theta, const JetContext& jets);

// Complex verification on jet slices (one per frame element and value basis
// vector); equivalent to the monomial-section mode but proves the identity
// for sections of every degree.
CheckReport verify_rs_complex_jets(const BundleConnection& c);

}  // namespace sympcalc
