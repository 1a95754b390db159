// The standard rank-(2n+2) tractor bundle over a Fedosov structure: sections
// are triples (sigma, mu_b, rho), the connection mixes them through Phi and
// S from the curvature decomposition, and the curvature of the result is an
// explicit formula in (V, Y, S, Phi).  Symmetric powers, duals and tensor
// products are induced by the Leibniz rule.

#pragma once

#include "sympcalc/rumin.hpp"

namespace sympcalc {

class TractorConnection {
public:
    explicit TractorConnection(FedPtr fed);

    const FedPtr& fed() const { return fed_; }
    const CurvatureDecomp& decomp() const { return dec_; }
    int rank() const { return fed_->dim() + 2; }

    // The same connection as matrices consumable by the complex machinery;
    // the Christoffel action on the middle slots is folded in.
    const BundleConnection& bundle() const { return *bundle_; }

    // Slot layout of a section tensor of extent 2n+2.
    int sigma_slot() const { return 0; }
    int mu_slot(int b) const { return 1 + b; }
    int rho_slot() const { return fed_->dim() + 1; }

private:
    FedPtr fed_;
    CurvatureDecomp dec_;
    std::shared_ptr<BundleConnection> bundle_;
};

// A tractor section as a rank-vector tensor (dims {2n+2}).
Tensor tractor_section(const TractorConnection& t, const RatFunc& sigma,
                       const Tensor& mu, const RatFunc& rho);

// The three-component connection formula, applied directly (independent of
// the matrix assembly): output dims {2n, 2n+2}.
Tensor tractor_nabla(const TractorConnection& t, const Tensor& section);

// Invariant skew form sigma rho' + J^bc mu_b mu'_c - rho sigma'.
RatFunc skew_form(const TractorConnection& t, const Tensor& s1, const Tensor& s2);

// Exact comparison of the commutator of the connection with the displayed
// curvature formula, plus skew-form preservation.
CheckReport tractor_curvature_check(const TractorConnection& t);

// Flatness of the tractor connection is equivalent to V = 0.
CheckReport check_flatness_equivalence(const TractorConnection& t);

enum class TractorFunctor { Dual, Sym2, Sym3, TensorSquare };

// Induced connection on the functorial bundle.
BundleConnection induced_connection(const TractorConnection& t,
                                    TractorFunctor functor,
                                    int max_rank = 128);

// Leibniz-induced symmetric power of an arbitrary bundle connection.
BundleConnection sym_power_connection(const BundleConnection& c, int k,
                                      int max_rank = 128);
BundleConnection dual_connection(const BundleConnection& c);
BundleConnection tensor_connection(const BundleConnection& a,
                                   const BundleConnection& b,
                                   int max_rank = 128);

}  // namespace sympcalc
