#pragma once
#include <cstdint>
#include <functional>
#include <vector>

#include "axb/grid_function.hpp"
#include "axb/maximal.hpp"
#include "axb/spectral.hpp"

namespace axb {

// Off-diagonal kernel on the window.  When the kernel comes from a radial
// convolution profile it factors as
//   K(x, y) = delta^{1/2}(y^{-1} x) delta(y) profile(d(x, y))
//           = e^{-n (t_x + t_y) / 2} profile(d(x, y)),
// which is the form every operator in this module evaluates when `factored`
// is set; a direct evaluator is kept alongside so tabulated kernels plug in.
struct Kernel {
    std::function<cplx(const GroupPoint&, const GroupPoint&)> evaluator;
    bool factored = false;
    RadialProfile profile;  // meaningful only when factored

    cplx operator()(const GroupPoint& x, const GroupPoint& y) const { return evaluator(x, y); }
};

// Kernel of the convolution operator with the given radial profile.
Kernel kernel_from_profile(const RadialProfile& k);

// Largest relative disagreement between the evaluator and the factored form
// over a deterministic sweep of off-diagonal lattice pairs (the Kernel type
// invariant asks for <= 1e-8 when a factorization is claimed).
double factorization_deviation(const Kernel& K, const LatticeSpec& lat, int pairs = 4096);

// T_R F(x): lattice sum of K(x, .) F(.) rho-mass over cells outside the
// dilated set R* (cell membership via its lattice point); the diagonal cell
// is always excluded.  Requires x in R (so the diagonal is inside R*).
cplx truncated_apply(const Kernel& K, const GridFunction& F, const GroupPoint& x, const CZSet& R);

// Untruncated lattice sum (diagonal cell excluded), one value per point.
GridFunction full_apply(const Kernel& K, const GridFunction& F);

// T* F(x) = max over family sets containing x of |T_R F(x)|.
GridFunction maximal_apply(const Kernel& K, const GridFunction& F, const CandidateFamily& fam,
                           FamilyMode mode = FamilyMode::Full);

// Provenance-carrying estimates of the kernel integral conditions.
struct KernelConditionReport {
    double nu1 = 0.0;  // sup over samples/radii of the annulus integrals
    double nu2 = 0.0;  // sup over sets/pairs of the exterior difference integrals
    std::vector<double> sampled_radii;
    std::vector<std::size_t> sampled_sets;  // indices into the `sets` argument
    std::int64_t terms = 0;                 // contributing (kept) summands
    std::int64_t clipped = 0;               // flagged-and-excluded summands
    // argument of the sup: (sample index, radius) for nu1, (set, pair) for nu2
    std::size_t arg_sample = 0;
    double arg_radius = 0.0;
    std::size_t arg_set = 0;

    double clipped_fraction() const {
        const double tot = static_cast<double>(terms + clipped);
        return tot > 0 ? static_cast<double>(clipped) / tot : 0.0;
    }
};

// Annulus condition: max over y samples and radii r of the lattice integral
// of |K(x,y)| + |K(y,x)| over r < d(x,y) <= 2r.  Annuli that meet the window
// boundary are flagged and excluded from the sup.
KernelConditionReport estimate_nu1(const Kernel& K, const LatticeSpec& lat,
                                   const std::vector<GroupPoint>& y_samples,
                                   const std::vector<double>& radii);

// Smoothness condition: max over sets R and sampled pairs y, y' in R of the
// exterior integral of |K(x,y)-K(x,y')| + |K(y,x)-K(y',x)| over the window
// part of (R*)^c.  pair_samples caps the points drawn per set (deterministic
// nested pattern, so enlarging it never decreases the estimate).
KernelConditionReport estimate_nu2(const Kernel& K, const LatticeSpec& lat,
                                   const std::vector<CZSet>& sets, int pair_samples);

// Pointwise Cotlar-type domination: T*F <= M(TF) + [nu2 + kappa0^{1/2} opnorm] ||F||_inf,
// with M the family maximal operator and TF the untruncated sum.
struct CotlarReport {
    GridFunction tstar;
    GridFunction majorant;   // M(TF) + constant * ||F||_inf
    double constant = 0.0;   // nu2 + sqrt(kappa0) * op_norm
    double max_residual = 0.0;  // max of tstar - majorant (negative when dominated)
    std::int64_t argmax = 0;
};
CotlarReport cotlar_check(const Kernel& K, const GridFunction& F, const CandidateFamily& fam,
                          double op_norm, double kappa0, double nu2,
                          FamilyMode mode = FamilyMode::Full);

}  // namespace axb
