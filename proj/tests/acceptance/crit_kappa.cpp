#include <algorithm>
#include <cmath>
#include <vector>

#include "axb/czset.hpp"
#include "axb/rng.hpp"
#include "criteria.hpp"

namespace acceptance {

using namespace axb;

namespace {

// Random admissible set: pick t_center and half_width, then a side in the
// lower half of the admissibility corridor.
CZSet random_admissible(Rng& rng, int dim) {
    for (;;) {
        const double t = rng.uniform(-1.5, 1.5);
        const double r = rng.uniform(0.05, 1.5);
        const double a = std::exp(t);
        const double lo = r < 1.0 ? std::exp(2.0) * a * r : a * std::exp(2.0 * r);
        const double hi = r < 1.0 ? std::exp(8.0) * a * r : a * std::exp(8.0 * r);
        CZSet R;
        R.dim = dim;
        R.side = lo * std::pow(hi / lo * 0.5, rng.uniform());
        R.t_center = t;
        R.half_width = r;
        for (int i = 0; i < dim; ++i) R.corner[static_cast<std::size_t>(i)] = rng.uniform(-2.0, 2.0);
        if (admissible(R)) return R;
    }
}

}  // namespace

// Criterion 3: the containment constant kappa0 (worst distance from a set
// center to the set, in units of the half-width) is finite and moves at most
// 5% when the per-face boundary sampling doubles, and the dilated-set measure
// obeys rho(R*) <= kappa0 rho(R) for 100 random admissible sets, verified by
// converged lattice quadrature with 1% tolerance.
Result crit_kappa() {
    Rng rng(2026);
    std::vector<CZSet> sets;
    for (int k = 0; k < 95; ++k) sets.push_back(random_admissible(rng, 1));
    for (int k = 0; k < 5; ++k) sets.push_back(random_admissible(rng, 2));

    const KappaEstimate e16 = estimate_kappa0(sets, 16);
    const KappaEstimate e32 = estimate_kappa0(sets, 32);
    if (!std::isfinite(e16.kappa0) || !std::isfinite(e32.kappa0) || e16.kappa0 < 1.0)
        return {false, fmt("kappa0 estimate not finite/above 1: %.6g / %.6g", e16.kappa0,
                           e32.kappa0)};
    const double drift = std::abs(e32.kappa0 - e16.kappa0) / e16.kappa0;
    if (drift > 0.05)
        return {false, fmt("kappa0 drift %.2f%% above 5%% on sampling doubling", 100.0 * drift)};

    double worst_ratio = 0.0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const DilationReport rep = dilation_report(sets[i], 0.01, 9);
        if (!rep.converged)
            return {false, fmt("dilation quadrature did not converge on set %zu", i)};
        if (std::abs(rep.rho_set - rho_measure(sets[i])) > 0.02 * rho_measure(sets[i]))
            return {false, fmt("set %zu: quadrature rho(R) off the closed form by > 2%%", i)};
        if (!(rep.ratio > 1.0) || !(rep.ratio <= e32.kappa0 * 1.01))
            return {false, fmt("set %zu: rho(R*)/rho(R) = %.4f outside (1, kappa0=%.4f]", i,
                               rep.ratio, e32.kappa0)};
        worst_ratio = std::max(worst_ratio, rep.ratio);
    }
    return {true, fmt("kappa0 = %.4f (drift %.2g%% on doubling); 100 sets: "
                      "max rho(R*)/rho(R) = %.4f <= kappa0",
                      e32.kappa0, 100.0 * drift, worst_ratio)};
}

}  // namespace acceptance
