#include <algorithm>
#include <cmath>
#include <vector>

#include "axb/spectral.hpp"
#include "criteria.hpp"

namespace acceptance {

using namespace axb;

// Criterion 8 (band-limited kernels): (i) the kernel of a function whose even
// extension is supported in [0, r0] has annulus mass below 1e-8 for every
// annulus starting at or beyond r0; (ii)/(iii) for an origin-cusp input the
// annulus table normalized by eps^{(n+1)/2} on eps in [1e-2, 1) and by
// eps^{3/2} on [1, r0/2) stays within a factor-20 band, n in {1, 2}; (iv) for
// n=1 the spectral mass weighted by min{s, s^2} lower-bounds the (s^2 + s)
// weighted table pointwise along the truncation parameter.
Result crit_bandlimited() {
    const int pts = 2049;
    const double range = 8.0, ds = range / (pts - 1);

    // (i) annulus vanishing beyond the band radius
    const double r0 = 2.0;
    std::vector<cplx> g(pts);
    for (int i = 0; i < pts; ++i) {
        const double r = ds * i;
        g[static_cast<std::size_t>(i)] = cplx(bump_step(2.0 * (1.0 - r / r0)), 0.0);
    }
    double worst_tail = 0.0;
    for (int n : {1, 2}) {
        const RadialProfile k = inverse_abel(g, ds, n, 2049, range / 2048.0);
        for (double eps : {2.0, 2.5, 3.2, 3.9}) {
            const double a = annulus_l1(k, eps);
            worst_tail = std::max(worst_tail, a);
            if (a > 1e-8)
                return {false, fmt("n=%d eps=%.2f: annulus mass %.3e above 1e-8 outside the "
                                   "band",
                                   n, eps, a)};
        }
    }

    // (ii)/(iii) cusp input: normalized annulus tables stay in a factor-20 band
    const double r0c = 5.0;
    std::vector<cplx> gc(pts);
    for (int i = 0; i < pts; ++i) {
        const double r = ds * i;
        gc[static_cast<std::size_t>(i)] =
            cplx(std::pow(r, 0.55) * bump_step(2.0 * (1.0 - r / r0c)), 0.0);
    }
    double spreads[3][2] = {{0, 0}, {0, 0}, {0, 0}};
    for (int n : {1, 2}) {
        const RadialProfile k = inverse_abel(gc, ds, n, 2049, range / 2048.0);
        double hi = 0.0, lo = 1e300;
        for (double eps : {0.02, 0.05, 0.1, 0.2, 0.4, 0.8}) {
            const double ratio = annulus_l1(k, eps) / std::pow(eps, 0.5 * (n + 1));
            hi = std::max(hi, ratio);
            lo = std::min(lo, ratio);
        }
        if (!(lo > 0.0) || hi / lo > 20.0)
            return {false,
                    fmt("n=%d: small-scale normalized table spread %.2f above 20", n, hi / lo)};
        spreads[n][0] = hi / lo;
        hi = 0.0;
        lo = 1e300;
        for (double eps : {1.0, 1.3, 1.7, 2.2}) {
            const double ratio = annulus_l1(k, eps) / std::pow(eps, 1.5);
            hi = std::max(hi, ratio);
            lo = std::min(lo, ratio);
        }
        if (!(lo > 0.0) || hi / lo > 20.0)
            return {false,
                    fmt("n=%d: large-scale normalized table spread %.2f above 20", n, hi / lo)};
        spreads[n][1] = hi / lo;
    }

    // (iv) n=1 weight comparison along the truncation parameter
    const int ns = 2001;
    const double smax = 40.0, hs = smax / (ns - 1);
    double accmin = 0.0, accfull = 0.0;
    for (int i = 0; i < ns; ++i) {
        const double s = hs * i;
        double f = 0.0;
        for (int j = 1; j < pts; ++j) {
            const double w = (j + 1 == pts) ? 0.5 : 1.0;
            f += w * gc[static_cast<std::size_t>(j)].real() * std::cos(s * ds * j);
        }
        f *= 2.0 * ds;
        const double wmin = f * f * std::min(s, s * s);
        const double wfull = f * f * (s * s + s);
        if (wmin > wfull + 1e-18)
            return {false, fmt("s=%.3f: min-weight integrand above the full weight", s)};
        const double w = (i == 0 || i + 1 == ns) ? 0.5 : 1.0;
        accmin += w * wmin;
        accfull += w * wfull;
        if (accmin > accfull + 1e-15)
            return {false, fmt("s=%.3f: min-weight running mass above the full-weight mass", s)};
    }
    if (!(accmin > 0.0))
        return {false, "min-weight spectral mass is not positive"};

    return {true, fmt("tail mass <= %.1e; cusp table spreads n=1 %.2f/%.2f, n=2 %.2f/%.2f "
                      "(bound 20); weighted masses %.4g <= %.4g",
                      worst_tail, spreads[1][0], spreads[1][1], spreads[2][0], spreads[2][1],
                      accmin, accfull)};
}

}  // namespace acceptance
