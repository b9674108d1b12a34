#include "axb/singular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace axb {

namespace {

// e^{-n (t_x + t_y)/2} profile(d(x,y)): the factored evaluation path.
cplx factored_eval(const RadialProfile& k, const GroupPoint& x, const GroupPoint& y) {
    const double w = std::exp(-0.5 * static_cast<double>(k.n) * (x.t + y.t));
    return w * k.eval(distance(x, y));
}

// Hyperbolic distance from an interior point to the window boundary: minimum
// over the two slab faces (reached with matching x, d = |dt|) and the 2n cube
// faces (x clamps to the face, the slab coordinate solves in closed form and
// clamps to the slab).
double window_inradius(const CZSet& w, const GroupPoint& p) {
    double best = std::min(p.t - w.t_lo(), w.t_hi() - p.t);
    for (int i = 0; i < w.dim; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        for (const double face : {w.corner[ui], w.corner[ui] + w.side}) {
            const double dx = p.x[ui] - face;
            const double t_star =
                std::clamp(0.5 * std::log(std::exp(2.0 * p.t) + dx * dx), w.t_lo(), w.t_hi());
            const double arg =
                std::cosh(p.t - t_star) + 0.5 * dx * dx * std::exp(-(p.t + t_star));
            best = std::min(best, std::acosh(std::max(1.0, arg)));
        }
    }
    return std::max(0.0, best);
}

bool same_point(const GroupPoint& a, const GroupPoint& b) {
    if (a.t != b.t) return false;
    for (int i = 0; i < a.dim; ++i)
        if (a.x[static_cast<std::size_t>(i)] != b.x[static_cast<std::size_t>(i)]) return false;
    return true;
}

// Does the flat lattice index fall in the cell ranges of the family set?
bool set_has_index(const LatticeSpec& lat, const FamilySet& S, std::int64_t flat) {
    const std::int64_t j = flat % lat.nt();
    if (j < S.tlo || j >= S.thi) return false;
    std::int64_t xf = flat / lat.nt();
    for (int i = lat.dim() - 1; i >= 0; --i) {
        const std::int64_t idx = xf % lat.nx();
        xf /= lat.nx();
        if (idx < S.xlo[static_cast<std::size_t>(i)] || idx >= S.xhi[static_cast<std::size_t>(i)])
            return false;
    }
    return true;
}

}  // namespace

Kernel kernel_from_profile(const RadialProfile& k) {
    Kernel K;
    K.factored = true;
    K.profile = k;
    K.evaluator = [k](const GroupPoint& x, const GroupPoint& y) { return factored_eval(k, x, y); };
    return K;
}

double factorization_deviation(const Kernel& K, const LatticeSpec& lat, int pairs) {
    if (!K.factored) return 0.0;
    const std::int64_t n = lat.points();
    double worst = 0.0;
    // deterministic golden-stride sweep of off-diagonal pairs
    const auto stride = static_cast<std::int64_t>(0.6180339887498949 * static_cast<double>(n)) | 1;
    for (int q = 0; q < pairs; ++q) {
        const std::int64_t i = (static_cast<std::int64_t>(q) * stride) % n;
        const std::int64_t j = (static_cast<std::int64_t>(q) * stride + n / 2 + 1 + q) % n;
        if (i == j) continue;
        const GroupPoint x = lat.point(i), y = lat.point(j);
        const cplx a = K.evaluator(x, y);
        const cplx b = factored_eval(K.profile, x, y);
        const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
        worst = std::max(worst, std::abs(a - b) / scale);
    }
    return worst;
}

cplx truncated_apply(const Kernel& K, const GridFunction& F, const GroupPoint& x, const CZSet& R) {
    const LatticeSpec& lat = F.lat;
    const auto n = static_cast<std::size_t>(lat.points());
    const double mass = lat.cell_mass();
    std::vector<cplx> terms(n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const GroupPoint z = lat.point(static_cast<std::int64_t>(i));
        if (same_point(z, x)) continue;  // diagonal cell always excluded
        if (dilated_contains(R, z)) continue;
        terms[i] = K.evaluator(x, z) * F.v[i] * mass;
    }
    return pairwise_sum(terms.data(), n);
}

GridFunction full_apply(const Kernel& K, const GridFunction& F) {
    const LatticeSpec& lat = F.lat;
    const auto n = static_cast<std::size_t>(lat.points());
    const double mass = lat.cell_mass();
    std::vector<GroupPoint> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = lat.point(static_cast<std::int64_t>(i));
    GridFunction out = GridFunction::zeros(lat);
    std::vector<cplx> terms(n);
    for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t i = 0; i < n; ++i)
            terms[i] = (i == q) ? cplx(0.0, 0.0) : K.evaluator(pts[q], pts[i]) * F.v[i] * mass;
        out.v[q] = pairwise_sum(terms.data(), n);
    }
    return out;
}

GridFunction maximal_apply(const Kernel& K, const GridFunction& F, const CandidateFamily& fam,
                           FamilyMode mode) {
    const LatticeSpec& lat = F.lat;
    const auto n = static_cast<std::size_t>(lat.points());
    const double mass = lat.cell_mass();
    const std::size_t n_sets = fam.count(mode);

    std::vector<GroupPoint> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = lat.point(static_cast<std::int64_t>(i));

    // cell membership of every dilated set, computed once
    std::vector<std::vector<std::uint8_t>> in_dilated(n_sets);
    for (std::size_t s = 0; s < n_sets; ++s) {
        in_dilated[s].resize(n);
        for (std::size_t i = 0; i < n; ++i)
            in_dilated[s][i] = dilated_contains(fam.sets[s].box, pts[i]) ? 1 : 0;
    }

    GridFunction out = GridFunction::zeros(lat);
    std::vector<cplx> row(n), comp(n);
    for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t i = 0; i < n; ++i)
            row[i] = (i == q) ? cplx(0.0, 0.0) : K.evaluator(pts[q], pts[i]) * F.v[i] * mass;
        double best = 0.0;
        for (std::size_t s = 0; s < n_sets; ++s) {
            if (!set_has_index(lat, fam.sets[s], static_cast<std::int64_t>(q))) continue;
            const std::vector<std::uint8_t>& mask = in_dilated[s];
            for (std::size_t i = 0; i < n; ++i) comp[i] = mask[i] ? cplx(0.0, 0.0) : row[i];
            best = std::max(best, std::abs(pairwise_sum(comp.data(), n)));
        }
        out.v[q] = best;
    }
    return out;
}

KernelConditionReport estimate_nu1(const Kernel& K, const LatticeSpec& lat,
                                   const std::vector<GroupPoint>& y_samples,
                                   const std::vector<double>& radii) {
    KernelConditionReport rep;
    rep.sampled_radii = radii;
    const auto n = static_cast<std::size_t>(lat.points());
    const double mass = lat.cell_mass();
    std::vector<GroupPoint> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = lat.point(static_cast<std::int64_t>(i));
    std::vector<double> terms(n);
    for (std::size_t sy = 0; sy < y_samples.size(); ++sy) {
        const GroupPoint& y = y_samples[sy];
        const double reach = window_inradius(lat.window, y);
        for (const double r : radii) {
            if (!(r > 0)) throw std::invalid_argument("estimate_nu1: radii must be positive");
            if (2.0 * r > reach) {  // annulus escapes the window: flag, exclude
                ++rep.clipped;
                continue;
            }
            for (std::size_t i = 0; i < n; ++i) {
                const double d = distance(pts[i], y);
                terms[i] = (d > r && d <= 2.0 * r)
                               ? (std::abs(K.evaluator(pts[i], y)) +
                                  std::abs(K.evaluator(y, pts[i]))) *
                                     mass
                               : 0.0;
            }
            const double val = pairwise_sum(terms.data(), n);
            ++rep.terms;
            if (val > rep.nu1) {
                rep.nu1 = val;
                rep.arg_sample = sy;
                rep.arg_radius = r;
            }
        }
    }
    return rep;
}

KernelConditionReport estimate_nu2(const Kernel& K, const LatticeSpec& lat,
                                   const std::vector<CZSet>& sets, int pair_samples) {
    KernelConditionReport rep;
    const auto n = static_cast<std::size_t>(lat.points());
    const double mass = lat.cell_mass();
    std::vector<GroupPoint> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = lat.point(static_cast<std::int64_t>(i));
    std::vector<double> terms(n);
    std::vector<std::uint8_t> outside(n);

    for (std::size_t si = 0; si < sets.size(); ++si) {
        const CZSet& R = sets[si];
        rep.sampled_sets.push_back(si);

        // points of the lattice inside R
        std::vector<std::size_t> inside;
        for (std::size_t i = 0; i < n; ++i)
            if (R.contains(pts[i])) inside.push_back(i);
        if (inside.size() < 2) continue;

        // R* sticking out of the window means the exterior integral misses
        // the collar where the integrand peaks: flag the set and exclude it.
        bool escapes = false;
        for (int cs = 0; cs < (1 << R.dim) && !escapes; ++cs) {
            for (const double tc : {R.t_lo(), R.t_hi()}) {
                GroupPoint c{{0.0, 0.0, 0.0}, tc, R.dim};
                for (int i = 0; i < R.dim; ++i)
                    c.x[static_cast<std::size_t>(i)] =
                        R.corner[static_cast<std::size_t>(i)] + ((cs >> i) & 1 ? R.side : 0.0);
                if (window_inradius(lat.window, c) < R.half_width) {
                    escapes = true;
                    break;
                }
            }
        }

        // nested deterministic point pattern inside R
        const std::size_t m =
            std::min<std::size_t>(std::max(2, pair_samples), inside.size());
        const std::size_t stride =
            (static_cast<std::size_t>(0.6180339887498949 * static_cast<double>(inside.size())) |
             1u);
        std::vector<std::size_t> chosen;
        std::vector<std::uint8_t> seen(inside.size(), 0);
        for (std::size_t k = 0; chosen.size() < m && k < 8 * inside.size(); ++k) {
            const std::size_t pos = (k * stride) % inside.size();
            if (seen[pos]) continue;
            seen[pos] = 1;
            chosen.push_back(inside[pos]);
        }

        for (std::size_t i = 0; i < n; ++i)
            outside[i] = dilated_contains(R, pts[i]) ? 0 : 1;

        for (std::size_t a = 0; a + 1 < chosen.size(); ++a) {
            for (std::size_t b = a + 1; b < chosen.size(); ++b) {
                if (escapes) {
                    ++rep.clipped;
                    continue;
                }
                const GroupPoint& ya = pts[chosen[a]];
                const GroupPoint& yb = pts[chosen[b]];
                for (std::size_t i = 0; i < n; ++i) {
                    if (!outside[i] || i == chosen[a] || i == chosen[b]) {
                        terms[i] = 0.0;
                        continue;
                    }
                    terms[i] = (std::abs(K.evaluator(pts[i], ya) - K.evaluator(pts[i], yb)) +
                                std::abs(K.evaluator(ya, pts[i]) - K.evaluator(yb, pts[i]))) *
                               mass;
                }
                const double val = pairwise_sum(terms.data(), n);
                ++rep.terms;
                if (val > rep.nu2) {
                    rep.nu2 = val;
                    rep.arg_set = si;
                }
            }
        }
    }
    return rep;
}

CotlarReport cotlar_check(const Kernel& K, const GridFunction& F, const CandidateFamily& fam,
                          double op_norm, double kappa0, double nu2, FamilyMode mode) {
    CotlarReport rep;
    rep.constant = nu2 + std::sqrt(std::max(0.0, kappa0)) * op_norm;
    rep.tstar = maximal_apply(K, F, fam, mode);
    const GridFunction tf = full_apply(K, F);
    rep.majorant = maximal(tf, fam, mode);
    const double bump = rep.constant * sup_norm(F);
    rep.max_residual = -1e300;
    for (std::size_t i = 0; i < rep.majorant.v.size(); ++i) {
        rep.majorant.v[i] += bump;
        const double res = rep.tstar.v[i].real() - rep.majorant.v[i].real();
        if (res > rep.max_residual) {
            rep.max_residual = res;
            rep.argmax = static_cast<std::int64_t>(i);
        }
    }
    return rep;
}

}  // namespace axb
