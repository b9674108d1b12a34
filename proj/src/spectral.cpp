#include "axb/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace axb {

namespace {

constexpr double kInv2Pi = 1.0 / (2.0 * M_PI);

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlX[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                            0.7966664774136267,  0.9602898564975363};
constexpr double kGlW[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                            0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

// Composite Simpson weights for `n` uniformly spaced samples (odd interval
// counts finished with the 3/8 rule, so the order is uniform).
std::vector<double> simpson_weights(std::size_t n, double h) {
    if (n < 2) throw std::invalid_argument("simpson_weights: need at least two samples");
    std::vector<double> w(n, 0.0);
    const std::size_t intervals = n - 1;
    if (intervals == 1) {
        w[0] = w[1] = 0.5 * h;
        return w;
    }
    std::size_t main_end = n - 1;  // last index covered by the 1/3 rule
    if (intervals % 2 != 0) {
        if (intervals == 3) {
            main_end = 0;
        } else {
            main_end = n - 4;
        }
        const double c = 3.0 * h / 8.0;
        w[main_end] += c;
        w[main_end + 1] += 3.0 * c;
        w[main_end + 2] += 3.0 * c;
        w[main_end + 3] += c;
    }
    if (main_end >= 2) {
        const double c = h / 3.0;
        w[0] += c;
        w[main_end] += c;
        for (std::size_t i = 1; i < main_end; ++i) w[i] += (i % 2 == 1 ? 4.0 : 2.0) * c;
    }
    return w;
}

// Spike-at-origin descriptor: the first sample towers over the near field.
bool origin_spike(const std::vector<cplx>& v) {
    if (v.size() < 18) return false;
    double near = 0.0;
    for (std::size_t i = 1; i <= 16; ++i) near = std::max(near, std::abs(v[i]));
    return std::abs(v[0]) > 10.0 * near && std::abs(v[0]) > 1e-12;
}

// Catmull-Rom interpolation of a uniformly sampled table (value 0 beyond the
// top sample; even or odd reflection below r = 0).
cplx cubic_table_eval(const std::vector<cplx>& tab, double h, double r, bool odd) {
    if (tab.size() < 2 || h <= 0) return {0.0, 0.0};
    if (r < 0) r = -r;
    const double x = r / h;
    const auto last = static_cast<double>(tab.size() - 1);
    if (x >= last) return {0.0, 0.0};
    const auto i = static_cast<std::ptrdiff_t>(std::floor(x));
    const double u = x - static_cast<double>(i);
    const auto at = [&](std::ptrdiff_t j) -> cplx {
        if (j < 0) return odd ? -tab[static_cast<std::size_t>(-j)] : tab[static_cast<std::size_t>(-j)];
        if (j > static_cast<std::ptrdiff_t>(tab.size()) - 1) return {0.0, 0.0};
        return tab[static_cast<std::size_t>(j)];
    };
    const cplx p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    const double u2 = u * u, u3 = u2 * u;
    return 0.5 * ((2.0 * p1) + (-p0 + p2) * u + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u2 +
                  (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u3);
}

}  // namespace

// ---------------------------------------------------------------------------
// Spherical functions.
// ---------------------------------------------------------------------------

double phi0(int n, double r) {
    r = std::abs(r);
    if (n == 2) {
        if (r < 1e-12) return 1.0;
        return r / std::sinh(r);
    }
    if (n == 1) {
        // Legendre function P_{-1/2}(cosh r) via the complete elliptic integral.
        const double k = std::tanh(0.5 * r);
        return (2.0 / M_PI) * std::comp_ellint_1(k) / std::cosh(0.5 * r);
    }
    throw std::invalid_argument("phi0: dimension must be 1 or 2");
}

double phi0_integral_oracle(double r) {
    if (r <= 0) return 1.0;
    // (sqrt2/pi) int_0^r (cosh r - cosh t)^{-1/2} dt, resolved at t = r by the
    // substitution t = r - w^2.
    const double wmax = std::sqrt(r);
    const int panels = 64;
    const double pw = wmax / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = (p + 0.5) * pw;
        for (int q = 0; q < 8; ++q) {
            const double w = c + 0.5 * pw * kGlX[q];
            const double t = r - w * w;
            const double den = std::cosh(r) - std::cosh(t);
            acc += kGlW[q] * 0.5 * pw * (2.0 * w / std::sqrt(den));
        }
    }
    return acc * std::sqrt(2.0) / M_PI;
}

double spherical_function(int n, double s, double r) {
    if (n != 2) throw std::invalid_argument("spherical_function: closed form implemented for n=2");
    if (std::abs(s) < 1e-14) return phi0(2, r);
    if (std::abs(r) < 1e-14) return 1.0;
    return std::sin(s * r) / (s * std::sinh(r));
}

// ---------------------------------------------------------------------------
// Bump partition.
// ---------------------------------------------------------------------------

double bump_step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

double bump_lowpass(double l) { return bump_step(2.0 - l); }

double bump_phi(double t) {
    if (t <= 0.0) return 0.0;
    const double l = std::log2(t);
    return bump_lowpass(l) - bump_lowpass(l + 1.0);
}

double partition_sum(double t, int jlo, int jhi) {
    double acc = 0.0;
    for (int j = jlo; j <= jhi; ++j) acc += bump_phi(std::ldexp(t, -j));
    return acc;
}

// ---------------------------------------------------------------------------
// Radial profiles.
// ---------------------------------------------------------------------------

cplx RadialProfile::eval(double r) const { return cubic_table_eval(values, dr, r, /*odd=*/false); }

namespace {

double weighted_abs_l1(const RadialProfile& k, double a, double b) {
    if (!(b > a) || k.values.size() < 2) return 0.0;
    const int n = k.n;
    // resolve both the profile grid and the annulus width
    auto pts = static_cast<std::size_t>(std::ceil((b - a) / (0.5 * k.dr)));
    pts = std::clamp<std::size_t>(pts | 1u, 129, 1u << 20);  // odd count
    const double h = (b - a) / static_cast<double>(pts - 1);
    std::vector<double> w = simpson_weights(pts, h);
    double acc = 0.0;
    for (std::size_t i = 0; i < pts; ++i) {
        const double r = a + h * static_cast<double>(i);
        acc += w[i] * phi0(n, r) * std::abs(k.eval(r)) * radial_density(n, r);
    }
    return radial_constant(n) * acc;
}

}  // namespace

double annulus_l1(const RadialProfile& k, double eps) {
    if (eps <= 0) throw std::invalid_argument("annulus_l1: eps must be positive");
    if (2.0 * eps > k.r_max())
        throw std::invalid_argument("annulus_l1: annulus exceeds the profile range");
    return weighted_abs_l1(k, eps, 2.0 * eps);
}

double exterior_l1(const RadialProfile& k, double eps) {
    if (eps <= 0 || eps >= k.r_max())
        throw std::invalid_argument("exterior_l1: eps outside the profile range");
    return weighted_abs_l1(k, eps, k.r_max());
}

// ---------------------------------------------------------------------------
// Abel inversion.
// ---------------------------------------------------------------------------

namespace {

// 5-point first derivative of a uniformly sampled even function (index 0 at
// r = 0, even reflection below, one-sided stencils at the top).
std::vector<cplx> derivative_table(const std::vector<cplx>& g, double h) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
    if (n < 5) throw std::invalid_argument("derivative_table: need at least 5 samples");
    std::vector<cplx> d(g.size());
    const auto at = [&](std::ptrdiff_t j) -> cplx {
        if (j < 0) return g[static_cast<std::size_t>(-j)];
        return g[static_cast<std::size_t>(j)];
    };
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if (i <= n - 3 && i >= 2) {
            d[i] = (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / (12.0 * h);
        } else if (i < 2) {  // interior formula still valid via even reflection
            d[i] = (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / (12.0 * h);
        } else if (i == n - 2) {
            d[i] = (-at(i - 3) + 6.0 * at(i - 2) - 18.0 * at(i - 1) + 10.0 * at(i) + 3.0 * at(i + 1)) /
                   (12.0 * h);
        } else {  // i == n - 1
            d[i] = (3.0 * at(i - 4) - 16.0 * at(i - 3) + 36.0 * at(i - 2) - 48.0 * at(i - 1) +
                    25.0 * at(i)) /
                   (12.0 * h);
        }
    }
    return d;
}

// int_r^{s_top} (-g'(s)) (cosh s - cosh r)^{-1/2} ds with g' given by a
// uniformly sampled table, via u = sqrt(cosh s - cosh r) panels (the
// integrand -2 g'(s(u))/sinh s(u) du is smooth through u = 0).
cplx abel_odd_integral(const std::vector<cplx>& dg, double h, double r, double s_top,
                       double panel_ds) {
    if (s_top <= r) return {0.0, 0.0};
    const double chr = std::cosh(r);
    cplx acc{0.0, 0.0};
    double s_lo = r;
    while (s_lo < s_top) {
        const double s_hi = std::min(s_top, s_lo + panel_ds);
        const double ua = std::sqrt(std::max(0.0, std::cosh(s_lo) - chr));
        const double ub = std::sqrt(std::cosh(s_hi) - chr);
        const double mid = 0.5 * (ua + ub), rad = 0.5 * (ub - ua);
        for (int q = 0; q < 8; ++q) {
            const double u = mid + rad * kGlX[q];
            const double s = std::acosh(chr + u * u);
            const double sh = std::sinh(s);
            if (sh <= 0) continue;
            // dg is the derivative of an even function, hence odd at the origin
            acc += kGlW[q] * rad * (-2.0 * cubic_table_eval(dg, h, s, true) / sh);
        }
        s_lo = s_hi;
    }
    return acc;
}

}  // namespace

RadialProfile inverse_abel(const std::vector<cplx>& ghat, double ds_in, int n, int out_pts,
                           double out_dr) {
    if (n != 1 && n != 2) throw std::invalid_argument("inverse_abel: dimension must be 1 or 2");
    if (ghat.size() < 8 || ds_in <= 0 || out_pts < 2 || out_dr <= 0)
        throw std::invalid_argument("inverse_abel: bad arguments");
    const std::vector<cplx> dg = derivative_table(ghat, ds_in);
    RadialProfile out;
    out.n = n;
    out.dr = out_dr;
    out.values.assign(static_cast<std::size_t>(out_pts), {0.0, 0.0});
    const double s_top = ds_in * static_cast<double>(ghat.size() - 1);
    if (n == 2) {
        for (int i = 0; i < out_pts; ++i) {
            const double r = out_dr * static_cast<double>(i);
            if (i == 0) {
                // limit -g''(0): even 5-point second derivative
                const cplx g2 =
                    (-2.0 * ghat[2] + 32.0 * ghat[1] - 30.0 * ghat[0]) / (12.0 * ds_in * ds_in);
                out.values[0] = -kInv2Pi * g2;
            } else if (r < s_top) {
                out.values[static_cast<std::size_t>(i)] =
                    -kInv2Pi * cubic_table_eval(dg, ds_in, r, true) / std::sinh(r);
            }
        }
    } else {
        const double panel_ds = std::clamp(8.0 * ds_in, 0.05, 0.25);
        // Hyperbolic-plane Abel inversion: with A(r) = 2 sinh r, C_1 = pi and
        // the sqrt(2)-normalized Abel transform, the inverse carries 1/(sqrt(2) pi)
        // (calibrated so that pi * int phi0 k A dr recovers the symbol at s = 0).
        const double c = 1.0 / (std::sqrt(2.0) * M_PI);
        for (int i = 0; i < out_pts; ++i) {
            const double r = out_dr * static_cast<double>(i);
            if (r >= s_top) continue;
            out.values[static_cast<std::size_t>(i)] =
                c * abel_odd_integral(dg, ds_in, r, s_top, panel_ds);
        }
    }
    out.singular_origin = origin_spike(out.values);
    return out;
}

// ---------------------------------------------------------------------------
// Spherical transform (n = 2).
// ---------------------------------------------------------------------------

std::vector<cplx> spherical_transform(const RadialProfile& k, const std::vector<double>& s_list) {
    if (k.n != 2) throw std::invalid_argument("spherical_transform: profile must have n=2");
    const std::size_t m = k.values.size();
    if (m < 5) throw std::invalid_argument("spherical_transform: profile too short");
    const std::vector<double> w = simpson_weights(m, k.dr);
    std::vector<cplx> out(s_list.size());
    for (std::size_t q = 0; q < s_list.size(); ++q) {
        const double s = s_list[q];
        cplx acc{0.0, 0.0};
        for (std::size_t i = 1; i < m; ++i) {
            const double r = k.dr * static_cast<double>(i);
            acc += w[i] * spherical_function(2, s, r) * k.values[i] * radial_density(2, r);
        }
        out[q] = radial_constant(2) * acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Multiplier symbols.
// ---------------------------------------------------------------------------

MultiplierSpec make_multiplier(const std::string& spec, int n) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("multiplier spec must look like name:value");
    const std::string kind = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    MultiplierSpec ms;
    ms.name = spec;
    ms.s0 = 1.6;
    ms.s_inf = std::max(1.6, 0.5 * (n + 1) + 0.1) + 0.1;
    if (kind == "heat") {
        const double zeta = std::stod(arg);
        if (zeta <= 0) throw std::invalid_argument("heat multiplier needs zeta > 0");
        ms.m = [zeta](double xi) { return cplx(std::exp(-zeta * xi), 0.0); };
    } else if (kind == "imaginary-power") {
        const double beta = std::stod(arg);
        // chi(xi) xi^{i beta}: chi smooth, 0 for xi <= 1/4, 1 for xi >= 1
        ms.m = [beta](double xi) {
            if (xi <= 0.25) return cplx(0.0, 0.0);
            const double chi = bump_step(0.5 * (std::log2(xi) + 2.0));
            const double ph = beta * std::log(xi);
            return cplx(chi * std::cos(ph), chi * std::sin(ph));
        };
    } else if (kind == "riesz") {
        const double zeta = std::stod(arg);
        if (zeta <= 0) throw std::invalid_argument("riesz multiplier needs zeta > 0");
        ms.m = [zeta](double xi) { return cplx(std::pow(1.0 + xi, -zeta), 0.0); };
    } else {
        throw std::invalid_argument("unknown multiplier family: " + kind +
                                    " (file:... symbols are loaded through the io helpers)");
    }
    return ms;
}

// ---------------------------------------------------------------------------
// Kernel profiles of multipliers, computed symbol-side.
// ---------------------------------------------------------------------------

namespace {

struct SymbolTable {
    OddTransformTable T;  // T(sig) = int_0^{s_top} s Theta(s) sin(s sig) ds
    cplx moment2{0.0, 0.0};  // int s^2 Theta(s) ds
    double s_top = 0.0;
};

SymbolTable build_symbol_table(const std::function<cplx(double)>& theta, double s_top,
                               double sig_keep) {
    std::size_t npts = 4096;
    while (npts < static_cast<std::size_t>(s_top * 1024.0) && npts < (1u << 20)) npts <<= 1;
    const double ds = s_top / static_cast<double>(npts);
    std::vector<cplx> g(npts + 1);
    for (std::size_t j = 0; j <= npts; ++j) {
        const double s = ds * static_cast<double>(j);
        g[j] = s * theta(s);
    }
    SymbolTable st;
    st.s_top = s_top;
    // The table is read through cubic interpolation whose error scales like
    // (dsig * s_top)^4 and is amplified by 1/sinh r near the origin, so small
    // tables are oversampled aggressively; large ones are capped by memory.
    const int oversample = npts <= (1u << 16) ? 64 : (npts <= (1u << 18) ? 16 : 8);
    st.T = sine_integral_table(g, ds, oversample, sig_keep);
    const std::vector<double> w = simpson_weights(g.size(), ds);
    cplx m2{0.0, 0.0};
    for (std::size_t j = 0; j < g.size(); ++j) m2 += w[j] * (ds * static_cast<double>(j)) * g[j];
    st.moment2 = m2;
    return st;
}

// sup of |T| content at or beyond sig, used to stop the outer Abel integral.
double table_stop_point(const OddTransformTable& T) {
    const double peak = T.max_abs_from(0.0);
    if (peak <= 0) return 0.0;
    double lo = 0.0, hi = T.sig_max();
    // coarse scan for the last sig with significant content
    const int steps = 512;
    double stop = 0.0;
    for (int k = 0; k <= steps; ++k) {
        const double sig = lo + (hi - lo) * static_cast<double>(k) / steps;
        if (T.max_abs_from(sig) > 1e-15 * peak) stop = sig;
    }
    return std::min(T.sig_max(), stop + (hi - lo) / steps);
}

// Outer oscillatory Abel integral for n = 1 profiles built from a symbol
// table: k(r) = (1/(sqrt(2) pi^2)) int_r^{stop} T(s) (cosh s - cosh r)^{-1/2} ds
//             = (sqrt(2)/pi^2)    int_{u(r)}^{u(stop)} T(s(u)) / sinh s(u) du,
// with panel widths shrinking like the local frequency envelope min(s_top, K/sig).
cplx abel_odd_from_table(const OddTransformTable& T, double r, double sig_stop, double s_top) {
    if (sig_stop <= r) return {0.0, 0.0};
    constexpr double kEnvelope = 40.0;
    const double chr = std::cosh(r);
    cplx acc{0.0, 0.0};
    double s_lo = r;
    while (s_lo < sig_stop) {
        const double freq = std::min(s_top, kEnvelope / std::max(s_lo, 1e-12));
        const double panel = std::clamp(0.5 * M_PI / freq, 1e-6, 0.25);
        const double s_hi = std::min(sig_stop, s_lo + panel);
        const double ua = std::sqrt(std::max(0.0, std::cosh(s_lo) - chr));
        const double ub = std::sqrt(std::cosh(s_hi) - chr);
        const double mid = 0.5 * (ua + ub), rad = 0.5 * (ub - ua);
        for (int q = 0; q < 8; ++q) {
            const double u = mid + rad * kGlX[q];
            const double s = std::acosh(chr + u * u);
            const double sh = std::sinh(s);
            if (sh <= 0) continue;
            acc += kGlW[q] * rad * (T.eval(s) / sh);
        }
        s_lo = s_hi;
    }
    return acc * std::sqrt(2.0) / (M_PI * M_PI);
}

RadialProfile profile_from_theta(const std::function<cplx(double)>& theta, int n, double s_top,
                                 double r_max, int points) {
    const double reach = (n == 1) ? r_max + 9.0 : r_max + 1.0;
    const SymbolTable st = build_symbol_table(theta, s_top, reach);
    RadialProfile out;
    out.n = n;
    out.dr = r_max / static_cast<double>(points - 1);
    out.values.assign(static_cast<std::size_t>(points), {0.0, 0.0});
    if (n == 2) {
        // k(r) = T(r) / (2 pi^2 sinh r); k(0) = moment2 / (2 pi^2)
        const double c = 1.0 / (2.0 * M_PI * M_PI);
        out.values[0] = c * st.moment2;
        for (int i = 1; i < points; ++i) {
            const double r = out.dr * static_cast<double>(i);
            out.values[static_cast<std::size_t>(i)] = c * st.T.eval(r) / std::sinh(r);
        }
    } else {
        const double sig_stop = table_stop_point(st.T);
        for (int i = 0; i < points; ++i) {
            const double r = out.dr * static_cast<double>(i);
            out.values[static_cast<std::size_t>(i)] = abel_odd_from_table(st.T, r, sig_stop, s_top);
        }
    }
    out.singular_origin = origin_spike(out.values);
    return out;
}

}  // namespace

ProfileBuild multiplier_profile(const MultiplierSpec& ms, int n, double r_max, int points) {
    if (n != 1 && n != 2) throw std::invalid_argument("multiplier_profile: dimension must be 1 or 2");
    if (points < 64 || r_max <= 1.0) throw std::invalid_argument("multiplier_profile: grid too small");
    const double dr = r_max / static_cast<double>(points - 1);
    const double s_res = 0.5 * M_PI / dr;

    // scan |m(s^2)| on a dense geometric grid up to 4 s_res
    const int ns = 1024;
    std::vector<double> sg(ns), av(ns);
    const double s_lo = 1e-3, s_hi = 4.0 * s_res;
    for (int k = 0; k < ns; ++k) {
        sg[k] = s_lo * std::pow(s_hi / s_lo, static_cast<double>(k) / (ns - 1));
        av[k] = std::abs(ms.m(sg[k] * sg[k]));
    }
    std::vector<double> suffix(ns);
    double run = 0.0;
    for (int k = ns - 1; k >= 0; --k) {
        run = std::max(run, av[k]);
        suffix[k] = run;
    }
    constexpr double kDecayTol = 1e-8;
    int cut = -1;
    for (int k = 0; k < ns; ++k)
        if (sg[k] <= 0.5 * s_res && suffix[k] < kDecayTol) {
            cut = k;
            break;
        }

    ProfileBuild pb;
    std::function<cplx(double)> theta;
    if (cut >= 0) {
        pb.path_a = true;
        pb.s_cut = 2.0 * sg[cut];
        pb.tail_sup = suffix[cut];
        pb.j_max = 0;
        theta = [m = ms.m](double s) { return m(s * s); };
    } else {
        pb.path_a = false;
        pb.j_max = std::max(0, static_cast<int>(std::floor(2.0 * std::log2(s_res))) - 2);
        pb.s_cut = std::exp2(0.5 * (pb.j_max + 2));
        const double band_lo = std::exp2(0.5 * (pb.j_max + 1));
        double tail = 0.0;
        for (int k = 0; k < ns; ++k)
            if (sg[k] >= band_lo) tail = std::max(tail, av[k]);
        pb.tail_sup = tail;
        const int jm = pb.j_max;
        theta = [m = ms.m, jm](double s) {
            if (s <= 0) return m(0.0) * 0.0;
            return m(s * s) * bump_lowpass(2.0 * std::log2(s) - static_cast<double>(jm));
        };
        if (pb.tail_sup > 1e-6) {
            // how fine a grid would push the discarded band below the decay tol
            double s_need = 0.0;
            for (double s = band_lo; s <= std::exp2(40.0); s *= 1.0905077326652577) {
                s_need = s;
                if (std::abs(ms.m(s * s)) < kDecayTol) break;
            }
            if (std::abs(ms.m(s_need * s_need)) < kDecayTol)
                pb.required_points =
                    static_cast<std::int64_t>(std::ceil(2.0 * s_need * r_max / M_PI)) + 1;
            else
                pb.required_points = 0;  // the symbol never decays: unreachable
        }
    }
    pb.profile = profile_from_theta(theta, n, pb.s_cut, r_max, points);
    return pb;
}

RadialProfile multiplier_piece_profile(const MultiplierSpec& ms, int n, int j, double r_max,
                                       int points) {
    const double s_top = std::exp2(0.5 * (j + 2));
    auto theta = [m = ms.m, j](double s) {
        if (s <= 0) return cplx(0.0, 0.0);
        return m(s * s) * bump_phi(std::ldexp(s * s, -j));
    };
    return profile_from_theta(theta, n, s_top, r_max, points);
}

RadialProfile multiplier_lowpass_profile(const MultiplierSpec& ms, int n, int jlo, double r_max,
                                         int points) {
    const double s_top = std::exp2(0.5 * (jlo + 2));
    auto theta = [m = ms.m, jlo](double s) {
        if (s <= 0) return m(0.0);
        return m(s * s) * bump_lowpass(2.0 * std::log2(s) - static_cast<double>(jlo));
    };
    return profile_from_theta(theta, n, s_top, r_max, points);
}

// ---------------------------------------------------------------------------
// Sobolev norms of the symbol pieces.
// ---------------------------------------------------------------------------

MHNorms mh_norms(const MultiplierSpec& ms, int per_octave, int octaves) {
    if (per_octave < 1 || octaves < 1) throw std::invalid_argument("mh_norms: bad grid");
    const std::size_t N = 2048;
    const double dx = 8.0 / static_cast<double>(N);  // supp of the bump is [1, 4]
    std::vector<cplx> g(N);
    const auto piece_norm = [&](double t, double order) {
        for (std::size_t j = 0; j < N; ++j) {
            const double x = dx * static_cast<double>(j);
            const double phi = bump_phi(x);
            g[j] = (phi == 0.0) ? cplx(0.0, 0.0) : ms.m(t * x) * phi;
        }
        return hs_norm(g, dx, order);
    };
    MHNorms out;
    for (int k = 1; k <= per_octave * octaves; ++k) {
        const double t = std::exp2(-static_cast<double>(k) / per_octave);
        out.local = std::max(out.local, piece_norm(t, ms.s0));
    }
    for (int k = 0; k <= per_octave * octaves; ++k) {
        const double t = std::exp2(static_cast<double>(k) / per_octave);
        out.global = std::max(out.global, piece_norm(t, ms.s_inf));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Band-limited decomposition.
// ---------------------------------------------------------------------------

BandDecomposition band_decompose(const std::vector<cplx>& f, double dx, double tau, int L) {
    if (f.size() < 8 || dx <= 0 || tau <= 0 || L < 0)
        throw std::invalid_argument("band_decompose: bad arguments");
    const std::size_t n_in = f.size();
    std::size_t M = 1;
    while (M < 2 * n_in) M <<= 1;
    const std::size_t full = 2 * M;  // even periodic extension of period 2 M dx
    std::vector<cplx> g(full, {0.0, 0.0});
    for (std::size_t j = 0; j < full; ++j) {
        const std::size_t fold = std::min(j, full - j);
        if (fold < n_in) g[j] = f[fold];
    }
    std::vector<cplx> ghat = dft(g, false);
    const double dxi = 2.0 * M_PI / (dx * static_cast<double>(full));
    const auto cut = [&](double xi, int ell) {
        const double axi = std::abs(xi);
        const double c0 = (axi == 0.0) ? 1.0 : bump_lowpass(std::log2(axi) + 2.0);
        if (ell == 0) return c0;
        // theta_ell = c(2^{-ell} xi) - c(2^{-ell+1} xi)
        const double a = (axi == 0.0) ? 1.0 : bump_lowpass(std::log2(axi) - ell + 2.0);
        const double b = (axi == 0.0) ? 1.0 : bump_lowpass(std::log2(axi) - ell + 3.0);
        return a - b;
    };
    const auto xi_of = [&](std::size_t k) {
        double kk = static_cast<double>(k);
        if (k >= (full + 1) / 2) kk -= static_cast<double>(full);
        return dxi * kk;
    };
    BandDecomposition bd;
    std::vector<cplx> piece_hat(full), recon(n_in, {0.0, 0.0});
    for (int ell = 0; ell <= L; ++ell) {
        for (std::size_t k = 0; k < full; ++k) piece_hat[k] = ghat[k] * cut(xi_of(k), ell);
        std::vector<cplx> piece = dft(piece_hat, true);
        BandPiece bp;
        bp.ell = ell;
        bp.tau = tau;
        bp.dx = dx;
        bp.support_radius = std::exp2(ell) * tau;
        // Store the full half period of the even extension so the piece is
        // exactly band-limited: folding these samples evenly reproduces the
        // internal periodic array bin for bin.
        bp.values.assign(piece.begin(), piece.begin() + static_cast<std::ptrdiff_t>(M) + 1);
        for (std::size_t j = 0; j < n_in; ++j) recon[j] += bp.values[j];
        bd.pieces.push_back(std::move(bp));
    }
    double tail = 0.0;
    for (std::size_t j = 0; j < n_in; ++j) tail = std::max(tail, std::abs(f[j] - recon[j]));
    bd.tail_linf = tail;
    return bd;
}

double band_piece_moment(const BandPiece& p, double q, double Q) {
    if (p.values.size() < 3) return 0.0;
    const std::vector<double> w = simpson_weights(p.values.size(), p.dx);
    // int |f_ell(tau x)|^2 (x^{2q} + x^{2Q}) dx = (1/tau) int |f_ell(u)|^2 ((u/tau)^{2q} + (u/tau)^{2Q}) du
    double acc = 0.0;
    for (std::size_t i = 1; i < p.values.size(); ++i) {
        const double u = p.dx * static_cast<double>(i);
        const double x = u / p.tau;
        acc += w[i] * std::norm(p.values[i]) * (std::pow(x, 2.0 * q) + std::pow(x, 2.0 * Q));
    }
    return acc / p.tau;
}

// ---------------------------------------------------------------------------
// Dense lattice application.
// ---------------------------------------------------------------------------

double window_diameter(const LatticeSpec& lat) {
    const CZSet& w = lat.window;
    double dx2 = 0.0;
    for (int i = 0; i < w.dim; ++i) dx2 += w.side * w.side;
    const double dt = 2.0 * w.half_width;
    const double t_lo = w.t_center - w.half_width;
    const double arg = std::cosh(dt) + 0.5 * dx2 * std::exp(-2.0 * t_lo);
    return std::acosh(std::max(1.0, arg));
}

GridFunction apply_multiplier(const MultiplierSpec& ms, const GridFunction& f) {
    const double r_max = window_diameter(f.lat) + 1.0;
    const int points = 1 + (1 << 12);
    const ProfileBuild pb = multiplier_profile(ms, f.lat.dim(), r_max, points);
    return apply_multiplier(pb.profile, f);
}

GridFunction apply_multiplier(const RadialProfile& k, const GridFunction& f) {
    const int n = f.lat.dim();
    if (k.n != n) throw std::invalid_argument("apply_multiplier: profile dimension mismatch");
    const auto N = static_cast<std::size_t>(f.lat.points());
    if (f.v.size() != N) throw std::invalid_argument("apply_multiplier: sample count mismatch");
    std::vector<GroupPoint> pts(N);
    std::vector<cplx> w(N);
    const double mass = f.lat.cell_mass();
    for (std::size_t i = 0; i < N; ++i) {
        pts[i] = f.lat.point(static_cast<std::int64_t>(i));
        w[i] = std::exp(-0.5 * n * pts[i].t) * f.v[i] * mass;
    }
    GridFunction out = GridFunction::zeros(f.lat);
    std::vector<cplx> row(N);
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) row[j] = k.eval(distance(pts[i], pts[j])) * w[j];
        out.v[i] = std::exp(-0.5 * n * pts[i].t) * pairwise_sum(row.data(), N);
    }
    return out;
}

}  // namespace axb
