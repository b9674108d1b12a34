#include "axb/group.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace axb {

GroupPoint multiply(const GroupPoint& p, const GroupPoint& q) {
    GroupPoint out;
    out.dim = p.dim;
    const double a = std::exp(p.t);
    for (int i = 0; i < p.dim; ++i) out.x[i] = p.x[i] + a * q.x[i];
    out.t = p.t + q.t;
    return out;
}

GroupPoint invert(const GroupPoint& p) {
    GroupPoint out;
    out.dim = p.dim;
    const double inv_a = std::exp(-p.t);
    for (int i = 0; i < p.dim; ++i) out.x[i] = -p.x[i] * inv_a;
    out.t = -p.t;
    return out;
}

double distance(const GroupPoint& p, const GroupPoint& q) {
    double dx2 = 0.0;
    for (int i = 0; i < p.dim; ++i) {
        const double d = p.x[i] - q.x[i];
        dx2 += d * d;
    }
    const double arg = std::cosh(p.t - q.t) + 0.5 * dx2 * std::exp(-(p.t + q.t));
    return std::acosh(std::max(1.0, arg));
}

double modular(const GroupPoint& p) { return std::exp(-p.dim * p.t); }

double radial_density(int n, double r) {
    const double s = std::sinh(0.5 * r), c = std::cosh(0.5 * r);
    return std::pow(4.0 * s * c, n);
}

double radial_constant(int n) {
    // |S^n| = 2 pi^{(n+1)/2} / Gamma((n+1)/2), divided by 2^n.
    const double pi = 3.14159265358979323846;
    const double area = 2.0 * std::pow(pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
    return area / std::pow(2.0, n);
}

double unit_ball_volume(int n) {
    const double pi = 3.14159265358979323846;
    return std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

namespace {

// Euclidean radius of the x-section of B(e, r) at height t (|t| <= r).
inline double section_radius(double r, double t) {
    const double s = 2.0 * std::exp(t) * (std::cosh(r) - std::cosh(t));
    return s > 0.0 ? std::sqrt(s) : 0.0;
}

// Number of midpoints (k + 1/2) h, k in Z, lying in [-X, X].
inline std::int64_t midpoint_count(double X, double h) {
    if (X <= 0.0) return 0;
    return 2 * static_cast<std::int64_t>(std::floor(X / h + 0.5));
}

double lattice_volume(int n, double r, double h) {
    // Midpoint rows in t over [-r, r]; x handled by exact row counts.
    const std::int64_t nt = static_cast<std::int64_t>(std::ceil(2.0 * r / h));
    double total = 0.0;
    for (std::int64_t j = 0; j < nt; ++j) {
        const double t = -r + (j + 0.5) * h;
        if (t <= -r || t >= r) continue;
        const double R = section_radius(r, t);
        if (n == 1) {
            total += static_cast<double>(midpoint_count(R, h)) * h * h;
        } else if (n == 2) {
            const std::int64_t nx = static_cast<std::int64_t>(std::floor(R / h + 0.5));
            std::int64_t cells = 0;
            for (std::int64_t k = -nx; k < nx; ++k) {
                const double x1 = (k + 0.5) * h;
                const double rem = R * R - x1 * x1;
                cells += midpoint_count(rem > 0 ? std::sqrt(rem) : 0.0, h);
            }
            total += static_cast<double>(cells) * h * h * h;
        } else {
            throw std::invalid_argument("ball_volume_rho: dim must be 1 or 2");
        }
    }
    return total;
}

}  // namespace

BallVolume ball_volume_rho(int n, double r, double rel_tol, int max_refinements) {
    BallVolume out;
    double h = std::min(r / 8.0, 0.25);
    double prev = lattice_volume(n, r, h);
    for (int i = 0; i < max_refinements; ++i) {
        h *= 0.5;
        const double cur = lattice_volume(n, r, h);
        const double change = std::abs(cur - prev) / std::max(cur, 1e-300);
        prev = cur;
        out.value = cur;
        out.spacing = h;
        out.rel_change = change;
        if (change < rel_tol) {
            out.converged = true;
            return out;
        }
    }
    out.converged = false;
    return out;
}

namespace {

template <typename F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) < 15.0 * tol) return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate_adaptive(const F& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double ball_volume_rho_reference(int n, double r, double tol) {
    const double wn = unit_ball_volume(n);
    auto f = [&](double t) { return wn * std::pow(section_radius(r, t), n); };
    return integrate_adaptive(f, -r, r, tol * std::max(1.0, std::exp(n * r)));
}

BallVolumeTable::BallVolumeTable(int n, double r_max, int samples)
    : n_(n), r_max_(r_max), h_(r_max / samples), v_(samples + 1) {
    v_[0] = 0.0;
    for (int i = 1; i <= samples; ++i)
        v_[i] = ball_volume_rho_reference(n, i * h_, 1e-9);
}

double BallVolumeTable::operator()(double r) const {
    const double rr = std::clamp(r, h_, r_max_);
    const auto N = static_cast<std::int64_t>(v_.size()) - 1;
    std::int64_t i = std::clamp<std::int64_t>(static_cast<std::int64_t>(rr / h_), 1, N - 2);
    const double u = rr / h_ - i;
    // Catmull-Rom cubic through the four surrounding samples.
    const double p0 = v_[i - 1], p1 = v_[i], p2 = v_[i + 1], p3 = v_[i + 2];
    return p1 + 0.5 * u * (p2 - p0 + u * (2 * p0 - 5 * p1 + 4 * p2 - p3 +
                                          u * (3 * (p1 - p2) + p3 - p0)));
}

}  // namespace axb
