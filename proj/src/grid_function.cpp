#include "axb/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace axb {

GroupPoint LatticeSpec::point(std::int64_t flat) const {
    GroupPoint p;
    p.dim = dim();
    std::int64_t j = flat % nt();
    std::int64_t xf = flat / nt();
    for (int i = dim() - 1; i >= 0; --i) {
        p.x[static_cast<std::size_t>(i)] =
            window.corner[static_cast<std::size_t>(i)] +
            static_cast<double>(xf % nx()) * hx();
        xf /= nx();
    }
    p.t = (window.t_center - window.half_width) + static_cast<double>(j) * ht();
    return p;
}

namespace {
// Strictly pairwise: beyond the usual error bound, sums of equal values stay
// exact (every addition doubles), so means of constant data round-trip.
template <class T>
T pairwise_impl(const T* a, std::size_t n) {
    if (n == 0) return T{};
    if (n == 1) return a[0];
    if (n == 2) return a[0] + a[1];
    std::size_t h = n / 2;
    return pairwise_impl(a, h) + pairwise_impl(a + h, n - h);
}
}  // namespace

double pairwise_sum(const double* a, std::size_t n) { return pairwise_impl(a, n); }
cplx pairwise_sum(const cplx* a, std::size_t n) { return pairwise_impl(a, n); }

cplx integrate_rho(const GridFunction& f) {
    return pairwise_sum(f.v.data(), f.v.size()) * f.lat.cell_mass();
}

double lp_norm(const GridFunction& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    std::vector<double> pow_abs(f.v.size());
    for (std::size_t i = 0; i < f.v.size(); ++i)
        pow_abs[i] = std::pow(std::abs(f.v[i]), p);
    double s = pairwise_sum(pow_abs.data(), pow_abs.size()) * f.lat.cell_mass();
    return std::pow(s, 1.0 / p);
}

double sup_norm(const GridFunction& f) {
    double m = 0.0;
    for (const cplx& z : f.v) m = std::max(m, std::abs(z));
    return m;
}

double weak_lp_norm(const GridFunction& f, double p) {
    // rho(|f| > a) is a step function jumping exactly at the distinct values
    // of |f|; the sup of a * rho(|f| > a)^{1/p} over a > 0 is attained as
    // a -> v_k^- for some sample value v_k, where rho(|f| > a) counts the
    // samples with |f| >= v_k.  Sweep the sorted values once.
    std::vector<double> mag(f.v.size());
    for (std::size_t i = 0; i < f.v.size(); ++i) mag[i] = std::abs(f.v[i]);
    std::sort(mag.begin(), mag.end(), std::greater<double>());
    double w = f.lat.cell_mass();
    double best = 0.0;
    for (std::size_t k = 0; k < mag.size(); ++k) {
        if (mag[k] == 0.0) break;
        double measure = w * static_cast<double>(k + 1);
        best = std::max(best, mag[k] * std::pow(measure, 1.0 / p));
    }
    return best;
}

double rearrangement(const GridFunction& f, double xi) {
    if (!(xi > 0.0)) throw std::invalid_argument("rearrangement: xi must be > 0");
    std::vector<double> mag(f.v.size());
    for (std::size_t i = 0; i < f.v.size(); ++i) mag[i] = std::abs(f.v[i]);
    std::sort(mag.begin(), mag.end(), std::greater<double>());
    double w = f.lat.cell_mass();
    // rho(|f| > t) < xi first holds when at most ceil(xi/w) - 1 samples
    // exceed t; the infimum is therefore the m-th largest magnitude with
    // m = ceil(xi/w) (0 if xi exceeds the support mass).
    double q = xi / w;
    auto m = static_cast<std::int64_t>(std::ceil(q));
    if (m < 1) m = 1;
    if (m > static_cast<std::int64_t>(mag.size())) return 0.0;
    return mag[static_cast<std::size_t>(m - 1)];
}

}  // namespace axb
