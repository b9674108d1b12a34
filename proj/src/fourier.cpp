#include "axb/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace axb {

std::vector<cplx> dft(const std::vector<cplx>& in, bool inverse) {
    const int n = static_cast<int>(in.size());
    if (n == 0) return {};
    std::vector<cplx> out(in.size());
    // std::complex<double> is layout-compatible with fftw_complex.
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan = fftw_plan_dft_1d(n, src, dst, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                      FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& v : out) v *= scale;
    }
    return out;
}

double hs_norm(const std::vector<cplx>& samples, double dx, double s) {
    const std::size_t n = samples.size();
    if (n == 0 || dx <= 0) throw std::invalid_argument("hs_norm: empty samples or bad spacing");
    std::vector<cplx> hat = dft(samples, false);
    const double period = dx * static_cast<double>(n);
    const double dxi = 2.0 * M_PI / period;
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        // signed frequency of bin k
        double kk = static_cast<double>(k);
        if (k >= (n + 1) / 2) kk -= static_cast<double>(n);
        const double xi = dxi * kk;
        const double w = std::pow(1.0 + xi * xi, s);
        acc += w * std::norm(hat[k] * dx);
    }
    return std::sqrt(acc * dxi / (2.0 * M_PI));
}

cplx OddTransformTable::eval(double sig) const {
    if (val.empty() || dsig <= 0) return {0.0, 0.0};
    if (sig < 0) sig = -sig;  // the table is odd; callers only use sig >= 0
    const double x = sig / dsig;
    const auto last = static_cast<double>(val.size() - 1);
    if (x >= last) return {0.0, 0.0};
    const auto i = static_cast<std::ptrdiff_t>(std::floor(x));
    const double u = x - static_cast<double>(i);
    const auto at = [&](std::ptrdiff_t j) -> cplx {
        if (j < 0) return -val[static_cast<std::size_t>(-j)];  // odd reflection at 0
        if (j > static_cast<std::ptrdiff_t>(val.size()) - 1) return {0.0, 0.0};
        return val[static_cast<std::size_t>(j)];
    };
    const cplx p0 = at(i - 1), p1 = at(i), p2 = at(i + 1), p3 = at(i + 2);
    // Catmull-Rom cubic
    const double u2 = u * u, u3 = u2 * u;
    return 0.5 * ((2.0 * p1) + (-p0 + p2) * u + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u2 +
                  (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u3);
}

double OddTransformTable::max_abs_from(double sig) const {
    if (val.empty()) return 0.0;
    auto k0 = static_cast<std::size_t>(std::max(0.0, std::floor(sig / dsig)));
    double m = 0.0;
    for (std::size_t k = k0; k < val.size(); ++k) m = std::max(m, std::abs(val[k]));
    return m;
}

namespace {

// One real sine transform: out_k = ds * sum_{j>=1} g_j sin(pi j k / M), k = 0..M-1,
// via FFTW RODFT00 of logical size 2M (pass M-1 interior points).
std::vector<double> sine_sum(const std::vector<double>& g, double ds, std::size_t M,
                             std::size_t keep) {
    std::vector<double> in(M - 1, 0.0), out(M - 1, 0.0);
    for (std::size_t j = 1; j < g.size() && j < M; ++j) in[j - 1] = g[j];
    fftw_plan plan = fftw_plan_r2r_1d(static_cast<int>(M - 1), in.data(), out.data(), FFTW_RODFT00,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    std::vector<double> res(keep, 0.0);
    for (std::size_t k = 1; k < keep && k <= M - 1; ++k) res[k] = 0.5 * ds * out[k - 1];
    return res;
}

}  // namespace

OddTransformTable sine_integral_table(const std::vector<cplx>& g, double ds, int oversample,
                                      double sig_keep) {
    if (g.size() < 4 || ds <= 0 || oversample < 1)
        throw std::invalid_argument("sine_integral_table: bad arguments");
    const std::size_t n = g.size();
    std::size_t M = 1;
    while (M < n * static_cast<std::size_t>(oversample)) M <<= 1;
    OddTransformTable tab;
    tab.dsig = M_PI / (static_cast<double>(M) * ds);
    auto keep = static_cast<std::size_t>(std::ceil(sig_keep / tab.dsig)) + 2;
    keep = std::min(keep, M);

    bool has_im = false;
    for (const auto& v : g)
        if (v.imag() != 0.0) {
            has_im = true;
            break;
        }
    std::vector<double> part(n);
    for (std::size_t j = 0; j < n; ++j) part[j] = g[j].real();
    std::vector<double> re = sine_sum(part, ds, M, keep);
    std::vector<double> im;
    if (has_im) {
        for (std::size_t j = 0; j < n; ++j) part[j] = g[j].imag();
        im = sine_sum(part, ds, M, keep);
    }
    tab.val.resize(keep);
    for (std::size_t k = 0; k < keep; ++k) tab.val[k] = cplx(re[k], has_im ? im[k] : 0.0);
    return tab;
}

}  // namespace axb
