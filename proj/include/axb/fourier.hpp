#pragma once
#include <complex>
#include <vector>

namespace axb {

using cplx = std::complex<double>;

// Complex DFT (FFTW, deterministic plans).  forward: X_k = sum_j x_j e^{-2pi i jk/N}.
std::vector<cplx> dft(const std::vector<cplx>& in, bool inverse);

// H^s Sobolev norm of a compactly supported sampled function, computed on the
// periodic extension of [0, N dx):  ||g||^2 = (2pi)^{-1} int (1+xi^2)^s |Fg|^2 dxi.
double hs_norm(const std::vector<cplx>& samples, double dx, double s);

// Table of the oscillatory integrals  T(sig) = int_0^{S} g(s) sin(s sig) ds
// for g sampled uniformly on [0, S] (g[0] at s = 0).  Computed by a sine
// transform of the zero-padded samples, hence on the uniform sig-grid
// sig_k = pi k/(M ds) with M = oversample * (#samples); only sig <= sig_keep
// is retained.  The trapezoid sum is O(ds^4)-accurate when g vanishes with
// its derivative at the top end and g(0) = 0.
struct OddTransformTable {
    double dsig = 0.0;
    std::vector<cplx> val;  // val[k] = T(k * dsig)

    cplx eval(double sig) const;           // cubic interpolation; 0 beyond the table
    double max_abs_from(double sig) const; // sup of |val| at or beyond sig
    double sig_max() const { return val.empty() ? 0.0 : dsig * static_cast<double>(val.size() - 1); }
};
OddTransformTable sine_integral_table(const std::vector<cplx>& g, double ds, int oversample,
                                      double sig_keep);

}  // namespace axb
