#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "axb/fourier.hpp"
#include "axb/grid_function.hpp"
#include "axb/group.hpp"

namespace axb {

// ---------------------------------------------------------------------------
// Radial geometry of the symmetric-space picture (dimension n = half-space
// x-dimension; the hyperbolic space has dimension n+1).
// ---------------------------------------------------------------------------

// (radial_constant C_n and the sphere-area density A(r) = radial_density live
// in group.hpp alongside the distance they integrate.)

// Spherical function at the bottom of the spectrum, phi_0(r):
//   n=1: Legendre P_{-1/2}(cosh r);  n=2: r / sinh r.
double phi0(int n, double r);
// Independent n=1 oracle via the integral representation
//   phi_0(r) = (sqrt2/pi) int_0^r (cosh r - cosh t)^{-1/2} dt.
double phi0_integral_oracle(double r);

// Spherical function phi_s(r) = sin(s r)/(s sinh r) for n = 2 (throws otherwise).
double spherical_function(int n, double s, double r);

// ---------------------------------------------------------------------------
// Smooth dyadic bump partition on (0, infty).
// ---------------------------------------------------------------------------

double bump_step(double u);      // C^inf step: 0 for u <= 0, 1 for u >= 1
double bump_lowpass(double l);   // G(l): 1 for l <= 1, 0 for l >= 2 (l = log2 scale)
double bump_phi(double t);       // phi(t) = G(log2 t) - G(log2 t + 1); supp in [1, 4]
// sum_{j=jlo}^{jhi} phi(2^{-j} t); telescopes to bump_lowpass differences.
double partition_sum(double t, int jlo, int jhi);

// ---------------------------------------------------------------------------
// Radial kernel profiles.
// ---------------------------------------------------------------------------

// Samples of a radial kernel profile k(r) on the uniform grid r_i = i * dr,
// i = 0..values.size()-1, for the stated dimension n.
struct RadialProfile {
    int n = 2;
    double dr = 0.0;
    std::vector<cplx> values;
    // descriptor: the profile grows into an (integrable) singularity as r -> 0
    bool singular_origin = false;

    double r_max() const {
        return values.empty() ? 0.0 : dr * static_cast<double>(values.size() - 1);
    }
    // Cubic interpolation with even reflection at r = 0; zero beyond r_max.
    cplx eval(double r) const;
};

// L^1 mass of the profile over the annulus eps <= r <= 2 eps, in the measure
// that weights radial integrands:  C_n int phi_0(r) |k(r)| A(r) dr.
// Requires 2*eps <= r_max of the profile.
double annulus_l1(const RadialProfile& k, double eps);
// Same integral over [eps, r_max] (the full exterior mass).
double exterior_l1(const RadialProfile& k, double eps);

// ---------------------------------------------------------------------------
// Abel transform inversion and the spherical (Fourier-Helgason) transform.
// ---------------------------------------------------------------------------

// Inverse Abel transform of an even function given by samples ghat[i] at
// r = i * ds_in (the r >= 0 half of the even function).  Output profile on
// r_i = i * out_dr, i = 0..out_pts-1.  n in {1, 2}:
//   n=2: A^{-1}g(r) = (2pi)^{-1} (-1/sinh r) g'(r)
//   n=1: A^{-1}g(r) = (2pi)^{-1/2} int_r^inf (-g'(s)) (cosh s - cosh r)^{-1/2} ds
// The input is assumed to have decayed (with derivative) by the top sample.
RadialProfile inverse_abel(const std::vector<cplx>& ghat, double ds_in, int n, int out_pts,
                           double out_dr);

// Spherical transform of a radial profile for n = 2:
//   H k(s) = C_2 int_0^inf phi_s(r) k(r) A(r) dr   (composite Simpson).
std::vector<cplx> spherical_transform(const RadialProfile& k, const std::vector<double>& s_list);

// ---------------------------------------------------------------------------
// Spectral multipliers m(L) of the shifted Laplacian.
// ---------------------------------------------------------------------------

struct MultiplierSpec {
    std::function<cplx(double)> m;  // symbol on [0, infty)
    double s0 = 1.6;                // local smoothness order probed by mh_norms
    double s_inf = 1.7;             // smoothness order at infinity
    std::string name;
};

// Parse "heat:<zeta>", "imaginary-power:<beta>", "riesz:<zeta>" or
// "file:<path>" (uniform samples of the symbol, JSON; see io.hpp).
MultiplierSpec make_multiplier(const std::string& spec, int n);

// Radial convolution-kernel profile of m(L): the inverse spherical transform
// of s -> m(s^2), computed symbol-side.  When the symbol decays below 1e-8
// within the resolvable band, a single direct inversion is used (path_a);
// otherwise the symbol is cut smoothly at the highest resolvable dyadic block
// (j_max) and the discarded high-frequency part is reported in tail_sup.
struct ProfileBuild {
    RadialProfile profile;
    bool path_a = false;
    int j_max = 0;          // highest dyadic block kept (path B)
    double s_cut = 0.0;     // symbol support kept: s <= s_cut
    double tail_sup = 0.0;  // sup |m(s^2)| over the discarded band
    std::int64_t required_points = 0;  // grid size estimate that would capture the tail
};
ProfileBuild multiplier_profile(const MultiplierSpec& ms, int n, double r_max, int points);

// Profile of one dyadic piece  s -> m(s^2) phi(2^{-j} s^2)  (for decomposition
// consistency checks), on the same output grid convention as multiplier_profile.
RadialProfile multiplier_piece_profile(const MultiplierSpec& ms, int n, int j, double r_max,
                                       int points);
// Profile of the low-pass part  s -> m(s^2) G(log2 s^2 - jlo).
RadialProfile multiplier_lowpass_profile(const MultiplierSpec& ms, int n, int jlo, double r_max,
                                         int points);

// Sobolev norms of the symbol pieces: sup_t ||m(t .) phi||_{H^s} over a
// geometric t-grid with `per_octave` points per octave and `octaves` octaves
// on each side of t = 1.  Returns {sup over t<1 at order s0, sup over t>=1 at
// order s_inf}.
struct MHNorms {
    double local = 0.0;   // sup_{t < 1} ||m(t.) phi||_{H^{s0}}
    double global = 0.0;  // sup_{t >= 1} ||m(t.) phi||_{H^{s_inf}}
};
MHNorms mh_norms(const MultiplierSpec& ms, int per_octave, int octaves);

// ---------------------------------------------------------------------------
// Band-limited decomposition of a compactly supported function on (0, infty).
// ---------------------------------------------------------------------------

// Piece ell of f at scale tau: values of f_ell on the x-grid of the input,
// extended to the full half period of the internal even extension (the pieces
// spill slightly past the input support; truncating them would break exact
// band-limitation).  The rescaled piece is f_{ell,tau}(x) = f_ell(tau x),
// with Fourier support of f_{ell,tau} inside [-2^ell tau, 2^ell tau].
struct BandPiece {
    int ell = 0;
    double tau = 1.0;
    double dx = 0.0;
    std::vector<cplx> values;       // f_ell on x_i = i * dx, i = 0..M
    double support_radius = 0.0;    // 2^ell * tau
};
struct BandDecomposition {
    std::vector<BandPiece> pieces;  // ell = 0..L
    double tail_linf = 0.0;         // sup |f - sum pieces| on the grid
};
// f given by samples on x_i = i * dx (even extension is used internally).
BandDecomposition band_decompose(const std::vector<cplx>& f, double dx, double tau, int L);

// Weighted L^2 moment of a piece:  int |f_ell(tau x)|^2 (x^{2q} + x^{2Q}) dx.
double band_piece_moment(const BandPiece& p, double q, double Q);

// ---------------------------------------------------------------------------
// Applying a radial-profile operator on a lattice window.
// ---------------------------------------------------------------------------

// Dense application of the right-convolution operator with kernel profile k:
//   (T f)(x) = sum_z k(d(x,z)) e^{-n(t_x - t_z)/2} e^{-n t_z} f(z) cellvol(z),
// i.e. the integral kernel K(x,y) = delta^{1/2}(y^{-1}x) k(d(x,y)) delta(y)
// discretized on the function's own lattice.  O(N^2).
GridFunction apply_multiplier(const RadialProfile& k, const GridFunction& f);

// Convenience overload: builds the kernel profile out to the window diameter
// (plus margin) and applies it.
GridFunction apply_multiplier(const MultiplierSpec& ms, const GridFunction& f);

// Upper bound for the distance between any two points of the window lattice.
double window_diameter(const LatticeSpec& lat);

}  // namespace axb
