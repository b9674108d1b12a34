#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "axb/czset.hpp"

namespace axb {

using cplx = std::complex<double>;

// Uniform sample lattice attached to a window.  Spacings are exact dyadic
// fractions of the window dimensions (h_x = side/2^px, h_t = 2r/2^pt), so
// admissible sets built from the window tile into whole cells.  Sample
// (i..., j) sits at the lower corner of its half-open cell and carries
// rho-mass h_x^n h_t exactly (rho is Lebesgue in (x, t)).
struct LatticeSpec {
    CZSet window;
    int px = 7;
    int pt = 7;

    std::int64_t nx() const { return std::int64_t(1) << px; }
    std::int64_t nt() const { return std::int64_t(1) << pt; }
    double hx() const { return std::ldexp(window.side, -px); }
    double ht() const { return std::ldexp(2.0 * window.half_width, -pt); }
    int dim() const { return window.dim; }
    std::int64_t x_cells() const {
        std::int64_t c = 1;
        for (int i = 0; i < dim(); ++i) c *= nx();
        return c;
    }
    std::int64_t points() const { return x_cells() * nt(); }
    double cell_mass() const {
        double m = ht();
        for (int i = 0; i < dim(); ++i) m *= hx();
        return m;
    }
    // flat = x_flat * nt + j with x_flat = i0 (n=1) or i0*nx + i1 (n=2)
    std::int64_t index(const std::int64_t* ix, std::int64_t j) const {
        std::int64_t xf = 0;
        for (int i = 0; i < dim(); ++i) xf = xf * nx() + ix[i];
        return xf * nt() + j;
    }
    GroupPoint point(std::int64_t flat) const;
};

struct GridFunction {
    LatticeSpec lat;
    std::vector<cplx> v;

    static GridFunction zeros(const LatticeSpec& l) {
        return GridFunction{l, std::vector<cplx>(static_cast<std::size_t>(l.points()))};
    }
};

// Deterministic pairwise reductions (fixed association order).
double pairwise_sum(const double* a, std::size_t n);
cplx pairwise_sum(const cplx* a, std::size_t n);

// ∫ f drho over the window (functions vanish outside it).
cplx integrate_rho(const GridFunction& f);

// L^p norm for p in [1, ∞); p = infinity handled by sup_norm.
double lp_norm(const GridFunction& f, double p);
double sup_norm(const GridFunction& f);

// Weak L^p quasi-norm sup_a a * rho(|f| > a)^{1/p} by exact sweep over the
// distribution function's jump points.
double weak_lp_norm(const GridFunction& f, double p);
inline double weak_l1_norm(const GridFunction& f) { return weak_lp_norm(f, 1.0); }

// Global non-increasing rearrangement f*(xi) = inf{ t>0 : rho(|f|>t) < xi }.
double rearrangement(const GridFunction& f, double xi);

}  // namespace axb
