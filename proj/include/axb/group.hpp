#pragma once
#include <array>
#include <cstdint>
#include <vector>

namespace axb {

// Maximum spatial dimension supported by the desk-scale experiments.
inline constexpr int kMaxDim = 3;

// Point of the solvable group S = R^n ⋉ R_+ ("ax+b" group), stored in
// logarithmic coordinates: spatial part x in R^n and t = log(a), where a > 0
// is the dilation component.  In (x, t) coordinates the right Haar measure
// rho is plain Lebesgue measure dx dt and the modular function is e^{-n t}.
struct GroupPoint {
    std::array<double, kMaxDim> x{};
    double t = 0.0;
    int dim = 1;

    static GroupPoint identity(int n) { return GroupPoint{{}, 0.0, n}; }
};

// Group law (x,a)·(x',a') = (x + a x', a a'); in log coordinates the
// dilation components add.
GroupPoint multiply(const GroupPoint& p, const GroupPoint& q);

// Inverse (-x/a, 1/a).
GroupPoint invert(const GroupPoint& p);

// Left-invariant hyperbolic distance:
//   cosh d = cosh(t_p - t_q) + |x_p - x_q|^2 e^{-(t_p+t_q)} / 2,
// the acosh argument clamped below at 1 to absorb roundoff.
double distance(const GroupPoint& p, const GroupPoint& q);

// Modular function delta(x, a) = a^{-n} = e^{-n t};
// d(lambda) = delta · d(rho) relates left and right Haar measures.
double modular(const GroupPoint& p);

// Area density of the geodesic sphere of radius r:
//   A(r) = 4^n sinh^n(r/2) cosh^n(r/2)  ( = (2 sinh r)^n ).
double radial_density(int n, double r);

// Constant C_n = |S^n| / 2^n in the radial integration formulas
//   ∫ f(d(y,e)) dlambda(y)            = C_n ∫_0^∞ f(r) A(r) dr
//   ∫ delta^{1/2}(y) f(d(y,e)) drho(y) = C_n ∫_0^∞ phi_0(r) f(r) A(r) dr.
// Equals pi for n = 1 and n = 2.
double radial_constant(int n);

// Volume of the unit Euclidean ball in R^n (x-sections of metric balls).
double unit_ball_volume(int n);

struct BallVolume {
    double value = 0.0;          // rho(B(e, r))
    double spacing = 0.0;        // final midpoint-lattice spacing
    double rel_change = 0.0;     // |V_h - V_{h/2}| / V_{h/2} at acceptance
    bool converged = false;
};

// rho-volume of the metric ball B(e, r) by midpoint-rule lattice quadrature
// over the bounding box of the ball.  The x-sections are Euclidean balls of
// radius R(t) = sqrt(2 e^t (cosh r - cosh t)), so rows are counted exactly.
// The spacing is halved until the result moves by less than rel_tol; if the
// iteration cap is hit first, `converged` is false and `rel_change` reports
// the tolerance actually achieved.
BallVolume ball_volume_rho(int n, double r, double rel_tol = 0.005,
                           int max_refinements = 12);

// Reference value for rho(B(e,r)) via the exact section reduction
//   rho(B(e,r)) = ∫_{-r}^{r} omega_n R(t)^n dt
// evaluated with adaptive Simpson quadrature (test oracle for the lattice).
double ball_volume_rho_reference(int n, double r, double tol = 1e-10);

// Cached table of r -> rho(B(e,r)) on a uniform grid with cubic
// interpolation, for kernels that divide by ball volumes.
class BallVolumeTable {
  public:
    BallVolumeTable(int n, double r_max, int samples = 512);
    double operator()(double r) const;  // rho(B(e, max(r, r_min)))
    int dim() const { return n_; }

  private:
    int n_;
    double r_max_, h_;
    std::vector<double> v_;
};

}  // namespace axb
