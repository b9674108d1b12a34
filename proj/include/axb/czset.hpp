#pragma once
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "axb/group.hpp"

namespace axb {

// Admissible set R = Q x [a e^{-r}, a e^r) in (x, t = log a) coordinates:
// a dyadic cube Q (lower corner + side L) times the half-open slab
// [t_center - r, t_center + r).  rho(R) = L^n · 2r exactly.
struct CZSet {
    std::array<double, kMaxDim> corner{};
    double side = 0.0;
    double t_center = 0.0;
    double half_width = 0.0;
    int dim = 1;

    GroupPoint center() const;            // x_R = (center of Q, t_center)
    double t_lo() const { return t_center - half_width; }
    double t_hi() const { return t_center + half_width; }
    bool contains(const GroupPoint& p) const;
};

double rho_measure(const CZSet& R);

// Two-regime admissibility of the side length against the scale a r:
//   r < 1 :  e^2 a r  <= L < e^8 a r
//   r >= 1:  a e^{2r} <= L < a e^{8r},  with a = e^{t_center}.
bool admissible(const CZSet& R);

struct NoAdmissibleSplit : std::runtime_error {
    explicit NoAdmissibleSplit(const std::string& what) : std::runtime_error(what) {}
};
struct InclusionViolation : std::runtime_error {
    explicit InclusionViolation(const std::string& what) : std::runtime_error(what) {}
};

enum class SplitKind { Cube, Slab, None };

// Split whose children are all admissible; Cube preferred when both work.
SplitKind choose_split(const CZSet& R);
std::vector<CZSet> split_children(const CZSet& R, SplitKind kind);

// Equal-measure subdivision into 2^n cube children or 2 slab children.
// Throws NoAdmissibleSplit when neither split keeps every child admissible.
std::vector<CZSet> subdivide(const CZSet& R);

// Exact distance from a point to a set: the x-coordinate clamps to the cube
// (the distance is monotone in |x_p - x_q|) and the slab coordinate has a
// closed-form unconstrained minimizer t* = log sqrt(e^{2 t_p} + |dx|^2),
// clamped to the slab; the objective is strictly convex in t_q.
double distance_to_set(const GroupPoint& p, const CZSet& R);

// Membership in the dilation R* = { p : d(p, R) < r_R }.
bool dilated_contains(const CZSet& R, const GroupPoint& p);

// ---------------------------------------------------------------------------
// Dyadic grid: a windowed filtration of the root.  Nodes carry exact integer
// coordinates (cube halvings kx with index vector ix, slab halvings kt with
// index jt), so partition/nesting/measure-ratio checks never touch floats.
// ---------------------------------------------------------------------------

struct GridNode {
    std::int32_t kx = 0;
    std::int32_t kt = 0;
    std::array<std::int64_t, kMaxDim> ix{};
    std::int64_t jt = 0;
    std::int32_t parent = -1;
    std::int32_t first_child = -1;
    std::int32_t child_count = 0;
    SplitKind split = SplitKind::None;  // split applied below this node
    CZSet box;
};

struct DyadicGrid {
    CZSet root;
    std::vector<GridNode> nodes;                      // node 0 is the root
    std::vector<std::vector<std::int32_t>> levels;    // ids per generation
    int depth() const { return static_cast<int>(levels.size()) - 1; }
};

// Per-node stopping-time construction (cube preferred per node).
DyadicGrid build_grid(const CZSet& root, int depth);

// Global schedule: one split kind per generation, chosen so that every node
// of the generation stays admissible, until (kx, kt) reaches the target.
// Generations are shape-uniform; with a matching lattice the leaves hold
// exactly one sample each.  Throws NoAdmissibleSplit if no schedule exists.
DyadicGrid build_grid_uniform(const CZSet& root, int target_kx, int target_kt);

struct GridValidation {
    bool partition = false;       // each generation tiles the root exactly
    bool nesting = false;         // cross-generation inclusion/disjointness
    bool parent_measure = false;  // rho(parent) <= max{2^n,3} rho(child)
    bool child_band = false;      // rho(R)/2^n <= rho(child) <= 2 rho(R)/3
    bool admissible_nodes = false;
    bool ok() const {
        return partition && nesting && parent_measure && child_band && admissible_nodes;
    }
};
GridValidation validate_grid(const DyadicGrid& g);

struct KappaEstimate {
    double kappa0 = 0.0;       // max over sets of sup_R d(x_R, ·) / r_R
    std::int64_t sample_count = 0;
    std::int32_t worst_set = -1;
    GroupPoint worst_point;
};

// Containment constant: R ⊂ B(x_R, kappa0 r_R).  The supremum over a box is
// attained at corners (the distance is monotone in each |x_i - c_i| and
// convex in the slab coordinate); face samples are kept as confirmation.
KappaEstimate estimate_kappa0(const std::vector<CZSet>& sets, int samples_per_face = 16);

// Ball-inclusion check B(x_R, r_R) ⊂ R by deterministic interior sampling;
// throws InclusionViolation when a sampled ball point leaves R.
void check_ball_inclusion(const CZSet& R, int rays = 64, int steps = 16, double tol = 1e-9);

struct DilationReport {
    double rho_set = 0.0;
    double rho_dilated = 0.0;  // lattice quadrature of rho(R*)
    double ratio = 0.0;
    double spacing = 0.0;
    bool converged = false;
};
DilationReport dilation_report(const CZSet& R, double rel_tol = 0.005,
                               int max_refinements = 10);

}  // namespace axb
