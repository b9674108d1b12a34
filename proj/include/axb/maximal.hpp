#pragma once
#include <map>
#include <vector>

#include "axb/grid_function.hpp"

namespace axb {

enum class FamilyMode { Dyadic, Full };

// One admissible set registered over a lattice.  The set is an exact union
// of lattice cells; [xlo, xhi) x [tlo, thi) are the cell-index ranges of its
// in-window part.  Cells of the set outside the window carry the value 0
// (functions vanish off the window), so averages, rearrangements and medians
// over the set pad with cells_total - cells_window zeros.
struct FamilySet {
    CZSet box;
    int grid_id = 0;  // 0 = base dyadic grid; >0 = staggered grids
    int level = 0;
    std::int64_t xlo[kMaxDim] = {0, 0, 0};
    std::int64_t xhi[kMaxDim] = {0, 0, 0};
    std::int64_t tlo = 0, thi = 0;
    std::int64_t cells_window = 0;
    std::int64_t cells_total = 0;
    double rho = 0.0;  // exact measure of the full set
};

struct CandidateFamily {
    LatticeSpec lat;
    std::vector<DyadicGrid> grids;
    std::vector<FamilySet> sets;  // base-grid sets form a prefix
    std::size_t dyadic_count = 0;

    std::size_t count(FamilyMode m) const {
        return m == FamilyMode::Dyadic ? dyadic_count : sets.size();
    }
};

// Base dyadic grid of the window plus (optionally) an x-staggered grid
// (root shifted by half a side) and a t-staggered grid (root shifted by half
// a slab half-width; side doubled until the shifted root is admissible).
// Every set is an exact union of lattice cells.
CandidateFamily make_family(const LatticeSpec& lat, int depth, bool staggered);

// Registers an aligned box over the lattice (cell ranges, counts, measure);
// returns false when the box does not meet the window.
bool family_set_from_box(const LatticeSpec& lat, const CZSet& box, FamilySet& out);

// Dyadic-only family over the uniform-schedule grid whose leaves are single
// lattice cells (requires target_kx = px and target_kt = pt); on such a
// family |f(x)| <= (M_D f)(x) holds exactly at every lattice point.
CandidateFamily make_family_uniform(const LatticeSpec& lat);

// Mean of f over the set (zero padding outside the window).
cplx set_mean(const GridFunction& f, const FamilySet& R);
// Mean of |f - c|^q over the set.
double set_mean_abs_pow(const GridFunction& f, const FamilySet& R, cplx c, double q);

// ((f - c) chi_R)*(xi): exact order statistic of the padded multiset.
double rearrangement_on(const GridFunction& f, const FamilySet& R, double xi,
                        cplx c = cplx(0.0, 0.0));

// Componentwise median with the smallest-admissible-value tie rule; both
// mass-splitting inequalities hold by construction.
struct MedianValue {
    cplx value;
};
MedianValue median(const GridFunction& f, const FamilySet& R);

GridFunction maximal(const GridFunction& f, const CandidateFamily& fam, FamilyMode mode);
GridFunction local_maximal(const GridFunction& f, const CandidateFamily& fam, double s,
                           FamilyMode mode);
GridFunction sharp_maximal(const GridFunction& f, const CandidateFamily& fam,
                           FamilyMode mode = FamilyMode::Full);
GridFunction local_sharp_maximal(const GridFunction& f, const CandidateFamily& fam, double s,
                                 FamilyMode mode = FamilyMode::Full);
// sup_R inf_a mean_R |f - a| (centered oscillation with the best constant).
GridFunction centered_oscillation(const GridFunction& f, const CandidateFamily& fam,
                                  FamilyMode mode = FamilyMode::Full);

struct NormReport {
    std::map<double, double> lp;
    double weak_l1 = 0.0;
    double bmo = 0.0;
    std::map<double, double> bmo_q;
    std::map<double, double> star_sigma;
};

// Oscillation norms as sups over the supplied family.  The inf over the
// centering constant in star_sigma runs over {mean, median, quartile
// midpoint, 0} plus one golden-section refinement between mean and median,
// hence is an upper bound of the true inf; the mean is always a candidate,
// which keeps star_sigma <= bmo_q(sigma) exact.
NormReport bmo_norms(const GridFunction& f, const CandidateFamily& fam, FamilyMode mode,
                     const std::vector<double>& q_list, const std::vector<double>& sigma_list);

struct GoodLambdaRow {
    double lambda = 0.0;
    double lhs = 0.0;    // rho({M^D_{0,s1} f > 3 lambda} ∩ {M^#_{0,s2} f <= lambda/4})
    double rhs = 0.0;    // s1^{-1} s2 rho({M^D_{0,s1} f > lambda})
    double ratio = 0.0;  // lhs / rhs (0 when rhs = 0): the implied constant
};

struct GoodLambdaReport {
    double s1 = 0.0, s2 = 0.0, p = 2.0;
    std::vector<GoodLambdaRow> rows;
    double c2 = 0.0;  // max ratio over rows with rhs > 0
    // Fefferman-Stein comparison at exponent p with s = min(1/2, (4*3^p*c2)^{-1})/2:
    double fs_s = 0.0;
    double fs_strong_ratio = 0.0;  // ||f||_p / ||M^#_{0,s} f||_p
    double fs_weak_ratio = 0.0;    // same with weak-L^p quasi-norms
};

// Good-lambda table: for each lambda, both sides of the distributional
// inequality between the dyadic local maximal function at scale s1 and the
// local sharp maximal function at scale s2, plus the implied constant and
// the Fefferman-Stein ratios derived from it.
GoodLambdaReport good_lambda_report(const GridFunction& f, const CandidateFamily& fam, double s1,
                                    double s2, const std::vector<double>& lambdas, double p = 2.0);

}  // namespace axb
