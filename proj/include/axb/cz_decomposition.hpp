#pragma once
#include <vector>

#include "axb/maximal.hpp"

namespace axb {

struct BadPart {
    int node_index = -1;  // node in the decomposition grid
    FamilySet set;
    GridFunction b;  // supported on the set, mean zero over it
};

struct CZDecomposition {
    GridFunction good;
    std::vector<BadPart> bad;
    double alpha = 0.0;
    double p = 1.0;
    bool root_exceeds = false;  // the root itself broke the threshold
    double observed_c1 = 0.0;   // worst of the clause (i)/(iii)/(iv) ratios
};

// Stopping-time decomposition at level alpha: walking the grid from the
// root, select the maximal nodes R with (avg_R |f|^p)^{1/p} > alpha; on each
// selected node the bad part is (f - f_R) chi_R and the good part is the
// mean f_R; elsewhere the good part is f.  If the root itself exceeds the
// threshold, the decomposition proceeds with the root as the single bad set
// and root_exceeds is raised.  The grid must lie inside f's window.
CZDecomposition decompose(const GridFunction& f, const DyadicGrid& grid, double alpha, double p);

struct CZVerifyReport {
    double ratio_g_inf = 0.0;         // ||g||_inf / alpha
    double max_mean_residual = 0.0;   // max_i |∫ b_i| / (alpha rho(R_i))
    bool support_ok = true;           // every b_i vanishes off its set
    bool disjoint_ok = true;          // selected sets pairwise disjoint
    bool maximality_ok = true;        // selected avg > alpha, parent avg <= alpha
    double min_lower_ratio = 0.0;     // min_i (avg|f|^p)^{1/p} / alpha
    double max_upper_ratio = 0.0;     // max_i (avg|f|^p)^{1/p} / alpha
    double max_bnorm_ratio = 0.0;     // max_i ||b_i||_p / (alpha rho(R_i)^{1/p})
    double reconstruction_err = 0.0;  // max_x |f - g - sum b_i|
    double mass_residual = 0.0;       // |∫ g - ∫ f|
    bool g_inf_le_f_inf = true;       // ||g||_inf <= ||f||_inf
    double observed_c1 = 0.0;
};

CZVerifyReport cz_verify(const GridFunction& f, const CZDecomposition& d, const DyadicGrid& grid);

// Replaces every sample by the average over its deepest-level grid cell.
// A function of this form has its pointwise values resolved by the grid, so
// the good part of its decomposition is uniformly controlled by alpha.
GridFunction project_to_leaves(const GridFunction& f, const DyadicGrid& grid);

}  // namespace axb
