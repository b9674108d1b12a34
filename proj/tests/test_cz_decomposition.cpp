#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "axb/corpus.hpp"
#include "axb/cz_decomposition.hpp"
#include "axb/rng.hpp"

using namespace axb;

namespace {

LatticeSpec stock_lattice(int px = 5, int pt = 5) {
    CZSet w;
    w.dim = 1;
    w.corner[0] = -4.0;
    w.side = 8.0;
    w.t_center = 0.0;
    w.half_width = 1.0;
    return LatticeSpec{w, px, pt};
}

double node_avg_abs(const GridFunction& f, const LatticeSpec& lat, const CZSet& box) {
    FamilySet R;
    REQUIRE(family_set_from_box(lat, box, R));
    return set_mean_abs_pow(f, R, cplx(0.0, 0.0), 1.0);
}

}  // namespace

TEST_CASE("threshold above the sup: nothing is selected and g is f") {
    const LatticeSpec lat = stock_lattice();
    const DyadicGrid grid = build_grid(lat.window, 4);
    const GridFunction f = corpus_function(lat, 5, 0);
    const double alpha = 2.0 * sup_norm(f) + 1.0;
    const CZDecomposition d = decompose(f, grid, alpha, 1.0);
    CHECK(d.bad.empty());
    CHECK_FALSE(d.root_exceeds);
    for (std::size_t i = 0; i < f.v.size(); ++i) CHECK(d.good.v[i] == f.v[i]);
}

TEST_CASE("indicator of a deep node: selection stops exactly where the average drops") {
    // depth-5 slab boundaries sit on multiples of 2^-5, so pt = 7 keeps every
    // node of the walk cell-aligned
    const LatticeSpec lat = stock_lattice(6, 7);
    const DyadicGrid grid = build_grid(lat.window, 5);

    // pick a third-generation node and put 2 * chi_R on it
    const std::int32_t target = grid.levels[3][1];
    const CZSet tbox = grid.nodes[target].box;
    GridFunction f = GridFunction::zeros(lat);
    FamilySet tset;
    REQUIRE(family_set_from_box(lat, tbox, tset));
    for (std::int64_t i0 = tset.xlo[0]; i0 < tset.xhi[0]; ++i0)
        for (std::int64_t j = tset.tlo; j < tset.thi; ++j)
            f.v[static_cast<std::size_t>(i0 * lat.nt() + j)] = 2.0;

    // alpha = 1: ancestors have average 2 * rho(R)/rho(ancestor) <= 1 (each
    // generation at least halves the mass fraction), the node itself has
    // average 2 > 1, so the walk must select exactly the target node
    const CZDecomposition d = decompose(f, grid, 1.0, 1.0);
    REQUIRE(d.bad.size() == 1);
    CHECK(d.bad[0].node_index == target);
    CHECK_FALSE(d.root_exceeds);

    // hand-check the stopping rule along the root-to-target chain
    std::int32_t cur = grid.nodes[target].parent;
    while (cur >= 0) {
        CHECK(node_avg_abs(f, lat, grid.nodes[cur].box) <= 1.0);
        cur = grid.nodes[cur].parent;
    }
    CHECK(node_avg_abs(f, lat, tbox) == doctest::Approx(2.0).epsilon(1e-13));

    // good part: mean (= 2) on the set, f (= 0) elsewhere; b = f - 2 on R
    const CZVerifyReport rep = cz_verify(f, d, grid);
    CHECK(rep.reconstruction_err <= 1e-14);
    CHECK(rep.max_mean_residual <= 1e-14);
    CHECK(rep.support_ok);
    CHECK(rep.disjoint_ok);
    CHECK(rep.maximality_ok);
    CHECK(rep.ratio_g_inf == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(rep.min_lower_ratio > 1.0);
}

TEST_CASE("root over the threshold: single bad set flagged at the root") {
    const LatticeSpec lat = stock_lattice();
    const DyadicGrid grid = build_grid(lat.window, 4);
    GridFunction f = GridFunction::zeros(lat);
    for (auto& z : f.v) z = cplx(3.0, -1.0);
    const CZDecomposition d = decompose(f, grid, 1.0, 1.0);
    CHECK(d.root_exceeds);
    REQUIRE(d.bad.size() == 1);
    CHECK(d.bad[0].node_index == 0);
    const CZVerifyReport rep = cz_verify(f, d, grid);
    CHECK(rep.reconstruction_err <= 1e-14);
    CHECK(rep.max_mean_residual <= 1e-14);
    // the good part equals the root mean, i.e. the constant itself
    for (const auto& z : d.good.v) CHECK(std::abs(z - cplx(3.0, -1.0)) <= 1e-13);
}

TEST_CASE("mass conservation and clause ratios on leaf-projected corpus functions") {
    const LatticeSpec lat = stock_lattice(6, 7);
    const DyadicGrid grid = build_grid(lat.window, 6);
    for (int idx = 0; idx < 6; ++idx) {
        const GridFunction raw = corpus_function(lat, 11, idx);
        const GridFunction f = project_to_leaves(raw, grid);
        const double l1 = lp_norm(f, 1.0);
        if (l1 <= 0.0) continue;
        // a mid-range threshold: some selection, not the whole window
        const double alpha = 0.35 * sup_norm(f) + 1e-9;
        for (double p : {1.0, 2.0}) {
            const CZDecomposition d = decompose(f, grid, alpha, p);
            const CZVerifyReport rep = cz_verify(f, d, grid);
            INFO("idx=" << idx << " p=" << p << " bad=" << d.bad.size());
            CHECK(rep.reconstruction_err <= 1e-12 * (1.0 + sup_norm(f)));
            CHECK(rep.mass_residual <= 1e-10 * (1.0 + l1));
            CHECK(rep.max_mean_residual <= 1e-10);
            CHECK(rep.support_ok);
            CHECK(rep.disjoint_ok);
            CHECK(rep.maximality_ok);
            if (!d.bad.empty() && !d.root_exceeds) {
                CHECK(rep.min_lower_ratio > 1.0);
                // one subdivision step dilutes the average by at most the
                // worst child/parent measure ratio, <= 2 max(2^n, 3) = 6
                CHECK(rep.max_upper_ratio <= 6.0 * (1.0 + 1e-12));
                CHECK(rep.ratio_g_inf <= 6.0 * (1.0 + 1e-12));
                CHECK(rep.max_bnorm_ratio <= 12.0);
                CHECK(d.observed_c1 <= 6.0 * (1.0 + 1e-12));
            }
            CHECK(rep.g_inf_le_f_inf);
        }
    }
}

TEST_CASE("decomposition refuses grids that leave the window") {
    const LatticeSpec lat = stock_lattice();
    CZSet big = lat.window;
    big.corner[0] -= big.side;  // shifted root sticks out of the window
    const DyadicGrid grid = build_grid(big, 2);
    const GridFunction f = corpus_function(lat, 3, 0);
    CHECK_THROWS(decompose(f, grid, 1.0, 1.0));
}

TEST_CASE("good part of a projected function never exceeds the selection bound") {
    // sweep several alphas on one function; the key quantitative clause
    const LatticeSpec lat = stock_lattice(6, 7);
    const DyadicGrid grid = build_grid(lat.window, 6);
    const GridFunction f = project_to_leaves(corpus_function(lat, 23, 1), grid);
    const double M = sup_norm(f);
    for (double frac : {0.15, 0.3, 0.5, 0.8}) {
        const CZDecomposition d = decompose(f, grid, frac * M, 1.0);
        if (d.root_exceeds) continue;
        const CZVerifyReport rep = cz_verify(f, d, grid);
        CHECK(rep.ratio_g_inf <= 6.0 * (1.0 + 1e-12));
    }
}
