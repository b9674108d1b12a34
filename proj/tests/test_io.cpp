#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>

#include "axb/corpus.hpp"
#include "axb/io.hpp"
#include "doctest.h"

using namespace axb;

namespace {

LatticeSpec stock_lattice(int px = 4, int pt = 4) {
    CZSet w;
    w.dim = 1;
    w.corner[0] = -4.0;
    w.side = 8.0;
    w.t_center = 0.0;
    w.half_width = 1.0;
    return LatticeSpec{w, px, pt};
}

}  // namespace

TEST_CASE("grid function JSON round trip is exact") {
    LatticeSpec lat = stock_lattice();
    GridFunction f = corpus_function(lat, 99, 3);
    const std::string text = grid_function_to_json(f);
    GridFunction g = grid_function_from_json(text);
    CHECK(g.lat.px == lat.px);
    CHECK(g.lat.pt == lat.pt);
    CHECK(g.lat.window.side == lat.window.side);
    CHECK(g.lat.window.corner[0] == lat.window.corner[0]);
    REQUIRE(g.v.size() == f.v.size());
    for (std::size_t i = 0; i < f.v.size(); ++i) CHECK(g.v[i] == f.v[i]);
    // serialization is deterministic
    CHECK(grid_function_to_json(g) == text);
}

TEST_CASE("malformed and inconsistent documents raise IoError") {
    CHECK_THROWS_AS((void)grid_function_from_json("{not json"), IoError);
    CHECK_THROWS_AS((void)grid_function_from_json("{}"), IoError);
    LatticeSpec lat = stock_lattice();
    GridFunction f = GridFunction::zeros(lat);
    std::string text = grid_function_to_json(f);
    // truncate the sample list: count no longer matches the lattice
    GridFunction g = f;
    g.v.pop_back();
    std::string bad = grid_function_to_json(g);
    CHECK_THROWS_AS((void)grid_function_from_json(bad), IoError);
    CHECK_THROWS_AS((void)profile_from_json("[1,2,3]"), IoError);
    CHECK_THROWS_AS((void)family_from_json("{\"depth\": -1}", lat), IoError);
}

TEST_CASE("grid JSON reconstructs the grid exactly") {
    LatticeSpec lat = stock_lattice();
    DyadicGrid g = build_grid(lat.window, 3);
    const GridValidation val = validate_grid(g);
    std::vector<CZSet> boxes;
    for (const GridNode& nd : g.nodes) boxes.push_back(nd.box);
    const double kappa0 = estimate_kappa0(boxes).kappa0;
    const std::string text = grid_to_json(g, val, kappa0);
    DyadicGrid h = grid_from_json(text);
    REQUIRE(h.nodes.size() == g.nodes.size());
    REQUIRE(h.levels.size() == g.levels.size());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        CHECK(h.nodes[i].box.corner[0] == g.nodes[i].box.corner[0]);
        CHECK(h.nodes[i].box.side == g.nodes[i].box.side);
        CHECK(h.nodes[i].box.t_center == g.nodes[i].box.t_center);
        CHECK(h.nodes[i].box.half_width == g.nodes[i].box.half_width);
        CHECK(h.nodes[i].parent == g.nodes[i].parent);
    }
}

TEST_CASE("family documents rebuild against the input lattice") {
    LatticeSpec lat = stock_lattice();
    CandidateFamily direct = make_family(lat, 3, true);
    CandidateFamily loaded = family_from_json(family_to_json(3, true), lat);
    REQUIRE(loaded.sets.size() == direct.sets.size());
    CHECK(loaded.dyadic_count == direct.dyadic_count);
    for (std::size_t i = 0; i < direct.sets.size(); ++i)
        CHECK(loaded.sets[i].rho == direct.sets[i].rho);
    // a grid document works as a family descriptor too
    DyadicGrid g = build_grid(lat.window, 3);
    const std::string gtext = grid_to_json(g, validate_grid(g), 1.0);
    CandidateFamily from_grid = family_from_json(gtext, lat);
    CHECK(from_grid.sets.size() == direct.sets.size());
    // mismatched window is rejected
    LatticeSpec other = lat;
    other.window.side = 16.0;
    CHECK_THROWS_AS((void)family_from_json(gtext, other), IoError);
}

TEST_CASE("profile JSON round trip and uniformity check") {
    RadialProfile k;
    k.n = 2;
    k.dr = 0.125;
    k.singular_origin = true;
    for (int i = 0; i < 33; ++i)
        k.values.push_back(cplx(std::exp(-0.1 * i), 0.01 * i));
    const std::string text = profile_to_json(k, "unit-test");
    RadialProfile h = profile_from_json(text);
    CHECK(h.n == k.n);
    CHECK(h.dr == k.dr);
    CHECK(h.singular_origin == k.singular_origin);
    REQUIRE(h.values.size() == k.values.size());
    for (std::size_t i = 0; i < k.values.size(); ++i) CHECK(h.values[i] == k.values[i]);

    CHECK_THROWS_AS(
        (void)profile_from_json("{\"n\":2,\"r_grid\":[0,0.1,0.3],\"values\":[0,0,0]}"), IoError);
}

TEST_CASE("multiplier sample files evaluate by interpolation") {
    // tabulate m(xi) = exp(-xi/2) on a uniform grid
    std::string text = "{\"xi_grid\": [";
    std::string vals = "\"values\": [";
    const double dxi = 0.05;
    for (int i = 0; i <= 800; ++i) {
        if (i) {
            text += ",";
            vals += ",";
        }
        text += format_g12(dxi * i);
        vals += format_g12(std::exp(-0.5 * dxi * i));
    }
    text += "], " + vals + "]}";
    MultiplierSpec ms = multiplier_from_samples_json(text, "file:test", 1);
    MultiplierSpec exact = make_multiplier("heat:0.5", 1);
    for (double xi : {0.0, 0.31, 1.7, 8.3, 25.0})
        CHECK(std::abs(ms.m(xi) - exact.m(xi)) <= 2e-4);
    // beyond the table the last sample is held
    CHECK(ms.m(1e6) == ms.m(dxi * 800));

    // load_multiplier dispatches on the prefix
    const char* path = "/tmp/axb_test_symbol.json";
    write_text_file(path, text);
    MultiplierSpec fromfile = load_multiplier(std::string("file:") + path, 1);
    CHECK(std::abs(fromfile.m(2.0) - exact.m(2.0)) <= 2e-4);
    std::remove(path);
    MultiplierSpec named = load_multiplier("heat:0.5", 1);
    CHECK(named.m(1.0) == exact.m(1.0));
    CHECK_THROWS_AS((void)load_multiplier("nosuch:1", 1), IoError);
}

TEST_CASE("CSV rendering is fixed-format") {
    const std::string got =
        csv_render({"r", "value"}, {{0.5, 1.0 / 3.0}, {1.0, 6.02214076e23}});
    CHECK(got == "r,value\n0.5,0.333333333333\n1,6.02214076e+23\n");
    CHECK(format_g12(-0.0) == "-0");
}
