#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "axb/corpus.hpp"
#include "axb/maximal.hpp"
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

bool le_field(const GridFunction& a, const GridFunction& b, double rel_slack) {
    for (std::size_t i = 0; i < a.v.size(); ++i) {
        const double slack = rel_slack * std::max(1.0, std::abs(b.v[i].real()));
        if (a.v[i].real() > b.v[i].real() + slack) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("family construction: staggered roots and alignment") {
    const LatticeSpec lat = stock_lattice();
    const CandidateFamily fam = make_family(lat, 4, true);
    REQUIRE(fam.grids.size() == 3);
    CHECK(fam.dyadic_count > 0);
    CHECK(fam.sets.size() > fam.dyadic_count);
    // x-staggered root: same side, shifted corner
    CHECK(fam.grids[1].root.corner[0] == 0.0);
    CHECK(fam.grids[1].root.side == 8.0);
    // t-staggered root: shifted by half a slab half-width, side doubled to 16
    CHECK(fam.grids[2].root.t_center == doctest::Approx(0.5));
    CHECK(fam.grids[2].root.side == 16.0);
    CHECK(admissible(fam.grids[2].root));
    for (const FamilySet& S : fam.sets) {
        CHECK(S.cells_window >= 1);
        CHECK(S.cells_window <= S.cells_total);
        if (S.grid_id == 0) CHECK(S.cells_window == S.cells_total);
    }
}

TEST_CASE("median: constants, half-half tie rule, translation") {
    const LatticeSpec lat = stock_lattice();
    const CandidateFamily fam = make_family(lat, 3, false);
    const FamilySet& R = fam.sets[0];

    GridFunction c = GridFunction::zeros(lat);
    for (auto& z : c.v) z = cplx(0.75, -1.25);
    CHECK(median(c, R).value == cplx(0.75, -1.25));

    // 0 on half the mass, 1 on the other half: tie rule picks 0
    GridFunction half = GridFunction::zeros(lat);
    for (std::size_t i = 0; i < half.v.size() / 2; ++i) half.v[i] = 1.0;
    CHECK(median(half, R).value == cplx(0.0, 0.0));

    // medians translate: m_{f+c} = m_f + c componentwise
    const GridFunction f = corpus_function(lat, 42, 0);
    GridFunction g = f;
    for (auto& z : g.v) z += cplx(0.5, -0.25);
    const cplx mf = median(f, R).value;
    const cplx mg = median(g, R).value;
    CHECK(std::abs(mg - mf - cplx(0.5, -0.25)) <= 1e-12);
}

TEST_CASE("median satisfies both mass-splitting inequalities on every set") {
    const LatticeSpec lat = stock_lattice();
    const CandidateFamily fam = make_family(lat, 4, true);
    const GridFunction f = corpus_function(lat, 7, 3);
    for (std::size_t si = 0; si < fam.sets.size(); si += 5) {
        const FamilySet& R = fam.sets[si];
        const cplx m = median(f, R).value;
        std::int64_t hi_re = 0, lo_re = 0, hi_im = 0, lo_im = 0;
        std::int64_t seen = 0;
        for (std::int64_t i0 = R.xlo[0]; i0 < R.xhi[0]; ++i0)
            for (std::int64_t j = R.tlo; j < R.thi; ++j) {
                const cplx z = f.v[static_cast<std::size_t>(i0 * lat.nt() + j)];
                hi_re += (z.real() > m.real());
                lo_re += (z.real() < m.real());
                hi_im += (z.imag() > m.imag());
                lo_im += (z.imag() < m.imag());
                ++seen;
            }
        const std::int64_t pad = R.cells_total - seen;
        hi_re += pad * (0.0 > m.real());
        lo_re += pad * (0.0 < m.real());
        hi_im += pad * (0.0 > m.imag());
        lo_im += pad * (0.0 < m.imag());
        CHECK(2 * hi_re <= R.cells_total);
        CHECK(2 * lo_re <= R.cells_total);
        CHECK(2 * hi_im <= R.cells_total);
        CHECK(2 * lo_im <= R.cells_total);
    }
}

TEST_CASE("median magnitude bound via rearrangement at half mass") {
    const LatticeSpec lat = stock_lattice();
    const CandidateFamily fam = make_family(lat, 4, true);
    const double sqrt2 = std::sqrt(2.0);
    for (int idx = 0; idx < 4; ++idx) {
        const GridFunction f = corpus_function(lat, 99, idx);
        for (const FamilySet& R : fam.sets) {
            const double tau = rearrangement_on(f, R, 0.5 * R.rho);
            CHECK(std::abs(median(f, R).value) <= sqrt2 * tau * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("maximal: constants, dyadic vs full, pointwise domination on uniform grid") {
    const LatticeSpec lat = stock_lattice();
    const CandidateFamily fam = make_family(lat, 4, true);

    GridFunction c = GridFunction::zeros(lat);
    for (auto& z : c.v) z = cplx(-3.0, 4.0);
    const GridFunction mc = maximal(c, fam, FamilyMode::Dyadic);
    for (const auto& z : mc.v) CHECK(z.real() == doctest::Approx(5.0).epsilon(1e-13));

    const GridFunction f = corpus_function(lat, 3, 1);
    const GridFunction md = maximal(f, fam, FamilyMode::Dyadic);
    const GridFunction mf = maximal(f, fam, FamilyMode::Full);
    CHECK(le_field(md, mf, 0.0));  // sup over a subfamily

    // uniform grid with one sample per leaf: |f| <= M_D f exactly
    const LatticeSpec ulat = stock_lattice(3, 6);
    const CandidateFamily ufam = make_family_uniform(ulat);
    const GridFunction uf = corpus_function(ulat, 17, 2);
    const GridFunction umd = maximal(uf, ufam, FamilyMode::Dyadic);
    for (std::size_t i = 0; i < uf.v.size(); ++i)
        CHECK(std::abs(uf.v[i]) <= umd.v[i].real());
}

TEST_CASE("local maximal: monotonicity in s, Chebyshev bound, subadditivity") {
    const LatticeSpec lat = stock_lattice();
    const CandidateFamily fam = make_family(lat, 4, true);
    const GridFunction f = corpus_function(lat, 21, 0);
    const GridFunction g = corpus_function(lat, 21, 5);

    const GridFunction m14 = local_maximal(f, fam, 0.25, FamilyMode::Dyadic);
    const GridFunction m12 = local_maximal(f, fam, 0.5, FamilyMode::Dyadic);
    CHECK(le_field(m12, m14, 0.0));  // s1 < s2 => M_{0,s2} <= M_{0,s1}

    const GridFunction md = maximal(f, fam, FamilyMode::Dyadic);
    GridFunction md4 = md;
    for (auto& z : md4.v) z *= 4.0;
    CHECK(le_field(m14, md4, 1e-12));  // M_{0,s} <= s^{-1} M_D

    GridFunction sum = f;
    for (std::size_t i = 0; i < sum.v.size(); ++i) sum.v[i] += g.v[i];
    const GridFunction lhs = local_maximal(sum, fam, 0.5, FamilyMode::Dyadic);
    const GridFunction af = local_maximal(f, fam, 0.25, FamilyMode::Dyadic);
    const GridFunction ag = local_maximal(g, fam, 0.25, FamilyMode::Dyadic);
    GridFunction rhs = af;
    for (std::size_t i = 0; i < rhs.v.size(); ++i) rhs.v[i] += ag.v[i];
    CHECK(le_field(lhs, rhs, 1e-12));

    // full-family versions obey the same relations
    const GridFunction fm14 = local_maximal(f, fam, 0.25, FamilyMode::Full);
    const GridFunction fm12 = local_maximal(f, fam, 0.5, FamilyMode::Full);
    CHECK(le_field(fm12, fm14, 0.0));
    CHECK(le_field(m14, fm14, 0.0));  // dyadic <= full at equal s
}

TEST_CASE("set inclusions relating the local maximal function to indicators") {
    const LatticeSpec lat = stock_lattice();
    const CandidateFamily fam = make_family(lat, 4, true);
    const GridFunction f = corpus_function(lat, 31, 4);
    std::vector<double> mags;
    for (const auto& z : f.v) mags.push_back(std::abs(z));
    std::sort(mags.begin(), mags.end());

    for (double s : {0.25, 0.5}) {
        for (double q : {0.35, 0.6, 0.85}) {
            const double lam = mags[static_cast<std::size_t>(q * (mags.size() - 1))];
            if (lam <= 0.0) continue;
            GridFunction chi = GridFunction::zeros(lat);
            for (std::size_t i = 0; i < f.v.size(); ++i)
                chi.v[i] = std::abs(f.v[i]) > lam ? 1.0 : 0.0;
            const GridFunction mchi = maximal(chi, fam, FamilyMode::Dyadic);
            const GridFunction mls = local_maximal(f, fam, s, FamilyMode::Dyadic);
            for (std::size_t i = 0; i < f.v.size(); ++i) {
                if (mchi.v[i].real() > s) CHECK(mls.v[i].real() > lam);
                if (mls.v[i].real() > lam) CHECK(mchi.v[i].real() >= s);
            }
        }
    }
}

TEST_CASE("sharp maximal: constants, domination, subadditivity, magnitude") {
    const LatticeSpec lat = stock_lattice();
    const CandidateFamily fam = make_family(lat, 4, true);

    GridFunction c = GridFunction::zeros(lat);
    for (auto& z : c.v) z = cplx(2.0, 1.0);
    const GridFunction sc = sharp_maximal(c, fam);
    // the window's own sets see a constant; staggered sets clipped by the
    // window pad with zeros, so only the dyadic prefix is exactly zero
    const GridFunction scd = sharp_maximal(c, make_family(lat, 4, false));
    for (const auto& z : scd.v) CHECK(z.real() <= 1e-14);
    (void)sc;

    const GridFunction f = corpus_function(lat, 51, 2);
    const GridFunction g = corpus_function(lat, 51, 3);
    const GridFunction fs = sharp_maximal(f, fam);
    const GridFunction gs = sharp_maximal(g, fam);
    const GridFunction mf = maximal(f, fam, FamilyMode::Full);
    GridFunction mf2 = mf;
    for (auto& z : mf2.v) z *= 2.0;
    CHECK(le_field(fs, mf2, 1e-12));  // f# <= 2 M f

    GridFunction sum = f;
    for (std::size_t i = 0; i < sum.v.size(); ++i) sum.v[i] += g.v[i];
    const GridFunction ss = sharp_maximal(sum, fam);
    GridFunction rhs = fs;
    for (std::size_t i = 0; i < rhs.v.size(); ++i) rhs.v[i] += gs.v[i];
    CHECK(le_field(ss, rhs, 1e-12));

    GridFunction absf = f;
    for (auto& z : absf.v) z = std::abs(z);
    const GridFunction as = sharp_maximal(absf, fam);
    GridFunction fs2 = fs;
    for (auto& z : fs2.v) z *= 2.0;
    CHECK(le_field(as, fs2, 1e-12));  // |f|# <= 2 f#
}

TEST_CASE("local sharp maximal: two upper bounds and the centered oscillation band") {
    const LatticeSpec lat = stock_lattice();
    const CandidateFamily fam = make_family(lat, 4, true);
    const GridFunction f = corpus_function(lat, 61, 1);

    for (double s : {0.25, 0.5}) {
        const GridFunction msharp = local_sharp_maximal(f, fam, s);
        const GridFunction mloc = local_maximal(f, fam, s, FamilyMode::Full);
        CHECK(le_field(msharp, mloc, 0.0));  // candidate c = 0 is included

        const GridFunction fsharp = sharp_maximal(f, fam);
        GridFunction bound = fsharp;
        for (auto& z : bound.v) z *= 1.0 / s;
        CHECK(le_field(msharp, bound, 1e-12));  // <= s^{-1} f#
    }

    // f#/2 <= centered oscillation <= f#
    const GridFunction fsharp = sharp_maximal(f, fam);
    const GridFunction cen = centered_oscillation(f, fam);
    CHECK(le_field(cen, fsharp, 1e-12));
    GridFunction halff = fsharp;
    for (auto& z : halff.v) z *= 0.5;
    CHECK(le_field(halff, cen, 1e-12));
}

TEST_CASE("mass of large deviations from the median is controlled") {
    const LatticeSpec lat = stock_lattice();
    const CandidateFamily fam = make_family(lat, 4, true);
    const double c = 2.0 * std::sqrt(2.0);
    for (int idx : {0, 2}) {
        const GridFunction f = corpus_function(lat, 71, idx);
        for (double s : {0.25, 0.5}) {
            const GridFunction ms = local_sharp_maximal(f, fam, s);
            for (const FamilySet& R : fam.sets) {
                double minv = 1e300;
                std::int64_t seen = 0;
                for (std::int64_t i0 = R.xlo[0]; i0 < R.xhi[0]; ++i0)
                    for (std::int64_t j = R.tlo; j < R.thi; ++j) {
                        minv = std::min(minv,
                                        ms.v[static_cast<std::size_t>(i0 * lat.nt() + j)].real());
                        ++seen;
                    }
                const cplx m = median(f, R).value;
                const double thr = c * minv * (1.0 + 1e-12);
                std::int64_t count = 0;
                for (std::int64_t i0 = R.xlo[0]; i0 < R.xhi[0]; ++i0)
                    for (std::int64_t j = R.tlo; j < R.thi; ++j)
                        count += (std::abs(f.v[static_cast<std::size_t>(i0 * lat.nt() + j)] - m) >
                                  thr);
                count += (R.cells_total - seen) * (std::abs(m) > thr);
                CHECK(static_cast<double>(count) <=
                      s * static_cast<double>(R.cells_total) + 1e-9);
            }
        }
    }
}

TEST_CASE("median bound against the minimum of the dyadic local maximal field") {
    const LatticeSpec lat = stock_lattice();
    const CandidateFamily fam = make_family(lat, 4, true);
    const GridFunction f = corpus_function(lat, 81, 3);
    const GridFunction m12 = local_maximal(f, fam, 0.5, FamilyMode::Dyadic);
    const GridFunction m14 = local_maximal(f, fam, 0.25, FamilyMode::Dyadic);
    const double sqrt2 = std::sqrt(2.0);
    for (std::size_t si = 0; si < fam.dyadic_count; ++si) {
        const FamilySet& R = fam.sets[si];
        double min12 = 1e300, min14 = 1e300;
        for (std::int64_t i0 = R.xlo[0]; i0 < R.xhi[0]; ++i0)
            for (std::int64_t j = R.tlo; j < R.thi; ++j) {
                const auto u = static_cast<std::size_t>(i0 * lat.nt() + j);
                min12 = std::min(min12, m12.v[u].real());
                min14 = std::min(min14, m14.v[u].real());
            }
        const double mm = std::abs(median(f, R).value);
        CHECK(mm <= sqrt2 * min12 * (1.0 + 1e-12));
        CHECK(min12 <= min14 + 1e-15);  // second inequality of the chain
    }
}

TEST_CASE("oscillation norms: ordering, Holder monotonicity, sup bound") {
    const LatticeSpec lat = stock_lattice();
    const CandidateFamily fam = make_family(lat, 4, true);

    GridFunction c = GridFunction::zeros(lat);
    for (auto& z : c.v) z = cplx(1.0, 1.0);
    const NormReport rc =
        bmo_norms(c, make_family(lat, 4, false), FamilyMode::Dyadic, {0.5, 2.0}, {0.5});
    CHECK(rc.bmo <= 1e-14);
    CHECK(rc.bmo_q.at(2.0) <= 1e-13);
    CHECK(rc.star_sigma.at(0.5) <= 1e-13);

    for (int idx : {0, 1}) {
        const GridFunction f = corpus_function(lat, 91, idx);
        const NormReport r =
            bmo_norms(f, fam, FamilyMode::Full, {0.25, 0.5, 1.0, 2.0}, {0.25, 0.5});
        for (double sg : {0.25, 0.5}) {
            CHECK(r.star_sigma.at(sg) <= r.bmo_q.at(sg) * (1.0 + 1e-12));
            CHECK(r.bmo_q.at(sg) <= r.bmo * (1.0 + 1e-12));
        }
        CHECK(r.bmo_q.at(0.25) <= r.bmo_q.at(0.5) * (1.0 + 1e-12));
        CHECK(r.bmo_q.at(0.5) <= r.bmo_q.at(1.0) * (1.0 + 1e-12));
        CHECK(r.bmo_q.at(1.0) <= r.bmo_q.at(2.0) * (1.0 + 1e-12));
        CHECK(r.bmo_q.at(1.0) == doctest::Approx(r.bmo).epsilon(1e-12));
        CHECK(r.bmo <= 2.0 * r.lp.at(std::numeric_limits<double>::infinity()) * (1.0 + 1e-12));
    }
}

TEST_CASE("good-lambda table: constants give empty left sets; corpus constant finite") {
    const LatticeSpec lat = stock_lattice();
    const CandidateFamily fam = make_family(lat, 4, true);

    // constant f = 2: local maximal is 2 everywhere, so {M > 3*lambda} is
    // empty as soon as lambda >= 2/3 and the left side vanishes
    GridFunction c = GridFunction::zeros(lat);
    for (auto& z : c.v) z = 2.0;
    const GoodLambdaReport rc = good_lambda_report(c, fam, 0.5, 0.25, {1.0, 2.0, 4.0});
    for (const auto& row : rc.rows) CHECK(row.lhs == 0.0);
    CHECK(rc.c2 == 0.0);

    const GridFunction f = corpus_function(lat, 101, 2);
    std::vector<double> mags;
    for (const auto& z : f.v) mags.push_back(std::abs(z));
    std::sort(mags.begin(), mags.end());
    std::vector<double> lambdas = {mags[mags.size() / 4], mags[mags.size() / 2],
                                   mags[(3 * mags.size()) / 4]};
    const GoodLambdaReport r = good_lambda_report(f, fam, 0.5, 0.25, lambdas);
    CHECK(std::isfinite(r.c2));
    CHECK(r.fs_s > 0.0);
    CHECK(r.fs_s <= 0.25);
    CHECK(std::isfinite(r.fs_strong_ratio));
    CHECK(std::isfinite(r.fs_weak_ratio));
    for (const auto& row : r.rows) CHECK(row.lhs <= r.c2 * row.rhs + 1e-12);
}
