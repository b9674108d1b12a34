#include "axb/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace axb {

// Cell-index ranges of an aligned box, clipped to the window; returns false
// when the box misses the window entirely.
bool family_set_from_box(const LatticeSpec& lat, const CZSet& box, FamilySet& out) {
    const CZSet& w = lat.window;
    const double hx = lat.hx(), ht = lat.ht();
    out.box = box;
    out.cells_total = 1;
    out.cells_window = 1;
    for (int i = 0; i < lat.dim(); ++i) {
        const auto ui = static_cast<std::size_t>(i);
        double qlo = (box.corner[ui] - w.corner[ui]) / hx;
        double qhi = (box.corner[ui] + box.side - w.corner[ui]) / hx;
        std::int64_t ilo = std::llround(qlo), ihi = std::llround(qhi);
        if (std::abs(qlo - static_cast<double>(ilo)) > 1e-6 ||
            std::abs(qhi - static_cast<double>(ihi)) > 1e-6)
            throw std::invalid_argument("family set not aligned to lattice (x)");
        out.cells_total *= ihi - ilo;
        out.xlo[ui] = std::clamp<std::int64_t>(ilo, 0, lat.nx());
        out.xhi[ui] = std::clamp<std::int64_t>(ihi, 0, lat.nx());
        out.cells_window *= std::max<std::int64_t>(0, out.xhi[ui] - out.xlo[ui]);
    }
    double qlo = (box.t_lo() - w.t_lo()) / ht;
    double qhi = (box.t_hi() - w.t_lo()) / ht;
    std::int64_t jlo = std::llround(qlo), jhi = std::llround(qhi);
    if (std::abs(qlo - static_cast<double>(jlo)) > 1e-6 ||
        std::abs(qhi - static_cast<double>(jhi)) > 1e-6)
        throw std::invalid_argument("family set not aligned to lattice (t)");
    out.cells_total *= jhi - jlo;
    out.tlo = std::clamp<std::int64_t>(jlo, 0, lat.nt());
    out.thi = std::clamp<std::int64_t>(jhi, 0, lat.nt());
    out.cells_window *= std::max<std::int64_t>(0, out.thi - out.tlo);
    out.rho = rho_measure(box);
    return out.cells_window > 0;
}

namespace {

template <class Fn>
void for_set_cells(const LatticeSpec& lat, const FamilySet& S, Fn&& fn) {
    const std::int64_t nt = lat.nt();
    if (lat.dim() == 1) {
        for (std::int64_t i0 = S.xlo[0]; i0 < S.xhi[0]; ++i0) {
            const std::int64_t base = i0 * nt;
            for (std::int64_t j = S.tlo; j < S.thi; ++j) fn(base + j);
        }
    } else {
        const std::int64_t nx = lat.nx();
        for (std::int64_t i0 = S.xlo[0]; i0 < S.xhi[0]; ++i0)
            for (std::int64_t i1 = S.xlo[1]; i1 < S.xhi[1]; ++i1) {
                const std::int64_t base = (i0 * nx + i1) * nt;
                for (std::int64_t j = S.tlo; j < S.thi; ++j) fn(base + j);
            }
    }
}

void gather_values(const GridFunction& f, const FamilySet& S, std::vector<cplx>& out) {
    out.clear();
    out.reserve(static_cast<std::size_t>(S.cells_window));
    for_set_cells(f.lat, S, [&](std::int64_t idx) {
        out.push_back(f.v[static_cast<std::size_t>(idx)]);
    });
}

// m-th largest of the multiset {work} ∪ {padval repeated P times}.
// work is reordered in place.
double orderstat_desc_padded(std::vector<double>& work, std::int64_t P, double padval,
                             std::int64_t m) {
    const auto W = static_cast<std::int64_t>(work.size());
    if (m < 1) m = 1;
    if (m > W + P) return 0.0;
    std::int64_t above = 0, equal = 0;
    for (double v : work) {
        above += (v > padval);
        equal += (v == padval);
    }
    std::int64_t k = m;
    if (m > above) {
        if (m - P <= above + equal) return padval;
        k = m - P;
    }
    std::nth_element(work.begin(), work.begin() + (k - 1), work.end(), std::greater<double>());
    return work[static_cast<std::size_t>(k - 1)];
}

// k-th smallest of the multiset {work} ∪ {padval repeated P times}.
double orderstat_asc_padded(std::vector<double>& work, std::int64_t P, double padval,
                            std::int64_t k) {
    const auto W = static_cast<std::int64_t>(work.size());
    if (k < 1) k = 1;
    if (k > W + P) k = W + P;
    std::int64_t below = 0, equal = 0;
    for (double v : work) {
        below += (v < padval);
        equal += (v == padval);
    }
    std::int64_t kk = k;
    if (k > below) {
        if (k - P <= below + equal) return padval;
        kk = k - P;
    }
    std::nth_element(work.begin(), work.begin() + (kk - 1), work.end());
    return work[static_cast<std::size_t>(kk - 1)];
}

// ceil(s * cells) with s exactly representable (dyadic s keeps this exact).
std::int64_t level_index(double s, std::int64_t cells) {
    double q = s * static_cast<double>(cells);
    auto m = static_cast<std::int64_t>(std::ceil(q));
    return m < 1 ? 1 : m;
}

double rearr_at_level(const GridFunction& f, const FamilySet& S, std::int64_t m, cplx c,
                      std::vector<double>& work) {
    work.clear();
    work.reserve(static_cast<std::size_t>(S.cells_window));
    for_set_cells(f.lat, S, [&](std::int64_t idx) {
        work.push_back(std::abs(f.v[static_cast<std::size_t>(idx)] - c));
    });
    return orderstat_desc_padded(work, S.cells_total - S.cells_window, std::abs(c), m);
}

// Candidate centering constants: mean, median, quartile midpoint, 0, plus a
// short golden-section scan of the segment [mean, median].
std::vector<cplx> centering_candidates(const GridFunction& f, const FamilySet& S) {
    std::vector<double> comp;
    comp.reserve(static_cast<std::size_t>(S.cells_window));
    const std::int64_t P = S.cells_total - S.cells_window;
    const std::int64_t T = S.cells_total;
    double med[2], quart[2];
    cplx sum(0.0, 0.0);
    for (int part = 0; part < 2; ++part) {
        comp.clear();
        for_set_cells(f.lat, S, [&](std::int64_t idx) {
            const cplx z = f.v[static_cast<std::size_t>(idx)];
            comp.push_back(part == 0 ? z.real() : z.imag());
        });
        std::vector<double> tmp = comp;
        med[part] = orderstat_asc_padded(tmp, P, 0.0, (T + 1) / 2);
        tmp = comp;
        double q1 = orderstat_asc_padded(tmp, P, 0.0, (T + 3) / 4);
        tmp = comp;
        double q3 = orderstat_asc_padded(tmp, P, 0.0, (3 * T + 3) / 4);
        quart[part] = 0.5 * (q1 + q3);
    }
    std::vector<cplx> vals;
    gather_values(f, S, vals);
    sum = pairwise_sum(vals.data(), vals.size());
    cplx mean = sum / static_cast<double>(T);
    return {mean, cplx(med[0], med[1]), cplx(quart[0], quart[1]), cplx(0.0, 0.0)};
}

// Minimize a unimodal-ish objective along the segment [a, b]; returns the
// best value among a fixed golden-section iterate set (upper bound of inf).
double golden_refine(const std::function<double(cplx)>& eval, cplx a, cplx b, double best) {
    constexpr double invphi = 0.6180339887498949;
    double lo = 0.0, hi = 1.0;
    double t1 = hi - invphi * (hi - lo), t2 = lo + invphi * (hi - lo);
    double f1 = eval(a + t1 * (b - a)), f2 = eval(a + t2 * (b - a));
    best = std::min(best, std::min(f1, f2));
    for (int it = 0; it < 8; ++it) {
        if (f1 <= f2) {
            hi = t2, t2 = t1, f2 = f1;
            t1 = hi - invphi * (hi - lo);
            f1 = eval(a + t1 * (b - a));
            best = std::min(best, f1);
        } else {
            lo = t1, t1 = t2, f1 = f2;
            t2 = lo + invphi * (hi - lo);
            f2 = eval(a + t2 * (b - a));
            best = std::min(best, f2);
        }
    }
    return best;
}

void scatter_max(const LatticeSpec& lat, const FamilySet& S, double val, std::vector<cplx>& out) {
    for_set_cells(lat, S, [&](std::int64_t idx) {
        auto& slot = out[static_cast<std::size_t>(idx)];
        if (slot.real() < val) slot = cplx(val, 0.0);
    });
}

GridFunction sweep(const GridFunction& f, const CandidateFamily& fam, FamilyMode mode,
                   const std::function<double(const FamilySet&)>& per_set) {
    GridFunction out = GridFunction::zeros(f.lat);
    const std::size_t n = fam.count(mode);
    for (std::size_t i = 0; i < n; ++i) {
        const FamilySet& S = fam.sets[i];
        scatter_max(f.lat, S, per_set(S), out.v);
    }
    return out;
}

}  // namespace

CandidateFamily make_family(const LatticeSpec& lat, int depth, bool staggered) {
    CandidateFamily fam;
    fam.lat = lat;
    if (depth > lat.px || depth > lat.pt)
        throw std::invalid_argument("make_family: depth exceeds lattice resolution");

    auto add_grid = [&](const CZSet& root, int grid_id) {
        fam.grids.push_back(build_grid(root, depth));
        const DyadicGrid& g = fam.grids.back();
        for (std::size_t k = 0; k < g.nodes.size(); ++k) {
            FamilySet S;
            S.grid_id = grid_id;
            S.level = g.nodes[k].kx + g.nodes[k].kt;
            if (family_set_from_box(lat, g.nodes[k].box, S)) fam.sets.push_back(S);
        }
    };

    add_grid(lat.window, 0);
    fam.dyadic_count = fam.sets.size();
    if (staggered) {
        CZSet xs = lat.window;
        for (int i = 0; i < lat.dim(); ++i) xs.corner[static_cast<std::size_t>(i)] += xs.side / 2;
        add_grid(xs, 1);

        CZSet ts = lat.window;
        ts.t_center += ts.half_width / 2;
        while (!admissible(ts)) {
            // enlarge until the shifted root becomes admissible again
            for (int i = 0; i < lat.dim(); ++i)
                ts.corner[static_cast<std::size_t>(i)] -= ts.side / 2;
            ts.side *= 2;
            if (ts.side > 1e6 * lat.window.side)
                throw std::invalid_argument("make_family: no admissible staggered root");
        }
        add_grid(ts, 2);
    }
    return fam;
}

CandidateFamily make_family_uniform(const LatticeSpec& lat) {
    CandidateFamily fam;
    fam.lat = lat;
    fam.grids.push_back(build_grid_uniform(lat.window, lat.px, lat.pt));
    const DyadicGrid& g = fam.grids.back();
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        FamilySet S;
        S.grid_id = 0;
        S.level = g.nodes[k].kx + g.nodes[k].kt;
        if (family_set_from_box(lat, g.nodes[k].box, S)) fam.sets.push_back(S);
    }
    fam.dyadic_count = fam.sets.size();
    return fam;
}

cplx set_mean(const GridFunction& f, const FamilySet& R) {
    std::vector<cplx> vals;
    gather_values(f, R, vals);
    return pairwise_sum(vals.data(), vals.size()) / static_cast<double>(R.cells_total);
}

double set_mean_abs_pow(const GridFunction& f, const FamilySet& R, cplx c, double q) {
    std::vector<double> work;
    work.reserve(static_cast<std::size_t>(R.cells_window));
    for_set_cells(f.lat, R, [&](std::int64_t idx) {
        work.push_back(std::pow(std::abs(f.v[static_cast<std::size_t>(idx)] - c), q));
    });
    double s = pairwise_sum(work.data(), work.size());
    s += static_cast<double>(R.cells_total - R.cells_window) * std::pow(std::abs(c), q);
    return s / static_cast<double>(R.cells_total);
}

double rearrangement_on(const GridFunction& f, const FamilySet& R, double xi, cplx c) {
    if (!(xi > 0.0)) throw std::invalid_argument("rearrangement_on: xi must be > 0");
    double q = xi / f.lat.cell_mass();
    auto m = static_cast<std::int64_t>(std::ceil(q));
    std::vector<double> work;
    return rearr_at_level(f, R, m < 1 ? 1 : m, c, work);
}

MedianValue median(const GridFunction& f, const FamilySet& R) {
    const std::int64_t P = R.cells_total - R.cells_window;
    const std::int64_t k = (R.cells_total + 1) / 2;
    std::vector<double> comp;
    comp.reserve(static_cast<std::size_t>(R.cells_window));
    double m[2];
    for (int part = 0; part < 2; ++part) {
        comp.clear();
        for_set_cells(f.lat, R, [&](std::int64_t idx) {
            const cplx z = f.v[static_cast<std::size_t>(idx)];
            comp.push_back(part == 0 ? z.real() : z.imag());
        });
        m[part] = orderstat_asc_padded(comp, P, 0.0, k);
    }
    return MedianValue{cplx(m[0], m[1])};
}

GridFunction maximal(const GridFunction& f, const CandidateFamily& fam, FamilyMode mode) {
    std::vector<double> work;
    return sweep(f, fam, mode, [&](const FamilySet& S) {
        work.clear();
        work.reserve(static_cast<std::size_t>(S.cells_window));
        for_set_cells(f.lat, S, [&](std::int64_t idx) {
            work.push_back(std::abs(f.v[static_cast<std::size_t>(idx)]));
        });
        return pairwise_sum(work.data(), work.size()) / static_cast<double>(S.cells_total);
    });
}

GridFunction local_maximal(const GridFunction& f, const CandidateFamily& fam, double s,
                           FamilyMode mode) {
    if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("local_maximal: s must be in (0,1)");
    std::vector<double> work;
    return sweep(f, fam, mode, [&](const FamilySet& S) {
        return rearr_at_level(f, S, level_index(s, S.cells_total), cplx(0.0, 0.0), work);
    });
}

GridFunction sharp_maximal(const GridFunction& f, const CandidateFamily& fam, FamilyMode mode) {
    return sweep(f, fam, mode, [&](const FamilySet& S) {
        return set_mean_abs_pow(f, S, set_mean(f, S), 1.0);
    });
}

GridFunction local_sharp_maximal(const GridFunction& f, const CandidateFamily& fam, double s,
                                 FamilyMode mode) {
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("local_sharp_maximal: s must be in (0,1)");
    std::vector<double> work;
    return sweep(f, fam, mode, [&](const FamilySet& S) {
        const std::int64_t m = level_index(s, S.cells_total);
        auto eval = [&](cplx c) { return rearr_at_level(f, S, m, c, work); };
        auto cands = centering_candidates(f, S);
        double best = eval(cands[0]);
        for (std::size_t i = 1; i < cands.size(); ++i) best = std::min(best, eval(cands[i]));
        return golden_refine(eval, cands[0], cands[1], best);
    });
}

GridFunction centered_oscillation(const GridFunction& f, const CandidateFamily& fam,
                                  FamilyMode mode) {
    return sweep(f, fam, mode, [&](const FamilySet& S) {
        auto eval = [&](cplx c) { return set_mean_abs_pow(f, S, c, 1.0); };
        auto cands = centering_candidates(f, S);
        double best = eval(cands[0]);
        for (std::size_t i = 1; i < cands.size(); ++i) best = std::min(best, eval(cands[i]));
        return golden_refine(eval, cands[0], cands[1], best);
    });
}

NormReport bmo_norms(const GridFunction& f, const CandidateFamily& fam, FamilyMode mode,
                     const std::vector<double>& q_list, const std::vector<double>& sigma_list) {
    if (fam.sets.empty()) throw std::invalid_argument("bmo_norms: empty family");
    NormReport rep;
    rep.weak_l1 = weak_l1_norm(f);
    for (double p : {1.0, 2.0}) rep.lp[p] = lp_norm(f, p);
    rep.lp[std::numeric_limits<double>::infinity()] = sup_norm(f);

    const std::size_t n = fam.count(mode);
    for (double q : q_list) rep.bmo_q[q] = 0.0;
    for (double s : sigma_list) rep.star_sigma[s] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const FamilySet& S = fam.sets[i];
        const cplx mean = set_mean(f, S);
        rep.bmo = std::max(rep.bmo, set_mean_abs_pow(f, S, mean, 1.0));
        for (double q : q_list)
            rep.bmo_q[q] =
                std::max(rep.bmo_q[q], std::pow(set_mean_abs_pow(f, S, mean, q), 1.0 / q));
        for (double sg : sigma_list) {
            auto eval = [&](cplx c) {
                return std::pow(set_mean_abs_pow(f, S, c, sg), 1.0 / sg);
            };
            auto cands = centering_candidates(f, S);
            double best = eval(cands[0]);
            for (std::size_t kc = 1; kc < cands.size(); ++kc)
                best = std::min(best, eval(cands[kc]));
            best = golden_refine(eval, cands[0], cands[1], best);
            rep.star_sigma[sg] = std::max(rep.star_sigma[sg], best);
        }
    }
    return rep;
}

GoodLambdaReport good_lambda_report(const GridFunction& f, const CandidateFamily& fam, double s1,
                                    double s2, const std::vector<double>& lambdas, double p) {
    GoodLambdaReport rep;
    rep.s1 = s1;
    rep.s2 = s2;
    rep.p = p;
    const GridFunction md = local_maximal(f, fam, s1, FamilyMode::Dyadic);
    const GridFunction ms = local_sharp_maximal(f, fam, s2, FamilyMode::Full);
    const double w = f.lat.cell_mass();
    for (double lam : lambdas) {
        GoodLambdaRow row;
        row.lambda = lam;
        std::int64_t nl = 0, nlhs = 0;
        for (std::size_t i = 0; i < md.v.size(); ++i) {
            const double a = md.v[i].real(), b = ms.v[i].real();
            nl += (a > lam);
            nlhs += (a > 3.0 * lam && b <= lam / 4.0);
        }
        row.lhs = w * static_cast<double>(nlhs);
        row.rhs = (s2 / s1) * w * static_cast<double>(nl);
        row.ratio = row.rhs > 0.0 ? row.lhs / row.rhs : 0.0;
        rep.c2 = std::max(rep.c2, row.ratio);
        rep.rows.push_back(row);
    }
    rep.fs_s = std::min(0.5, 1.0 / (4.0 * std::pow(3.0, p) * std::max(rep.c2, 1e-12))) / 2.0;
    // snap to a dyadic value so rearrangement levels stay exact
    rep.fs_s = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(rep.fs_s))));
    const GridFunction msf = local_sharp_maximal(f, fam, rep.fs_s, FamilyMode::Full);
    const double denom_s = lp_norm(msf, p), denom_w = weak_lp_norm(msf, p);
    rep.fs_strong_ratio = denom_s > 0.0 ? lp_norm(f, p) / denom_s : 0.0;
    rep.fs_weak_ratio = denom_w > 0.0 ? weak_lp_norm(f, p) / denom_w : 0.0;
    return rep;
}

}  // namespace axb
