#include "axb/cz_decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace axb {

namespace {

FamilySet node_set(const LatticeSpec& lat, const DyadicGrid& grid, int ni) {
    FamilySet S;
    if (!family_set_from_box(lat, grid.nodes[static_cast<std::size_t>(ni)].box, S))
        throw std::invalid_argument("grid node outside the window");
    if (S.cells_window != S.cells_total)
        throw std::invalid_argument("decomposition grid must lie inside the window");
    S.level = grid.nodes[static_cast<std::size_t>(ni)].kx +
              grid.nodes[static_cast<std::size_t>(ni)].kt;
    return S;
}

template <class Fn>
void for_cells(const LatticeSpec& lat, const FamilySet& S, Fn&& fn) {
    const std::int64_t nt = lat.nt();
    if (lat.dim() == 1) {
        for (std::int64_t i0 = S.xlo[0]; i0 < S.xhi[0]; ++i0)
            for (std::int64_t j = S.tlo; j < S.thi; ++j) fn(i0 * nt + j);
    } else {
        const std::int64_t nx = lat.nx();
        for (std::int64_t i0 = S.xlo[0]; i0 < S.xhi[0]; ++i0)
            for (std::int64_t i1 = S.xlo[1]; i1 < S.xhi[1]; ++i1)
                for (std::int64_t j = S.tlo; j < S.thi; ++j) fn((i0 * nx + i1) * nt + j);
    }
}

double avg_abs_pow(const GridFunction& f, const FamilySet& S, double p) {
    std::vector<double> work;
    work.reserve(static_cast<std::size_t>(S.cells_window));
    for_cells(f.lat, S, [&](std::int64_t idx) {
        work.push_back(std::pow(std::abs(f.v[static_cast<std::size_t>(idx)]), p));
    });
    double s = pairwise_sum(work.data(), work.size()) / static_cast<double>(S.cells_total);
    return std::pow(s, 1.0 / p);
}

bool ranges_overlap(const FamilySet& a, const FamilySet& b, int dim) {
    for (int i = 0; i < dim; ++i)
        if (a.xhi[i] <= b.xlo[i] || b.xhi[i] <= a.xlo[i]) return false;
    return !(a.thi <= b.tlo || b.thi <= a.tlo);
}

}  // namespace

CZDecomposition decompose(const GridFunction& f, const DyadicGrid& grid, double alpha, double p) {
    if (!(alpha > 0.0)) throw std::invalid_argument("decompose: alpha must be > 0");
    if (!(p >= 1.0)) throw std::invalid_argument("decompose: p must be >= 1");
    CZDecomposition d;
    d.alpha = alpha;
    d.p = p;
    d.good = f;

    std::vector<int> selected;
    std::function<void(int)> walk = [&](int ni) {
        const FamilySet S = node_set(f.lat, grid, ni);
        if (avg_abs_pow(f, S, p) > alpha) {
            if (ni == 0) d.root_exceeds = true;
            selected.push_back(ni);
            return;
        }
        const GridNode& nd = grid.nodes[static_cast<std::size_t>(ni)];
        for (int c = 0; c < nd.child_count; ++c) walk(nd.first_child + c);
    };
    walk(0);

    for (int ni : selected) {
        BadPart part;
        part.node_index = ni;
        part.set = node_set(f.lat, grid, ni);
        part.b = GridFunction::zeros(f.lat);
        const cplx mean = set_mean(f, part.set);
        for_cells(f.lat, part.set, [&](std::int64_t idx) {
            const auto u = static_cast<std::size_t>(idx);
            part.b.v[u] = f.v[u] - mean;
            d.good.v[u] = mean;
        });
        d.bad.push_back(std::move(part));
    }

    CZVerifyReport rep = cz_verify(f, d, grid);
    d.observed_c1 = rep.observed_c1;
    return d;
}

CZVerifyReport cz_verify(const GridFunction& f, const CZDecomposition& d, const DyadicGrid& grid) {
    CZVerifyReport rep;
    const double alpha = d.alpha, p = d.p;

    rep.ratio_g_inf = sup_norm(d.good) / alpha;
    rep.g_inf_le_f_inf = sup_norm(d.good) <= sup_norm(f) * (1.0 + 1e-12);
    rep.min_lower_ratio = d.bad.empty() ? 1.0 : std::numeric_limits<double>::infinity();
    rep.max_upper_ratio = d.bad.empty() ? 1.0 : 0.0;

    // reconstruction: accumulate g + sum b_i and compare with f
    GridFunction recon = d.good;
    for (const BadPart& part : d.bad)
        for_cells(f.lat, part.set, [&](std::int64_t idx) {
            const auto u = static_cast<std::size_t>(idx);
            recon.v[u] += part.b.v[u];
        });
    for (std::size_t i = 0; i < f.v.size(); ++i)
        rep.reconstruction_err = std::max(rep.reconstruction_err, std::abs(recon.v[i] - f.v[i]));
    rep.mass_residual = std::abs(integrate_rho(d.good) - integrate_rho(f));

    for (std::size_t a = 0; a < d.bad.size(); ++a)
        for (std::size_t b = a + 1; b < d.bad.size(); ++b)
            if (ranges_overlap(d.bad[a].set, d.bad[b].set, f.lat.dim())) rep.disjoint_ok = false;

    for (const BadPart& part : d.bad) {
        // support: b vanishes off the set
        std::vector<char> inside(f.v.size(), 0);
        for_cells(f.lat, part.set, [&](std::int64_t idx) { inside[static_cast<std::size_t>(idx)] = 1; });
        for (std::size_t i = 0; i < f.v.size(); ++i)
            if (!inside[i] && part.b.v[i] != cplx(0.0, 0.0)) rep.support_ok = false;

        rep.max_mean_residual = std::max(
            rep.max_mean_residual, std::abs(integrate_rho(part.b)) / (alpha * part.set.rho));

        const double avg_ratio = avg_abs_pow(f, part.set, p) / alpha;
        rep.min_lower_ratio = std::min(rep.min_lower_ratio, avg_ratio);
        rep.max_upper_ratio = std::max(rep.max_upper_ratio, avg_ratio);
        if (avg_ratio <= 1.0) rep.maximality_ok = false;
        const GridNode& nd = grid.nodes[static_cast<std::size_t>(part.node_index)];
        if (nd.parent >= 0) {
            const FamilySet PS = [&] {
                FamilySet S;
                family_set_from_box(f.lat, grid.nodes[static_cast<std::size_t>(nd.parent)].box, S);
                return S;
            }();
            if (avg_abs_pow(f, PS, p) > alpha) rep.maximality_ok = false;
        }

        rep.max_bnorm_ratio =
            std::max(rep.max_bnorm_ratio,
                     lp_norm(part.b, p) / (alpha * std::pow(part.set.rho, 1.0 / p)));
    }

    rep.observed_c1 = std::max({rep.ratio_g_inf, rep.max_upper_ratio, rep.max_bnorm_ratio});
    return rep;
}

GridFunction project_to_leaves(const GridFunction& f, const DyadicGrid& grid) {
    GridFunction out = f;
    std::function<void(int)> walk = [&](int ni) {
        const GridNode& nd = grid.nodes[static_cast<std::size_t>(ni)];
        if (nd.child_count == 0) {
            const FamilySet S = node_set(f.lat, grid, ni);
            const cplx mean = set_mean(f, S);
            for_cells(f.lat, S, [&](std::int64_t idx) {
                out.v[static_cast<std::size_t>(idx)] = mean;
            });
            return;
        }
        for (int c = 0; c < nd.child_count; ++c) walk(nd.first_child + c);
    };
    walk(0);
    return out;
}

}  // namespace axb
