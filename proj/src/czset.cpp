#include "axb/czset.hpp"

#include <algorithm>
#include <cmath>

namespace axb {

GroupPoint CZSet::center() const {
    GroupPoint p;
    p.dim = dim;
    for (int i = 0; i < dim; ++i) p.x[i] = corner[i] + 0.5 * side;
    p.t = t_center;
    return p;
}

bool CZSet::contains(const GroupPoint& p) const {
    if (p.t < t_lo() || p.t >= t_hi()) return false;
    for (int i = 0; i < dim; ++i)
        if (p.x[i] < corner[i] || p.x[i] >= corner[i] + side) return false;
    return true;
}

double rho_measure(const CZSet& R) {
    return std::pow(R.side, R.dim) * 2.0 * R.half_width;
}

bool admissible(const CZSet& R) {
    const double a = std::exp(R.t_center), r = R.half_width, L = R.side;
    if (r <= 0.0 || L <= 0.0) return false;
    if (r < 1.0) {
        const double lo = std::exp(2.0) * a * r;
        return lo <= L && L < std::exp(8.0) * a * r;
    }
    const double lo = a * std::exp(2.0 * r);
    return lo <= L && L < a * std::exp(8.0 * r);
}

std::vector<CZSet> split_children(const CZSet& R, SplitKind kind) {
    std::vector<CZSet> out;
    if (kind == SplitKind::Cube) {
        const double h = 0.5 * R.side;
        const int k = 1 << R.dim;
        out.reserve(k);
        for (int m = 0; m < k; ++m) {
            CZSet c = R;
            c.side = h;
            for (int i = 0; i < R.dim; ++i)
                c.corner[i] = R.corner[i] + ((m >> i) & 1 ? h : 0.0);
            out.push_back(c);
        }
    } else if (kind == SplitKind::Slab) {
        const double hr = 0.5 * R.half_width;
        for (int m = 0; m < 2; ++m) {
            CZSet c = R;
            c.half_width = hr;
            c.t_center = R.t_center + (m ? hr : -hr);
            out.push_back(c);
        }
    }
    return out;
}

namespace {

bool split_admissible(const CZSet& R, SplitKind kind) {
    for (const CZSet& c : split_children(R, kind))
        if (!admissible(c)) return false;
    return true;
}

}  // namespace

SplitKind choose_split(const CZSet& R) {
    if (split_admissible(R, SplitKind::Cube)) return SplitKind::Cube;
    if (split_admissible(R, SplitKind::Slab)) return SplitKind::Slab;
    return SplitKind::None;
}

std::vector<CZSet> subdivide(const CZSet& R) {
    const SplitKind k = choose_split(R);
    if (k == SplitKind::None)
        throw NoAdmissibleSplit("no admissible equal-measure split exists");
    return split_children(R, k);
}

double distance_to_set(const GroupPoint& p, const CZSet& R) {
    double dx2 = 0.0;
    for (int i = 0; i < R.dim; ++i) {
        const double c = std::clamp(p.x[i], R.corner[i], R.corner[i] + R.side);
        dx2 += (p.x[i] - c) * (p.x[i] - c);
    }
    // minimize cosh(t_p - t_q) + dx2 e^{-(t_p + t_q)}/2 over t_q in the slab
    const double t_star = 0.5 * std::log(std::exp(2.0 * p.t) + dx2);
    const double tq = std::clamp(t_star, R.t_lo(), R.t_hi());
    const double arg = std::cosh(p.t - tq) + 0.5 * dx2 * std::exp(-(p.t + tq));
    return std::acosh(std::max(1.0, arg));
}

bool dilated_contains(const CZSet& R, const GroupPoint& p) {
    return distance_to_set(p, R) < R.half_width;
}

// ---------------------------------------------------------------------------
// dyadic grid
// ---------------------------------------------------------------------------

namespace {

CZSet node_box(const CZSet& root, const GridNode& nd) {
    CZSet b;
    b.dim = root.dim;
    b.side = std::ldexp(root.side, -nd.kx);
    for (int i = 0; i < root.dim; ++i)
        b.corner[i] = root.corner[i] + static_cast<double>(nd.ix[i]) * b.side;
    const double hr = std::ldexp(root.half_width, -nd.kt);
    b.half_width = hr;
    b.t_center = (root.t_center - root.half_width) +
                 (2.0 * static_cast<double>(nd.jt) + 1.0) * hr;
    return b;
}

void append_children(DyadicGrid& g, std::int32_t id, SplitKind kind) {
    GridNode& nd = g.nodes[id];
    nd.split = kind;
    nd.first_child = static_cast<std::int32_t>(g.nodes.size());
    const GridNode base = nd;  // copy: push_back may reallocate
    if (kind == SplitKind::Cube) {
        const int k = 1 << g.root.dim;
        for (int m = 0; m < k; ++m) {
            GridNode c;
            c.kx = base.kx + 1;
            c.kt = base.kt;
            c.jt = base.jt;
            for (int i = 0; i < g.root.dim; ++i)
                c.ix[i] = 2 * base.ix[i] + ((m >> i) & 1);
            c.parent = id;
            c.box = node_box(g.root, c);
            g.nodes.push_back(c);
        }
        g.nodes[id].child_count = k;
    } else {
        for (int m = 0; m < 2; ++m) {
            GridNode c;
            c.kx = base.kx;
            c.kt = base.kt + 1;
            c.jt = 2 * base.jt + m;
            c.ix = base.ix;
            c.parent = id;
            c.box = node_box(g.root, c);
            g.nodes.push_back(c);
        }
        g.nodes[id].child_count = 2;
    }
}

DyadicGrid init_grid(const CZSet& root) {
    if (!admissible(root))
        throw NoAdmissibleSplit("root set is not admissible");
    DyadicGrid g;
    g.root = root;
    GridNode r;
    r.box = root;
    g.nodes.push_back(r);
    g.levels.push_back({0});
    return g;
}

}  // namespace

DyadicGrid build_grid(const CZSet& root, int depth) {
    DyadicGrid g = init_grid(root);
    for (int d = 0; d < depth; ++d) {
        std::vector<std::int32_t> next;
        for (std::int32_t id : g.levels.back()) {
            const SplitKind kind = choose_split(g.nodes[id].box);
            if (kind == SplitKind::None)
                throw NoAdmissibleSplit("admissible set admits no admissible split");
            append_children(g, id, kind);
            for (int m = 0; m < g.nodes[id].child_count; ++m)
                next.push_back(g.nodes[id].first_child + m);
        }
        g.levels.push_back(std::move(next));
    }
    return g;
}

DyadicGrid build_grid_uniform(const CZSet& root, int target_kx, int target_kt) {
    DyadicGrid g = init_grid(root);
    int kx = 0, kt = 0;
    while (kx < target_kx || kt < target_kt) {
        auto all_admissible = [&](SplitKind kind) {
            for (std::int32_t id : g.levels.back())
                if (!split_admissible(g.nodes[id].box, kind)) return false;
            return true;
        };
        SplitKind kind = SplitKind::None;
        if (kx < target_kx && all_admissible(SplitKind::Cube))
            kind = SplitKind::Cube;
        else if (kt < target_kt && all_admissible(SplitKind::Slab))
            kind = SplitKind::Slab;
        if (kind == SplitKind::None)
            throw NoAdmissibleSplit("no uniform schedule reaches the target shape");
        std::vector<std::int32_t> next;
        for (std::int32_t id : g.levels.back()) {
            append_children(g, id, kind);
            for (int m = 0; m < g.nodes[id].child_count; ++m)
                next.push_back(g.nodes[id].first_child + m);
        }
        g.levels.push_back(std::move(next));
        if (kind == SplitKind::Cube) ++kx; else ++kt;
    }
    return g;
}

GridValidation validate_grid(const DyadicGrid& g) {
    GridValidation v;
    const int n = g.root.dim;
    std::int32_t KX = 0, KT = 0;
    for (const GridNode& nd : g.nodes) {
        KX = std::max(KX, nd.kx);
        KT = std::max(KT, nd.kt);
    }

    // (i) each generation is an exact tile of the integer index space
    v.partition = true;
    const std::int64_t span_x = std::int64_t(1) << KX;
    const std::int64_t span_t = std::int64_t(1) << KT;
    std::int64_t total_cells = span_t;
    for (int i = 0; i < n; ++i) total_cells *= span_x;
    for (const auto& level : g.levels) {
        std::vector<std::uint8_t> cover(static_cast<std::size_t>(total_cells), 0);
        std::int64_t covered = 0;
        for (std::int32_t id : level) {
            const GridNode& nd = g.nodes[id];
            const std::int64_t wx = std::int64_t(1) << (KX - nd.kx);
            const std::int64_t wt = std::int64_t(1) << (KT - nd.kt);
            std::array<std::int64_t, kMaxDim> lo{};
            for (int i = 0; i < n; ++i) lo[i] = nd.ix[i] * wx;
            const std::int64_t tlo = nd.jt * wt;
            // walk the refined cells of this node
            std::int64_t cx = 1;
            for (int i = 0; i < n; ++i) cx *= wx;
            for (std::int64_t c = 0; c < cx; ++c) {
                std::int64_t rem = c, flat = 0;
                for (int i = 0; i < n; ++i) {
                    const std::int64_t off = rem % wx;
                    rem /= wx;
                    flat = flat * span_x + (lo[i] + off);
                }
                for (std::int64_t tt = 0; tt < wt; ++tt) {
                    const std::int64_t cell = flat * span_t + (tlo + tt);
                    if (cover[static_cast<std::size_t>(cell)]++) v.partition = false;
                    ++covered;
                }
            }
        }
        if (covered != total_cells) v.partition = false;
    }

    // (ii) nesting: every node sits inside its parent's integer box
    v.nesting = true;
    for (const GridNode& nd : g.nodes) {
        if (nd.parent < 0) continue;
        const GridNode& pa = g.nodes[nd.parent];
        const std::int32_t dx = nd.kx - pa.kx, dt = nd.kt - pa.kt;
        if (dx < 0 || dt < 0) { v.nesting = false; continue; }
        for (int i = 0; i < n; ++i)
            if (nd.ix[i] >> dx != pa.ix[i]) v.nesting = false;
        if (nd.jt >> dt != pa.jt) v.nesting = false;
    }

    // (iii)/(iv) exact measure ratios from the halving exponents
    v.parent_measure = true;
    v.child_band = true;
    const std::int64_t cap = std::max<std::int64_t>(std::int64_t(1) << n, 3);
    for (const GridNode& nd : g.nodes) {
        if (nd.parent < 0) continue;
        const GridNode& pa = g.nodes[nd.parent];
        const int e = n * (nd.kx - pa.kx) + (nd.kt - pa.kt);  // parent/child = 2^e
        if ((std::int64_t(1) << e) > cap) v.parent_measure = false;
        if (e < 1 || e > n) v.child_band = false;       // child >= parent/2^n
        if (3 > (std::int64_t(2) << e)) v.child_band = false;  // child <= 2/3 parent
    }

    v.admissible_nodes = true;
    for (const GridNode& nd : g.nodes)
        if (!admissible(nd.box)) v.admissible_nodes = false;
    return v;
}

KappaEstimate estimate_kappa0(const std::vector<CZSet>& sets, int samples_per_face) {
    KappaEstimate est;
    for (std::size_t si = 0; si < sets.size(); ++si) {
        const CZSet& R = sets[si];
        const GroupPoint c = R.center();
        auto consider = [&](const GroupPoint& q) {
            ++est.sample_count;
            const double ratio = distance(c, q) / R.half_width;
            if (ratio > est.kappa0) {
                est.kappa0 = ratio;
                est.worst_set = static_cast<std::int32_t>(si);
                est.worst_point = q;
            }
        };
        // corners of the box (the supremum is attained here)
        for (int m = 0; m < (1 << R.dim); ++m) {
            for (int tt = 0; tt < 2; ++tt) {
                GroupPoint q;
                q.dim = R.dim;
                for (int i = 0; i < R.dim; ++i)
                    q.x[i] = R.corner[i] + ((m >> i) & 1 ? R.side : 0.0);
                q.t = tt ? R.t_hi() : R.t_lo();
                consider(q);
            }
        }
        // stratified face samples as confirmation
        for (int i = 0; i <= R.dim; ++i) {  // axis held at a face; last = t axis
            for (int side = 0; side < 2; ++side) {
                for (int u = 0; u < samples_per_face; ++u) {
                    GroupPoint q;
                    q.dim = R.dim;
                    const double frac = (u + 0.5) / samples_per_face;
                    for (int k = 0; k < R.dim; ++k)
                        q.x[k] = R.corner[k] + frac * R.side;
                    q.t = R.t_lo() + frac * 2.0 * R.half_width;
                    if (i < R.dim)
                        q.x[i] = R.corner[i] + (side ? R.side : 0.0);
                    else
                        q.t = side ? R.t_hi() : R.t_lo();
                    consider(q);
                }
            }
        }
    }
    return est;
}

void check_ball_inclusion(const CZSet& R, int rays, int steps, double tol) {
    const GroupPoint c = R.center();
    const double r = R.half_width * (1.0 - tol);
    // deterministic directions on the (x, t) sphere; geodesic rays are not
    // radial lines in coordinates, so walk coordinate rays inside the metric
    // ball instead: sample points q with d(c, q) <= r along mixed directions.
    for (int d = 0; d < rays; ++d) {
        const double ang = (d + 0.5) * 6.28318530717958647692 / rays;
        for (int s = 1; s <= steps; ++s) {
            const double frac = static_cast<double>(s) / steps;
            // target metric radius
            const double rr = r * frac;
            // direction split between t and the first two x coordinates
            GroupPoint q = c;
            const double ct = std::cos(ang), sx = std::sin(ang);
            q.t = c.t + rr * ct;
            // choose |dx| so that cosh d = cosh(dt) + |dx|^2 e^{-(2c.t + dt)}/2
            const double rest = std::cosh(rr) - std::cosh(rr * ct);
            if (rest > 0.0) {
                const double dx = std::sqrt(2.0 * rest * std::exp(2.0 * c.t + rr * ct));
                if (R.dim == 1) {
                    q.x[0] = c.x[0] + (sx >= 0 ? dx : -dx);
                } else {
                    q.x[0] = c.x[0] + dx * (sx >= 0 ? 0.70710678118654752440 : -0.70710678118654752440);
                    q.x[1] = c.x[1] + dx * 0.70710678118654752440;
                }
            }
            if (distance(c, q) > R.half_width) continue;  // numeric guard
            if (!R.contains(q))
                throw InclusionViolation("interior ball sample escapes the set");
        }
    }
}

DilationReport dilation_report(const CZSet& R, double rel_tol, int max_refinements) {
    DilationReport rep;
    rep.rho_set = rho_measure(R);
    const double r = R.half_width;
    const double tpad_lo = R.t_lo() - r, tpad_hi = R.t_hi() + r;
    const double xpad = std::exp(tpad_hi) * std::sinh(r) + 1e-12;

    auto quad = [&](double h) {
        const auto nt = static_cast<std::int64_t>(std::ceil((tpad_hi - tpad_lo) / h));
        double mass = 0.0;
        GroupPoint p;
        p.dim = R.dim;
        const double x0 = R.corner[0] - xpad, x1 = R.corner[0] + R.side + xpad;
        const auto nx = static_cast<std::int64_t>(std::ceil((x1 - x0) / h));
        for (std::int64_t j = 0; j < nt; ++j) {
            p.t = tpad_lo + (j + 0.5) * h;
            for (std::int64_t i = 0; i < nx; ++i) {
                p.x[0] = x0 + (i + 0.5) * h;
                if (R.dim == 1) {
                    if (distance_to_set(p, R) < r) mass += h * h;
                } else {
                    const double y0 = R.corner[1] - xpad, y1 = R.corner[1] + R.side + xpad;
                    const auto ny = static_cast<std::int64_t>(std::ceil((y1 - y0) / h));
                    for (std::int64_t k = 0; k < ny; ++k) {
                        p.x[1] = y0 + (k + 0.5) * h;
                        if (distance_to_set(p, R) < r) mass += h * h * h;
                    }
                }
            }
        }
        return mass;
    };

    double h = std::min({r / 4.0, R.side / 8.0, (tpad_hi - tpad_lo) / 16.0});
    double prev = quad(h);
    for (int i = 0; i < max_refinements; ++i) {
        h *= 0.5;
        const double cur = quad(h);
        const double change = std::abs(cur - prev) / std::max(cur, 1e-300);
        prev = cur;
        rep.rho_dilated = cur;
        rep.spacing = h;
        rep.ratio = cur / rep.rho_set;
        if (change < rel_tol) {
            rep.converged = true;
            break;
        }
    }
    return rep;
}

}  // namespace axb
