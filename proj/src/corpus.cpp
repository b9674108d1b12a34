#include "axb/corpus.hpp"

#include <cmath>
#include <vector>

#include "axb/rng.hpp"

namespace axb {

namespace {

struct Primitive {
    int kind = 0;  // 0 box indicator, 1 gaussian, 2 checkerboard
    double amp = 1.0;
    double phase = 0.0;
    double lo[kMaxDim + 1] = {0, 0, 0, 0};  // box lower corner (x..., t)
    double hi[kMaxDim + 1] = {0, 0, 0, 0};
    double center[kMaxDim + 1] = {0, 0, 0, 0};
    double width[kMaxDim + 1] = {1, 1, 1, 1};
};

std::vector<Primitive> draw_mixture(const CZSet& window, std::uint64_t seed, int index,
                                    bool complex_phases) {
    Rng rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1)));
    const int dim = window.dim;
    const double tlo = window.t_lo(), tspan = 2.0 * window.half_width;
    const int count = 2 + static_cast<int>(rng.integer(4));  // 2..5 primitives
    std::vector<Primitive> out;
    for (int k = 0; k < count; ++k) {
        Primitive pr;
        pr.kind = static_cast<int>(rng.integer(3));
        pr.amp = (0.25 + 1.75 * rng.uniform()) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
        pr.phase = complex_phases ? 2.0 * 3.14159265358979323846 * rng.uniform() : 0.0;
        for (int i = 0; i <= dim; ++i) {
            const double span = (i < dim) ? window.side : tspan;
            const double base = (i < dim) ? window.corner[static_cast<std::size_t>(i)] : tlo;
            double a = base + span * rng.uniform();
            double len = span * (0.1 + 0.5 * rng.uniform());
            if (a + len > base + span) len = base + span - a;
            pr.lo[i] = a;
            pr.hi[i] = a + len;
            pr.center[i] = base + span * rng.uniform();
            pr.width[i] = span * (0.05 + 0.25 * rng.uniform());
        }
        out.push_back(pr);
    }
    return out;
}

cplx eval_mixture(const std::vector<Primitive>& mix, int dim, const GroupPoint& p) {
    cplx acc(0.0, 0.0);
    for (const Primitive& pr : mix) {
        double coord[kMaxDim + 1];
        for (int i = 0; i < dim; ++i) coord[i] = p.x[static_cast<std::size_t>(i)];
        coord[dim] = p.t;
        double mag = 0.0;
        switch (pr.kind) {
            case 0: {
                bool in = true;
                for (int i = 0; i <= dim; ++i)
                    in = in && coord[i] >= pr.lo[i] && coord[i] < pr.hi[i];
                mag = in ? pr.amp : 0.0;
                break;
            }
            case 1: {
                double e = 0.0;
                for (int i = 0; i <= dim; ++i) {
                    const double u = (coord[i] - pr.center[i]) / pr.width[i];
                    e += u * u;
                }
                mag = pr.amp * std::exp(-e);
                break;
            }
            default: {
                bool in = true;
                long parity = 0;
                for (int i = 0; i <= dim; ++i) {
                    in = in && coord[i] >= pr.lo[i] && coord[i] < pr.hi[i];
                    parity += static_cast<long>(
                        std::floor((coord[i] - pr.lo[i]) / pr.width[i]));
                }
                mag = in ? ((parity & 1) ? -pr.amp : pr.amp) : 0.0;
                break;
            }
        }
        acc += mag * cplx(std::cos(pr.phase), std::sin(pr.phase));
    }
    return acc;
}

}  // namespace

cplx corpus_value(const CZSet& window, std::uint64_t seed, int index, const GroupPoint& p,
                  bool complex_phases) {
    return eval_mixture(draw_mixture(window, seed, index, complex_phases), window.dim, p);
}

GridFunction corpus_function(const LatticeSpec& lat, std::uint64_t seed, int index,
                             bool complex_phases) {
    const auto mix = draw_mixture(lat.window, seed, index, complex_phases);
    GridFunction f = GridFunction::zeros(lat);
    const auto n = lat.points();
    for (std::int64_t i = 0; i < n; ++i)
        f.v[static_cast<std::size_t>(i)] = eval_mixture(mix, lat.dim(), lat.point(i));
    return f;
}

}  // namespace axb
