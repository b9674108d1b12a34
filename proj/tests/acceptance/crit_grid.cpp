#include "axb/czset.hpp"
#include "criteria.hpp"

namespace acceptance {

using namespace axb;

namespace {

CZSet stock_root(int n) {
    CZSet R;
    R.dim = n;
    for (int i = 0; i < n; ++i) R.corner[static_cast<std::size_t>(i)] = -4.0;
    R.side = 8.0;
    R.t_center = 0.0;
    R.half_width = 1.0;
    return R;
}

}  // namespace

// Criterion 2: the windowed dyadic filtration of the stock n=1 root at
// depth 6 and of the n=2 root at depth 4 satisfies every grid axiom
// (generation partition, cross-generation nesting, parent/child measure
// ratios, per-node admissibility) exactly in integer arithmetic.
Result crit_grid() {
    const DyadicGrid g1 = build_grid(stock_root(1), 6);
    const DyadicGrid g2 = build_grid(stock_root(2), 4);
    const GridValidation v1 = validate_grid(g1);
    const GridValidation v2 = validate_grid(g2);
    const auto flags = [](const GridValidation& v) {
        return fmt("partition=%d nesting=%d parent_measure=%d child_band=%d admissible=%d",
                   int(v.partition), int(v.nesting), int(v.parent_measure), int(v.child_band),
                   int(v.admissible_nodes));
    };
    if (!v1.ok()) return {false, "n=1 depth-6 grid: " + flags(v1)};
    if (!v2.ok()) return {false, "n=2 depth-4 grid: " + flags(v2)};
    return {true, fmt("n=1 depth-6 grid (%zu nodes) and n=2 depth-4 grid (%zu nodes): "
                      "all axioms pass exactly",
                      g1.nodes.size(), g2.nodes.size())};
}

}  // namespace acceptance
