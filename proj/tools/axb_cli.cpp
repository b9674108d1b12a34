// Command-line front end: lattice windows, seeded corpora, dyadic grids,
// maximal operators, stopping-time decompositions, spectral multipliers and
// singular-integral diagnostics, emitted as deterministic CSV/JSON artifacts.
//
// Exit codes: 0 success, 1 a checked invariant failed, 2 usage/input error.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "axb/corpus.hpp"
#include "axb/cz_decomposition.hpp"
#include "axb/io.hpp"
#include "axb/singular.hpp"
#include "json.hpp"

using namespace axb;
using nlohmann::json;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 12345;
    int threads = 1;
    std::string out;     // output directory; empty = write to stdout
    std::string format;  // "csv" or "json" where a subcommand supports both
};

void emit(const GlobalOpts& g, const std::string& name, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    write_text_file(g.out + "/" + name, text);
}

CZSet stock_window(int dim) {
    if (dim < 1 || dim > kMaxDim) throw IoError("dim must be between 1 and 3");
    CZSet w;
    w.dim = dim;
    for (int i = 0; i < dim; ++i) w.corner[static_cast<std::size_t>(i)] = -4.0;
    w.side = 8.0;
    w.t_center = 0.0;
    w.half_width = 1.0;
    return w;
}

bool same_window(const CZSet& a, const CZSet& b) {
    if (a.dim != b.dim || a.side != b.side || a.t_center != b.t_center ||
        a.half_width != b.half_width)
        return false;
    for (int i = 0; i < a.dim; ++i)
        if (a.corner[static_cast<std::size_t>(i)] != b.corner[static_cast<std::size_t>(i)])
            return false;
    return true;
}

// "--input corpus:<index>" renders a seeded corpus function on the stock
// window; anything else is a grid-function JSON path.
GridFunction load_input(const std::string& spec, int dim, int px, int pt, std::uint64_t seed) {
    if (spec.rfind("corpus:", 0) == 0) {
        int idx = 0;
        try {
            idx = std::stoi(spec.substr(7));
        } catch (const std::exception&) {
            throw IoError("corpus index must be an integer: " + spec);
        }
        if (idx < 0) throw IoError("corpus index must be nonnegative");
        LatticeSpec lat{stock_window(dim), px, pt};
        return corpus_function(lat, seed, idx);
    }
    return grid_function_from_json(read_text_file(spec));
}

CandidateFamily load_family(const std::string& path, int depth, bool staggered,
                            const LatticeSpec& lat) {
    if (!path.empty()) return family_from_json(read_text_file(path), lat);
    return make_family(lat, depth, staggered);
}

json window_jobj(const CZSet& w) {
    json corner = json::array();
    for (int i = 0; i < w.dim; ++i) corner.push_back(w.corner[static_cast<std::size_t>(i)]);
    return json{{"dim", w.dim},
                {"corner", corner},
                {"side", w.side},
                {"t_center", w.t_center},
                {"half_width", w.half_width}};
}

json map_jobj(const std::map<double, double>& m) {
    json out = json::object();
    for (const auto& [k, v] : m) out[format_g12(k)] = v;
    return out;
}

std::vector<CZSet> family_boxes(const CandidateFamily& fam) {
    std::vector<CZSet> boxes;
    boxes.reserve(fam.sets.size());
    for (const FamilySet& s : fam.sets) boxes.push_back(s.box);
    return boxes;
}

// ---------------------------------------------------------------------------
// Subcommand runners (each returns the process exit code).
// ---------------------------------------------------------------------------

int run_geometry(const GlobalOpts& g, int dim, const std::vector<double>& growth) {
    const double rmin = growth[0], rmax = growth[1];
    const int steps = static_cast<int>(growth[2]);
    if (!(rmin > 0.0) || !(rmax > rmin) || steps < 1)
        throw IoError("--ball-growth needs 0 < rmin < rmax and steps >= 1");
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < steps; ++i) {
        const double r =
            steps == 1 ? rmin : rmin + (rmax - rmin) * static_cast<double>(i) / (steps - 1);
        const double vol = ball_volume_rho_reference(dim, r);
        rows.push_back({r, vol, std::pow(r, dim + 1), std::exp(dim * r),
                        vol / std::pow(r, dim + 1), vol / std::exp(dim * r)});
    }
    emit(g, "geometry.csv",
         csv_render({"r", "rho_volume", "r_power", "exp_growth", "ratio_small", "ratio_large"},
                    rows));
    return 0;
}

int run_grid(const GlobalOpts& g, const std::vector<double>& root_arl, int depth, int dim,
             bool validate) {
    const double a = root_arl[0], r = root_arl[1], L = root_arl[2];
    if (!(a > 0.0) || !(r > 0.0) || !(L > 0.0))
        throw IoError("--root needs positive a, r, L");
    CZSet root;
    root.dim = dim;
    for (int i = 0; i < dim; ++i) root.corner[static_cast<std::size_t>(i)] = -0.5 * L;
    root.side = L;
    root.t_center = std::log(a);
    root.half_width = r;
    if (!admissible(root)) throw IoError("root set is not admissible for this (a, r, L)");
    const DyadicGrid grid = build_grid(root, depth);
    const GridValidation val = validate_grid(grid);
    std::vector<CZSet> boxes;
    boxes.reserve(grid.nodes.size());
    for (const GridNode& nd : grid.nodes) boxes.push_back(nd.box);
    const double kappa0 = estimate_kappa0(boxes).kappa0;
    emit(g, "grid.json", grid_to_json(grid, val, kappa0));
    return (validate && !val.ok()) ? 1 : 0;
}

int run_norms(const GlobalOpts& g, const std::string& input, int dim, int px, int pt,
              const std::string& family, int depth, bool staggered,
              std::vector<double> q_list, std::vector<double> sigma_list) {
    const GridFunction f = load_input(input, dim, px, pt, g.seed);
    const CandidateFamily fam = load_family(family, depth, staggered, f.lat);
    if (q_list.empty()) q_list = {1.0, 2.0};
    if (sigma_list.empty()) sigma_list = {0.25, 0.5};
    const NormReport rep = bmo_norms(f, fam, FamilyMode::Full, q_list, sigma_list);
    if (g.format == "csv") {
        std::string out = "metric,value\n";
        for (const auto& [p, v] : rep.lp) out += "lp_" + format_g12(p) + "," + format_g12(v) + "\n";
        out += "weak_l1," + format_g12(rep.weak_l1) + "\n";
        out += "bmo," + format_g12(rep.bmo) + "\n";
        for (const auto& [q, v] : rep.bmo_q)
            out += "bmo_q_" + format_g12(q) + "," + format_g12(v) + "\n";
        for (const auto& [s, v] : rep.star_sigma)
            out += "star_" + format_g12(s) + "," + format_g12(v) + "\n";
        emit(g, "norms.csv", out);
        return 0;
    }
    json j{{"lp", map_jobj(rep.lp)},
           {"weak_l1", rep.weak_l1},
           {"bmo", rep.bmo},
           {"bmo_q", map_jobj(rep.bmo_q)},
           {"star_sigma", map_jobj(rep.star_sigma)}};
    emit(g, "norms.json", j.dump(1) + "\n");
    return 0;
}

int run_maximal(const GlobalOpts& g, const std::string& op, double s, const std::string& input,
                int dim, int px, int pt, const std::string& family, int depth, bool staggered) {
    const GridFunction f = load_input(input, dim, px, pt, g.seed);
    const CandidateFamily fam = load_family(family, depth, staggered, f.lat);
    GridFunction out;
    if (op == "hl") {
        out = maximal(f, fam, FamilyMode::Full);
    } else if (op == "dyadic") {
        out = maximal(f, fam, FamilyMode::Dyadic);
    } else if (op == "local") {
        out = local_maximal(f, fam, s, FamilyMode::Full);
    } else if (op == "sharp") {
        out = sharp_maximal(f, fam);
    } else if (op == "localsharp") {
        out = local_sharp_maximal(f, fam, s);
    } else {
        throw IoError("unknown maximal op: " + op);
    }
    emit(g, "maximal.json", grid_function_to_json(out));
    return 0;
}

int run_goodlambda(const GlobalOpts& g, const std::string& input, int dim, int px, int pt,
                   const std::string& family, int depth, bool staggered, double s1, double s2,
                   double p, int nlambda) {
    const GridFunction f = load_input(input, dim, px, pt, g.seed);
    const CandidateFamily fam = load_family(family, depth, staggered, f.lat);
    // ladder down from the top of the dyadic local maximal function, so the
    // distribution sets on both sides are populated for small k (sparse
    // inputs can have an identically-zero local maximal; fall back to sup f)
    double top = sup_norm(local_maximal(f, fam, s1, FamilyMode::Dyadic));
    if (!(top > 0.0)) top = sup_norm(f);
    if (!(top > 0.0)) throw IoError("goodlambda needs a nonzero input function");
    std::vector<double> lambdas;
    for (int k = 1; k <= nlambda; ++k) lambdas.push_back(std::ldexp(top, -k));
    const GoodLambdaReport rep = good_lambda_report(f, fam, s1, s2, lambdas, p);
    std::vector<std::vector<double>> rows;
    for (const GoodLambdaRow& row : rep.rows)
        rows.push_back({row.lambda, row.lhs, row.rhs, row.ratio});
    emit(g, "goodlambda.csv", csv_render({"lambda", "lhs", "rhs", "ratio"}, rows));
    return 0;
}

int run_czd(const GlobalOpts& g, double alpha, double p, const std::string& input, int dim,
            int px, int pt, const std::string& grid_path, int depth) {
    const GridFunction f = load_input(input, dim, px, pt, g.seed);
    DyadicGrid grid;
    if (grid_path.empty()) {
        grid = build_grid(f.lat.window, depth);
    } else {
        grid = grid_from_json(read_text_file(grid_path));
        if (!same_window(grid.root, f.lat.window))
            throw IoError("czd: grid root must match the input window");
    }
    const CZDecomposition d = decompose(f, grid, alpha, p);
    const CZVerifyReport rep = cz_verify(f, d, grid);

    json bad = json::array();
    for (const BadPart& bp : d.bad) {
        json samples = json::array();
        for (const cplx& z : bp.b.v) samples.push_back(json::array({z.real(), z.imag()}));
        bad.push_back(json{{"node", bp.node_index},
                           {"box", window_jobj(bp.set.box)},
                           {"rho", bp.set.rho},
                           {"samples", std::move(samples)}});
    }
    const double sup_f = sup_norm(f);
    const bool pass = rep.support_ok && rep.disjoint_ok && rep.maximality_ok &&
                      rep.reconstruction_err <= 1e-12 * std::max(1.0, sup_f) &&
                      rep.max_mean_residual <= 1e-10;
    json j{{"alpha", alpha},
           {"p", p},
           {"root_exceeds", d.root_exceeds},
           {"observed_c1", d.observed_c1},
           {"good", json::parse(grid_function_to_json(d.good))},
           {"bad", std::move(bad)},
           {"verification",
            json{{"ratio_g_inf", rep.ratio_g_inf},
                 {"max_mean_residual", rep.max_mean_residual},
                 {"support_ok", rep.support_ok},
                 {"disjoint_ok", rep.disjoint_ok},
                 {"maximality_ok", rep.maximality_ok},
                 {"min_lower_ratio", rep.min_lower_ratio},
                 {"max_upper_ratio", rep.max_upper_ratio},
                 {"max_bnorm_ratio", rep.max_bnorm_ratio},
                 {"reconstruction_err", rep.reconstruction_err},
                 {"mass_residual", rep.mass_residual},
                 {"g_inf_le_f_inf", rep.g_inf_le_f_inf},
                 {"observed_c1", rep.observed_c1},
                 {"pass", pass}}}};
    emit(g, "czd.json", j.dump(1) + "\n");
    return pass ? 0 : 1;
}

json condition_jobj(const KernelConditionReport& rep, bool nu1) {
    json j{{nu1 ? "nu1" : "nu2", nu1 ? rep.nu1 : rep.nu2},
           {"terms", rep.terms},
           {"clipped", rep.clipped},
           {"clipped_fraction", rep.clipped_fraction()}};
    if (nu1) {
        j["arg_radius"] = rep.arg_radius;
        j["arg_sample"] = rep.arg_sample;
        json radii = json::array();
        for (double r : rep.sampled_radii) radii.push_back(r);
        j["radii"] = std::move(radii);
    } else {
        j["arg_set"] = rep.arg_set;
        json sets = json::array();
        for (std::size_t s : rep.sampled_sets) sets.push_back(s);
        j["sets"] = std::move(sets);
    }
    return j;
}

int run_singular(const GlobalOpts& g, const std::string& kernel_spec, const std::string& op,
                 const std::string& input, int dim, int px, int pt, const std::string& family,
                 int depth, bool staggered, std::vector<double> radii, int pairs, double op_norm,
                 int points) {
    const GridFunction f = load_input(input, dim, px, pt, g.seed);
    const LatticeSpec& lat = f.lat;
    const int n = lat.dim();

    Kernel K;
    if (kernel_spec.rfind("multiplier:", 0) == 0) {
        const MultiplierSpec ms = load_multiplier(kernel_spec.substr(11), n);
        const ProfileBuild pb = multiplier_profile(ms, n, window_diameter(lat) + 1.0, points);
        K = kernel_from_profile(pb.profile);
        if (!(op_norm > 0.0)) {
            // spectral bound: the L^2 operator norm is sup over the spectrum
            double sup_m = 0.0;
            for (int i = 0; i <= 4096; ++i) {
                const double s = 64.0 * static_cast<double>(i) / 4096.0;
                sup_m = std::max(sup_m, std::abs(ms.m(s * s)));
            }
            op_norm = sup_m;
        }
    } else if (kernel_spec.rfind("file:", 0) == 0) {
        K = kernel_from_profile(profile_from_json(read_text_file(kernel_spec.substr(5))));
        if (!(op_norm > 0.0)) op_norm = 1.0;
    } else {
        throw IoError("--kernel must be multiplier:<spec> or file:<profile.json>");
    }

    if (op == "tstar") {
        const CandidateFamily fam = load_family(family, depth, staggered, lat);
        emit(g, "singular_tstar.json", grid_function_to_json(maximal_apply(K, f, fam)));
        return 0;
    }
    if (op == "nu1") {
        if (radii.empty()) {
            const double hw = lat.window.half_width;
            radii = {0.45 * hw, 0.3 * hw, 0.2 * hw, 0.12 * hw};
        }
        std::vector<GroupPoint> ys;
        for (std::int64_t q : {2, 1, 3}) {  // center first, then quarter offsets
            std::int64_t ix[kMaxDim] = {q * lat.nx() / 4, lat.nx() / 2, lat.nx() / 2};
            ys.push_back(lat.point(lat.index(ix, lat.nt() / 2)));
        }
        const KernelConditionReport rep = estimate_nu1(K, lat, ys, radii);
        emit(g, "singular_nu1.json", condition_jobj(rep, true).dump(1) + "\n");
        return 0;
    }
    if (op == "nu2") {
        const CandidateFamily fam = load_family(family, depth, staggered, lat);
        const KernelConditionReport rep = estimate_nu2(K, lat, family_boxes(fam), pairs);
        emit(g, "singular_nu2.json", condition_jobj(rep, false).dump(1) + "\n");
        return 0;
    }
    if (op == "cotlar") {
        const CandidateFamily fam = load_family(family, depth, staggered, lat);
        const std::vector<CZSet> boxes = family_boxes(fam);
        const double kappa0 = estimate_kappa0(boxes).kappa0;
        const double nu2 = estimate_nu2(K, lat, boxes, pairs).nu2;
        const CotlarReport rep = cotlar_check(K, f, fam, op_norm, kappa0, nu2);
        const double bound = 1e-6 * sup_norm(f);
        const bool pass = rep.max_residual <= bound;
        json j{{"op_norm", op_norm},       {"kappa0", kappa0},
               {"nu2", nu2},               {"constant", rep.constant},
               {"max_residual", rep.max_residual}, {"argmax", rep.argmax},
               {"residual_bound", bound},  {"pass", pass}};
        emit(g, "singular_cotlar.json", j.dump(1) + "\n");
        return pass ? 0 : 1;
    }
    throw IoError("unknown singular op: " + op);
}

int run_multiplier(const GlobalOpts& g, const std::string& mspec, int dim,
                   const std::string& table, double rmax, int points, int per_octave,
                   int octaves, std::vector<double> eps_list) {
    const MultiplierSpec ms = load_multiplier(mspec, dim);
    if (table == "mh-norms") {
        const MHNorms mh = mh_norms(ms, per_octave, octaves);
        emit(g, "multiplier_mh.csv",
             csv_render({"s0", "s_inf", "local", "global"},
                        {{ms.s0, ms.s_inf, mh.local, mh.global}}));
        return 0;
    }
    const ProfileBuild pb = multiplier_profile(ms, dim, rmax, points);
    if (table == "profile") {
        std::string provenance = "symbol=" + ms.name + " n=" + std::to_string(dim) +
                                 " path=" + (pb.path_a ? "direct" : "cut") +
                                 " s_cut=" + format_g12(pb.s_cut) +
                                 " tail_sup=" + format_g12(pb.tail_sup) +
                                 " j_max=" + std::to_string(pb.j_max) +
                                 " required_points=" + std::to_string(pb.required_points);
        emit(g, "multiplier_profile.json", profile_to_json(pb.profile, provenance));
        return 0;
    }
    if (table == "annulus") {
        if (eps_list.empty())
            for (double e = 0.01; 2.0 * e <= pb.profile.r_max(); e *= 2.0) eps_list.push_back(e);
        std::vector<std::vector<double>> rows;
        for (double eps : eps_list) {
            const double mass = annulus_l1(pb.profile, eps);
            rows.push_back({eps, mass, mass / std::pow(eps, 0.5 * (dim + 1)),
                            mass / std::pow(eps, 1.5)});
        }
        emit(g, "multiplier_annulus.csv",
             csv_render({"eps", "annulus_l1", "norm_small", "norm_large"}, rows));
        return 0;
    }
    throw IoError("unknown multiplier table: " + table);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harmonic-analysis experiments on the ax+b group (half-space model)"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "Seed for corpus inputs");
    app.add_option("--threads", g.threads, "Worker threads (runs are single-threaded)")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "Output directory (default: write to stdout)");
    app.add_option("--format", g.format, "Artifact format where both exist")
        ->check(CLI::IsMember({"csv", "json"}));

    // shared input/lattice/family options
    std::string input = "corpus:0";
    int dim = 1, px = 5, pt = 5, depth = 4;
    bool staggered = true;
    std::string family;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", input, "Input function: JSON path or corpus:<index>");
        sub->add_option("--dim", dim, "Dimension n of the stock window (corpus inputs)")
            ->check(CLI::Range(1, 3));
        sub->add_option("--px", px, "log2 x-cells of the stock lattice")->check(CLI::Range(1, 12));
        sub->add_option("--pt", pt, "log2 t-cells of the stock lattice")->check(CLI::Range(1, 12));
    };
    auto add_family = [&](CLI::App* sub) {
        sub->add_option("--family", family, "Family descriptor/grid JSON path");
        sub->add_option("--depth", depth, "Family depth when --family is absent")
            ->check(CLI::Range(0, 12));
        sub->add_flag("--staggered,!--no-staggered", staggered,
                      "Include staggered grids in the family");
    };

    // geometry
    auto* geo = app.add_subcommand("geometry", "Ball-growth table of the group metric");
    int geo_dim = 1;
    std::vector<double> growth = {0.1, 5.0, 25.0};
    geo->add_option("--dim", geo_dim, "Dimension n")->check(CLI::Range(1, 3));
    geo->add_option("--ball-growth", growth, "rmin rmax steps")->expected(3);

    // grid
    auto* grd = app.add_subcommand("grid", "Build and validate a dyadic grid");
    std::vector<double> root_arl = {1.0, 1.0, 8.0};
    int grid_depth = 6, grid_dim = 1;
    bool validate = false;
    grd->add_option("--root", root_arl, "Root descriptor: a r L")->expected(3);
    grd->add_option("--depth", grid_depth, "Generations below the root")->check(CLI::Range(0, 20));
    grd->add_option("--dim", grid_dim, "Dimension n")->check(CLI::Range(1, 3));
    grd->add_flag("--validate", validate, "Exit 1 unless all grid axioms pass");

    // norms
    auto* nrm = app.add_subcommand("norms", "Lp / weak-L1 / BMO norm report");
    std::vector<double> q_list, sigma_list;
    add_input(nrm);
    add_family(nrm);
    nrm->add_option("--q", q_list, "Oscillation exponents");
    nrm->add_option("--sigma", sigma_list, "Rearrangement scales");

    // maximal
    auto* mx = app.add_subcommand("maximal", "Apply a maximal operator");
    std::string mx_op = "hl";
    double mx_s = 0.5;
    mx->add_option("--op", mx_op, "hl|dyadic|local|sharp|localsharp")
        ->check(CLI::IsMember({"hl", "dyadic", "local", "sharp", "localsharp"}));
    mx->add_option("--s", mx_s, "Scale for the local variants");
    add_input(mx);
    add_family(mx);

    // goodlambda
    auto* gl = app.add_subcommand("goodlambda", "Good-lambda distributional table");
    double s1 = 0.5, s2 = 0.25, gl_p = 2.0;
    int nlambda = 10;
    add_input(gl);
    add_family(gl);
    gl->add_option("--s1", s1, "Scale of the dyadic local maximal side");
    gl->add_option("--s2", s2, "Scale of the sharp maximal side");
    gl->add_option("--p", gl_p, "Comparison exponent");
    gl->add_option("--nlambda", nlambda, "Ladder length")->check(CLI::Range(1, 40));

    // czd
    auto* cz = app.add_subcommand("czd", "Stopping-time decomposition at a level alpha");
    double alpha = 0.0, cz_p = 1.0;
    std::string cz_grid;
    int cz_depth = 4;
    cz->add_option("--alpha", alpha, "Threshold level")->required();
    cz->add_option("--p", cz_p, "Averaging exponent");
    add_input(cz);
    cz->add_option("--grid", cz_grid, "Decomposition grid JSON (default: window grid)");
    cz->add_option("--grid-depth", cz_depth, "Grid depth when --grid is absent")
        ->check(CLI::Range(0, 12));

    // singular
    auto* sg = app.add_subcommand("singular", "Truncated singular-integral diagnostics");
    std::string kernel_spec, sg_op = "tstar";
    std::vector<double> radii;
    int pairs = 3, sg_points = 2049;
    double op_norm = 0.0;
    sg->add_option("--kernel", kernel_spec, "multiplier:<spec> or file:<profile.json>")
        ->required();
    sg->add_option("--op", sg_op, "tstar|nu1|nu2|cotlar")
        ->check(CLI::IsMember({"tstar", "nu1", "nu2", "cotlar"}));
    add_input(sg);
    add_family(sg);
    sg->add_option("--radius", radii, "Annulus radii for nu1");
    sg->add_option("--pairs", pairs, "Sample pairs per set for nu2")->check(CLI::Range(2, 64));
    sg->add_option("--opnorm", op_norm, "L2 operator norm override for cotlar");
    sg->add_option("--points", sg_points, "Kernel profile sample count");

    // multiplier
    auto* mp = app.add_subcommand("multiplier", "Kernel profile tables of a spectral multiplier");
    std::string mspec, table = "annulus";
    int mp_dim = 2, mp_points = 2049, per_octave = 2, octaves = 10;
    double rmax = 10.0;
    std::vector<double> eps_list;
    mp->add_option("--m", mspec,
                   "heat:<zeta>|imaginary-power:<beta>|riesz:<zeta>|file:<samples.json>")
        ->required();
    mp->add_option("--dim", mp_dim, "Dimension n")->check(CLI::Range(1, 2));
    mp->add_option("--table", table, "annulus|profile|mh-norms")
        ->check(CLI::IsMember({"annulus", "profile", "mh-norms"}));
    mp->add_option("--rmax", rmax, "Radial extent of the profile")->check(CLI::PositiveNumber);
    mp->add_option("--points", mp_points, "Profile sample count");
    mp->add_option("--per-octave", per_octave, "Symbol-norm grid density")
        ->check(CLI::Range(1, 16));
    mp->add_option("--octaves", octaves, "Symbol-norm octaves each side of 1")
        ->check(CLI::Range(1, 40));
    mp->add_option("--eps", eps_list, "Annulus scales (default: doubling ladder from 0.01)");

    // global flags (--seed, --out, ...) may appear after the subcommand name
    for (CLI::App* sub : {geo, grd, nrm, mx, gl, cz, sg, mp}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (geo->parsed()) return run_geometry(g, geo_dim, growth);
        if (grd->parsed()) return run_grid(g, root_arl, grid_depth, grid_dim, validate);
        if (nrm->parsed())
            return run_norms(g, input, dim, px, pt, family, depth, staggered, q_list, sigma_list);
        if (mx->parsed())
            return run_maximal(g, mx_op, mx_s, input, dim, px, pt, family, depth, staggered);
        if (gl->parsed())
            return run_goodlambda(g, input, dim, px, pt, family, depth, staggered, s1, s2, gl_p,
                                  nlambda);
        if (cz->parsed())
            return run_czd(g, alpha, cz_p, input, dim, px, pt, cz_grid, cz_depth);
        if (sg->parsed())
            return run_singular(g, kernel_spec, sg_op, input, dim, px, pt, family, depth,
                                staggered, radii, pairs, op_norm, sg_points);
        if (mp->parsed())
            return run_multiplier(g, mspec, mp_dim, table, rmax, mp_points, per_octave, octaves,
                                  eps_list);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NoAdmissibleSplit& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 1;
    } catch (const InclusionViolation& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
