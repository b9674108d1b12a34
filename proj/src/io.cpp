#include "axb/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace axb {

using nlohmann::json;

namespace {

json window_to_jobj(const CZSet& w) {
    json corner = json::array();
    for (int i = 0; i < w.dim; ++i) corner.push_back(w.corner[static_cast<std::size_t>(i)]);
    return json{{"dim", w.dim},
                {"corner", corner},
                {"side", w.side},
                {"t_center", w.t_center},
                {"half_width", w.half_width}};
}

CZSet window_from_jobj(const json& j, const char* what) {
    CZSet w;
    try {
        w.dim = j.at("dim").get<int>();
        if (w.dim < 1 || w.dim > kMaxDim) throw IoError(std::string(what) + ": bad dim");
        const json& corner = j.at("corner");
        if (!corner.is_array() || static_cast<int>(corner.size()) != w.dim)
            throw IoError(std::string(what) + ": corner must list dim entries");
        for (int i = 0; i < w.dim; ++i)
            w.corner[static_cast<std::size_t>(i)] = corner[static_cast<std::size_t>(i)].get<double>();
        w.side = j.at("side").get<double>();
        w.t_center = j.at("t_center").get<double>();
        w.half_width = j.at("half_width").get<double>();
    } catch (const json::exception& e) {
        throw IoError(std::string(what) + ": " + e.what());
    }
    if (!(w.side > 0.0) || !(w.half_width > 0.0))
        throw IoError(std::string(what) + ": side and half_width must be positive");
    return w;
}

json complex_array(const std::vector<cplx>& v) {
    json out = json::array();
    for (const cplx& z : v) out.push_back(json::array({z.real(), z.imag()}));
    return out;
}

std::vector<cplx> complex_array_from(const json& j, const char* what) {
    if (!j.is_array()) throw IoError(std::string(what) + " must be an array");
    std::vector<cplx> out;
    out.reserve(j.size());
    for (const json& e : j) {
        if (e.is_number()) {
            out.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2) {
            out.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw IoError(std::string(what) + " entries must be numbers or [re, im] pairs");
        }
    }
    return out;
}

json parse(const std::string& text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw IoError(std::string(what) + ": malformed JSON");
    return j;
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

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

std::string grid_function_to_json(const GridFunction& f) {
    json j{{"window", window_to_jobj(f.lat.window)},
           {"px", f.lat.px},
           {"pt", f.lat.pt},
           {"spacing", json{{"hx", f.lat.hx()}, {"ht", f.lat.ht()}}},
           {"samples", complex_array(f.v)}};
    return j.dump(1) + "\n";
}

GridFunction grid_function_from_json(const std::string& text) {
    const json j = parse(text, "grid function");
    LatticeSpec lat;
    try {
        lat.window = window_from_jobj(j.at("window"), "grid function window");
        lat.px = j.at("px").get<int>();
        lat.pt = j.at("pt").get<int>();
    } catch (const json::exception& e) {
        throw IoError(std::string("grid function: ") + e.what());
    }
    if (lat.px < 0 || lat.pt < 0 || lat.px > 24 || lat.pt > 24)
        throw IoError("grid function: px/pt out of range");
    GridFunction f;
    f.lat = lat;
    try {
        f.v = complex_array_from(j.at("samples"), "grid function samples");
    } catch (const json::exception& e) {
        throw IoError(std::string("grid function: ") + e.what());
    }
    if (static_cast<std::int64_t>(f.v.size()) != lat.points())
        throw IoError("grid function: sample count does not match the lattice (" +
                      std::to_string(f.v.size()) + " vs " + std::to_string(lat.points()) + ")");
    return f;
}

std::string grid_to_json(const DyadicGrid& g, const GridValidation& val, double kappa0) {
    json levels = json::array();
    for (const auto& level : g.levels) {
        json row = json::array();
        for (std::int32_t id : level) {
            const GridNode& nd = g.nodes[static_cast<std::size_t>(id)];
            row.push_back(json{{"id", id},
                               {"box", window_to_jobj(nd.box)},
                               {"parent", nd.parent},
                               {"kx", nd.kx},
                               {"kt", nd.kt}});
        }
        levels.push_back(std::move(row));
    }
    json children = json::object();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const GridNode& nd = g.nodes[i];
        if (nd.child_count == 0) continue;
        json kids = json::array();
        for (std::int32_t c = 0; c < nd.child_count; ++c) kids.push_back(nd.first_child + c);
        children[std::to_string(i)] = std::move(kids);
    }
    json j{{"root", window_to_jobj(g.root)},
           {"depth", g.depth()},
           {"kappa0", kappa0},
           // logarithmic constants derived from the containment ratio kappa0
           {"constants",
            json{{"c_kappa0", 3.0 + std::log2(kappa0 + 1.0)},
                 {"c_kappa0_tilde", 2.0 + std::log2((4.0 * kappa0 + 3.0) * kappa0)}}},
           {"levels", std::move(levels)},
           {"children", std::move(children)},
           {"validation", json{{"partition", val.partition},
                               {"nesting", val.nesting},
                               {"parent_measure", val.parent_measure},
                               {"child_band", val.child_band},
                               {"admissible_nodes", val.admissible_nodes},
                               {"ok", val.ok()}}}};
    return j.dump(1) + "\n";
}

DyadicGrid grid_from_json(const std::string& text) {
    const json j = parse(text, "grid");
    CZSet root;
    int depth = 0;
    try {
        root = window_from_jobj(j.at("root"), "grid root");
        depth = j.at("depth").get<int>();
    } catch (const json::exception& e) {
        throw IoError(std::string("grid: ") + e.what());
    }
    if (depth < 0 || depth > 40) throw IoError("grid: depth out of range");
    // reconstruction is exact: node layout is integer arithmetic on the root
    return build_grid(root, depth);
}

std::string family_to_json(int depth, bool staggered) {
    json j{{"depth", depth}, {"staggered", staggered}};
    return j.dump(1) + "\n";
}

CandidateFamily family_from_json(const std::string& text, const LatticeSpec& lat) {
    const json j = parse(text, "family");
    int depth = 0;
    bool staggered = true;
    try {
        depth = j.at("depth").get<int>();
        if (j.contains("staggered")) staggered = j.at("staggered").get<bool>();
        const char* root_key = j.contains("window") ? "window" : (j.contains("root") ? "root" : nullptr);
        if (root_key != nullptr) {
            const CZSet w = window_from_jobj(j.at(root_key), "family window");
            if (!same_window(w, lat.window))
                throw IoError("family: window does not match the input lattice");
        }
    } catch (const json::exception& e) {
        throw IoError(std::string("family: ") + e.what());
    }
    if (depth < 0 || depth > 40) throw IoError("family: depth out of range");
    return make_family(lat, depth, staggered);
}

std::string profile_to_json(const RadialProfile& k, const std::string& provenance) {
    json r_grid = json::array();
    for (std::size_t i = 0; i < k.values.size(); ++i)
        r_grid.push_back(k.dr * static_cast<double>(i));
    json j{{"n", k.n},
           {"r_grid", std::move(r_grid)},
           {"values", complex_array(k.values)},
           {"singular_origin", k.singular_origin},
           {"provenance", provenance}};
    return j.dump(1) + "\n";
}

RadialProfile profile_from_json(const std::string& text) {
    const json j = parse(text, "profile");
    RadialProfile k;
    std::vector<double> r_grid;
    try {
        k.n = j.at("n").get<int>();
        for (const json& e : j.at("r_grid")) r_grid.push_back(e.get<double>());
        k.values = complex_array_from(j.at("values"), "profile values");
        if (j.contains("singular_origin")) k.singular_origin = j.at("singular_origin").get<bool>();
    } catch (const json::exception& e) {
        throw IoError(std::string("profile: ") + e.what());
    }
    if (k.n != 1 && k.n != 2) throw IoError("profile: n must be 1 or 2");
    if (r_grid.size() != k.values.size() || r_grid.size() < 2)
        throw IoError("profile: r_grid and values must agree and hold at least 2 samples");
    if (r_grid.front() != 0.0) throw IoError("profile: r_grid must start at 0");
    k.dr = r_grid[1];
    if (!(k.dr > 0.0)) throw IoError("profile: r_grid must be increasing");
    const double tol = 1e-9 * std::max(1.0, r_grid.back());
    for (std::size_t i = 0; i < r_grid.size(); ++i)
        if (std::abs(r_grid[i] - k.dr * static_cast<double>(i)) > tol)
            throw IoError("profile: r_grid must be uniformly spaced");
    return k;
}

MultiplierSpec multiplier_from_samples_json(const std::string& text, const std::string& name,
                                            int n) {
    const json j = parse(text, "multiplier samples");
    std::vector<double> xi;
    std::vector<cplx> values;
    MultiplierSpec ms;
    ms.name = name;
    ms.s0 = 1.6;
    ms.s_inf = std::max(1.6, 0.5 * (n + 1) + 0.1) + 0.1;
    try {
        for (const json& e : j.at("xi_grid")) xi.push_back(e.get<double>());
        values = complex_array_from(j.at("values"), "multiplier values");
        if (j.contains("s0")) ms.s0 = j.at("s0").get<double>();
        if (j.contains("s_inf")) ms.s_inf = j.at("s_inf").get<double>();
    } catch (const json::exception& e) {
        throw IoError(std::string("multiplier samples: ") + e.what());
    }
    if (xi.size() != values.size() || xi.size() < 2)
        throw IoError("multiplier samples: xi_grid and values must agree and hold >= 2 samples");
    if (xi.front() != 0.0) throw IoError("multiplier samples: xi_grid must start at 0");
    const double dxi = xi[1];
    if (!(dxi > 0.0)) throw IoError("multiplier samples: xi_grid must be increasing");
    const double tol = 1e-9 * std::max(1.0, xi.back());
    for (std::size_t i = 0; i < xi.size(); ++i)
        if (std::abs(xi[i] - dxi * static_cast<double>(i)) > tol)
            throw IoError("multiplier samples: xi_grid must be uniformly spaced");
    ms.m = [dxi, values](double x) {
        if (x <= 0.0) return values.front();
        const double u = x / dxi;
        const auto i = static_cast<std::size_t>(u);
        if (i + 1 >= values.size()) return values.back();
        const double w = u - static_cast<double>(i);
        return values[i] * (1.0 - w) + values[i + 1] * w;
    };
    return ms;
}

MultiplierSpec load_multiplier(const std::string& spec, int n) {
    if (spec.rfind("file:", 0) == 0) {
        const std::string path = spec.substr(5);
        if (path.empty()) throw IoError("multiplier spec file: needs a path");
        return multiplier_from_samples_json(read_text_file(path), spec, n);
    }
    try {
        return make_multiplier(spec, n);
    } catch (const std::invalid_argument& e) {
        throw IoError(e.what());
    }
}

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_render(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_g12(row[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace axb
