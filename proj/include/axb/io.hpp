#pragma once
// File formats shared by the command-line tool and the language bindings:
//   lattice functions   JSON {window, px, pt, spacing, samples: [[re, im], ...]}
//   dyadic grids        JSON {root, depth, kappa0, levels, children, validation}
//   candidate families  JSON descriptors {depth, staggered [, window]}
//   kernel profiles     JSON {n, r_grid, values, singular_origin, provenance}
//   multiplier symbols  JSON {xi_grid, values [, s0, s_inf]}
//   CSV tables          %.12g cells (byte-stable across runs)

#include <stdexcept>
#include <string>
#include <vector>

#include "axb/czset.hpp"
#include "axb/grid_function.hpp"
#include "axb/maximal.hpp"
#include "axb/spectral.hpp"

namespace axb {

// Malformed or inconsistent input documents.  The command-line tool maps
// this (and friends) to the usage-error exit code.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// --- lattice functions ---------------------------------------------------
std::string grid_function_to_json(const GridFunction& f);
GridFunction grid_function_from_json(const std::string& text);

// --- dyadic grids ---------------------------------------------------------
// The document stores the root descriptor and depth (enough to rebuild the
// grid exactly: construction is integer arithmetic) plus the expanded node
// boxes, the children map, the validation flags and kappa0 for inspection.
std::string grid_to_json(const DyadicGrid& g, const GridValidation& val, double kappa0);
DyadicGrid grid_from_json(const std::string& text);

// --- candidate families ---------------------------------------------------
// Family documents are descriptors; the sets are rebuilt against the lattice
// of the function they are applied to, which guarantees cell alignment.  Any
// document with a "depth" field works, so a grid document is also accepted
// ("staggered" defaults to true; a "window"/"root" field, when present, must
// match the lattice window exactly).
std::string family_to_json(int depth, bool staggered);
CandidateFamily family_from_json(const std::string& text, const LatticeSpec& lat);

// --- radial kernel profiles ------------------------------------------------
std::string profile_to_json(const RadialProfile& k, const std::string& provenance);
RadialProfile profile_from_json(const std::string& text);

// --- multiplier symbols from sample files ----------------------------------
// {xi_grid: uniform samples from 0, values: [[re, im], ...]}.  The symbol is
// evaluated by linear interpolation, holding the last sample beyond the top.
MultiplierSpec multiplier_from_samples_json(const std::string& text, const std::string& name,
                                            int n);
// "file:<path>" loads a sample document; other specs parse as named families.
MultiplierSpec load_multiplier(const std::string& spec, int n);

// --- CSV --------------------------------------------------------------------
std::string format_g12(double v);
std::string csv_render(const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

}  // namespace axb
