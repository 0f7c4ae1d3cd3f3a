#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "toricmld/mfs.hpp"
#include "toricmld/toric.hpp"

namespace toricmld {

// Instance files are JSON. Rationals are strings "p/q"; integer entries may
// also be JSON integers.
//
//   {"kind": "toric", "dim": d, "lattice_generators": [[...]],
//    "rays": [[...]], "max_cones": [[i, j, ...]]}
//
//   {"kind": "mfs", "m": m, "n": n, "lattice_generators": [[...]],
//    "rays": [[...]], "max_cones": [[...]], "base_lattice_generators": [[...]]}
//
//   {"kind": "mfs", "m": m, "n": n, "fiber_rays": [[...]],
//    "base_multiples": [...], "extra_generators": [[...]]}
//
// The lattice is Z^d plus the listed generators. An mfs without "rays" is
// built with make_mfs from the fiber rays. Malformed input throws
// Error(Parse) whose message starts with the JSON path of the offending value.
using Instance = std::variant<ToricVariety, ToricMfs>;

Instance parse_instance(const std::string& text);
// Throws Parse (with the path) when the file cannot be read.
Instance load_instance(const std::string& path);

// Explicit form; parse_instance(serialize(x)) reproduces x.
std::string serialize(const ToricVariety& x);
std::string serialize(const ToricMfs& mfs);

// Non-integral rows of the canonical basis; together with Z^d they generate
// the lattice.
std::vector<RatVec> lattice_generators(const Lattice& lattice);

inline constexpr const char* kSweepCsvHeader = "l,r,mld_X,mld_Y,ratio_y_over_x4,slope_running";

// One line per row. slope_running is the log-log slope over the rows so far
// and is empty on the first row.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace toricmld
