#pragma once

#include "brauer/local_curve.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace brauer {

struct ParseError : std::runtime_error {
  ParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what);
  std::size_t line = 0, column = 0;
};

// Local data of an elliptic curve over K, one entry per bad or archimedean place.
struct CurveData {
  std::string name;
  std::vector<LocalCurveData> places;
  std::optional<long> rank_k, rank_m;  // known ranks over K and M, if any
  // Per place, generators of the decomposition and inertia groups as words in
  // the named elements g and h ("g,h", "g^2*h", "1"); both empty if no place
  // gives them.
  std::vector<std::string> decomposition, inertia;
  bool operator==(const CurveData&) const = default;
};

// Grammar (one item per line; '#' starts a comment):
//   [curve]                 optional, at most once, before any [[place]]
//     name = "X1(11)"       rank_k = 0    rank_m = 0
//   [[place]]               one per place
//     place = "11"  kind = "finite"  p = 11  q = 11  type = "split_mult"
//     ord_delta = 1  c = 1  omega_disc = 0  w_override = -1
//     twist_square, cstar_square, a6_square, a6_cube, minus_a4_square = true/false
//     cubic_roots = 0|1|3
//     decomposition = "g,h"  inertia = "g"
// Values are integers, true/false or double-quoted strings. Unknown keys,
// duplicate keys and missing required keys (p, q, type for finite places) are
// rejected with the line and column of the offending item.
CurveData parse_curve(const std::string& text, const std::string& source = "<input>");
// Reads a file; a bare name such as "x1_11.toml" not found on disk is looked
// up in $BRAUER_DATA_DIR, else in the bundled data directory.
CurveData load_curve(const std::string& path);
std::string write_curve(const CurveData& c);

}  // namespace brauer
