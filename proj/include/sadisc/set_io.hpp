#pragma once

// Set definition files.
//
//   # unit disc of radius 1/2, centred at the origin
//   dim 2
//   degree 2                 (optional declared degree B >= s*d)
//   poly disc                (named polynomial; one "coefficient e_1 ... e_b" row per term)
//     1.0    2 0
//     1.0    0 2
//     -0.25  0 0
//   end
//   clause disc <=           (conjunction of "name relation" pairs; relations >=, <=, ==)
//
// Several clause lines form a union. A bare "clause" is the whole cube.

#include <iosfwd>
#include <string>

#include "sadisc/semialgebraic.hpp"

namespace sadisc {

/// Throws ParseError carrying the line and column of the offending token.
SemiAlgebraicSet parse_set(std::istream& in);
SemiAlgebraicSet parse_set_string(const std::string& text);
SemiAlgebraicSet load_set_file(const std::string& path);

/// Canonical text form; parse_set(write_set(s)) reproduces s.
std::string write_set(const SemiAlgebraicSet& s);

}  // namespace sadisc
