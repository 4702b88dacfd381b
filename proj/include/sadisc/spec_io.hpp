#pragma once

// Operator spec files, in the same keyword dialect as set files.
//
//   # almost Mathieu operator at the golden rotation
//   dim 1
//   L 2048
//   lambda 10
//   theta 0
//   alpha 0.6180339887498949
//   hop 1 1.0 0.0            (offset k, Re a_k, Im a_k; a_{-k} = conj(a_k) is implied)
//   harmonic 1 1.0 0.0       (m_1 .. m_b, Re c, Im c; the conjugate harmonic is implied)
//   decay 2.718281828459045 1   (optional C1 c1; default c1 = 1 with the smallest valid C1)
//   cutoff 4                 (optional; default is the largest hopping offset)
//
// "hop 0 x" sets the on-site term a_0 = x.

#include <iosfwd>
#include <string>

#include "sadisc/qdynamics.hpp"

namespace sadisc {

OperatorSpec parse_operator_spec(std::istream& in);
OperatorSpec parse_operator_spec_string(const std::string& text);
OperatorSpec load_operator_spec(const std::string& path);

}  // namespace sadisc
