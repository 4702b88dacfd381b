#include "sadisc/spec_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "sadisc/text_format.hpp"

namespace sadisc {

OperatorSpec parse_operator_spec(std::istream& in) {
  const auto lines = tokenize(in);
  OperatorSpec spec;
  std::optional<std::size_t> dim;
  std::optional<std::pair<double, double>> decay;
  std::optional<std::int64_t> cutoff;
  bool have_theta = false, have_alpha = false, have_L = false;

  auto need_dim = [&](const Line& line) {
    if (!dim) throw ParseError(line.number, 1, "'dim' must come first");
    return *dim;
  };
  auto reals = [](const Line& line, std::size_t from, std::size_t count) {
    std::vector<double> v;
    for (std::size_t j = 0; j < count; ++j) v.push_back(parse_real(line, from + j));
    return v;
  };

  for (const Line& line : lines) {
    const std::string& key = line.tokens[0].text;
    if (key == "dim") {
      expect_token_count(line, 2, 2);
      const auto b = parse_integer(line, 1);
      if (b < 1) throw ParseError(line.number, line.tokens[1].column, "dimension must be >= 1");
      dim = static_cast<std::size_t>(b);
    } else if (key == "L") {
      expect_token_count(line, 2, 2);
      spec.L = parse_integer(line, 1);
      if (spec.L < 1) throw ParseError(line.number, line.tokens[1].column, "L must be >= 1");
      have_L = true;
    } else if (key == "lambda") {
      expect_token_count(line, 2, 2);
      spec.lambda = parse_real(line, 1);
    } else if (key == "theta") {
      const std::size_t b = need_dim(line);
      expect_token_count(line, b + 1, b + 1);
      try {
        spec.theta = TorusVector(reals(line, 1, b));
      } catch (const std::invalid_argument& e) {
        throw ParseError(line.number, line.tokens[1].column, e.what());
      }
      have_theta = true;
    } else if (key == "alpha") {
      const std::size_t b = need_dim(line);
      expect_token_count(line, b + 1, b + 1);
      spec.alpha = Frequency{reals(line, 1, b), ""};
      have_alpha = true;
    } else if (key == "hop") {
      expect_token_count(line, 3, 4);
      const auto k = parse_integer(line, 1);
      if (k < 0) throw ParseError(line.number, line.tokens[1].column, "give the nonnegative offset; -k is implied");
      const double im = line.tokens.size() == 4 ? parse_real(line, 3) : 0.0;
      if (k == 0 && im != 0.0) throw ParseError(line.number, line.tokens[3].column, "a_0 must be real");
      add_hopping_pair(spec, k, cplx(parse_real(line, 2), im));
    } else if (key == "harmonic") {
      const std::size_t b = need_dim(line);
      expect_token_count(line, b + 2, b + 3);
      std::vector<std::int64_t> m;
      for (std::size_t j = 0; j < b; ++j) m.push_back(parse_integer(line, 1 + j));
      const double im = line.tokens.size() == b + 3 ? parse_real(line, b + 2) : 0.0;
      add_harmonic_pair(spec, std::move(m), cplx(parse_real(line, b + 1), im));
    } else if (key == "decay") {
      expect_token_count(line, 3, 3);
      decay = std::make_pair(parse_real(line, 1), parse_real(line, 2));
    } else if (key == "cutoff") {
      expect_token_count(line, 2, 2);
      cutoff = parse_integer(line, 1);
    } else {
      throw ParseError(line.number, line.tokens[0].column, "unknown keyword '" + key + "'");
    }
  }

  if (!dim) throw ParseError(0, 0, "missing 'dim'");
  if (!have_L) throw ParseError(0, 0, "missing 'L'");
  if (!have_alpha) throw ParseError(0, 0, "missing 'alpha'");
  if (!have_theta) spec.theta = TorusVector::zero(*dim);
  if (cutoff) spec.cutoff = *cutoff;
  if (decay) {
    spec.decay_C1 = decay->first;
    spec.decay_c1 = decay->second;
  } else {
    spec.decay_c1 = 1.0;
    spec.decay_C1 = minimal_envelope(spec.kernel, 1.0);
  }
  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, 0, e.what());
  }
  return spec;
}

OperatorSpec parse_operator_spec_string(const std::string& text) {
  std::istringstream in(text);
  return parse_operator_spec(in);
}

OperatorSpec load_operator_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spec file '" + path + "'");
  return parse_operator_spec(in);
}

}  // namespace sadisc
