#include "sadisc/set_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "sadisc/text_format.hpp"

namespace sadisc {

namespace {

Relation parse_relation(const Line& line, std::size_t index) {
  const Token& t = line.tokens[index];
  if (t.text == ">=") return Relation::GreaterEq;
  if (t.text == "<=") return Relation::LessEq;
  if (t.text == "==") return Relation::Equal;
  throw ParseError(line.number, t.column, "unknown relation '" + t.text + "' (expected >=, <= or ==)");
}

}  // namespace

SemiAlgebraicSet parse_set(std::istream& in) {
  const auto lines = tokenize(in);
  std::optional<std::size_t> dim;
  std::optional<int> declared;
  std::vector<Polynomial> polys;
  std::map<std::string, std::size_t> names;
  std::vector<Clause> clauses;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& line = lines[i];
    const std::string& key = line.tokens[0].text;
    if (key == "dim") {
      expect_token_count(line, 2, 2);
      const auto b = parse_integer(line, 1);
      if (b < 1) throw ParseError(line.number, line.tokens[1].column, "dimension must be >= 1");
      if (dim) throw ParseError(line.number, 1, "dimension given twice");
      dim = static_cast<std::size_t>(b);
    } else if (key == "degree") {
      expect_token_count(line, 2, 2);
      declared = static_cast<int>(parse_integer(line, 1));
    } else if (key == "poly") {
      expect_token_count(line, 2, 2);
      if (!dim) throw ParseError(line.number, 1, "'dim' must precede the first polynomial");
      const std::string& name = line.tokens[1].text;
      if (names.count(name)) throw ParseError(line.number, line.tokens[1].column, "polynomial '" + name + "' redefined");
      std::vector<Term> terms;
      bool closed = false;
      for (++i; i < lines.size(); ++i) {
        const Line& row = lines[i];
        if (row.tokens[0].text == "end") {
          expect_token_count(row, 1, 1);
          closed = true;
          break;
        }
        expect_token_count(row, *dim + 1, *dim + 1);
        Term t{parse_real(row, 0), {}};
        for (std::size_t j = 0; j < *dim; ++j) {
          const auto e = parse_integer(row, j + 1);
          if (e < 0) throw ParseError(row.number, row.tokens[j + 1].column, "exponent must be >= 0");
          t.exponents.push_back(static_cast<int>(e));
        }
        terms.push_back(std::move(t));
      }
      if (!closed) throw ParseError(line.number, 1, "polynomial '" + name + "' is missing 'end'");
      names[name] = polys.size();
      polys.emplace_back(*dim, std::move(terms));
    } else if (key == "clause") {
      if (line.tokens.size() % 2 == 0) {
        throw ParseError(line.number, line.tokens.back().column, "clause expects 'name relation' pairs");
      }
      Clause clause;
      for (std::size_t k = 1; k + 1 < line.tokens.size(); k += 2) {
        const auto it = names.find(line.tokens[k].text);
        if (it == names.end()) {
          throw ParseError(line.number, line.tokens[k].column, "unknown polynomial '" + line.tokens[k].text + "'");
        }
        clause.push_back({it->second, parse_relation(line, k + 1)});
      }
      clauses.push_back(std::move(clause));
    } else {
      throw ParseError(line.number, line.tokens[0].column, "unknown keyword '" + key + "'");
    }
  }
  if (!dim) throw ParseError(lines.empty() ? 1 : lines.back().number, 1, "missing 'dim'");
  try {
    return SemiAlgebraicSet(*dim, std::move(polys), std::move(clauses), declared);
  } catch (const std::invalid_argument& e) {
    throw ParseError(lines.back().number, 1, e.what());
  }
}

SemiAlgebraicSet parse_set_string(const std::string& text) {
  std::istringstream in(text);
  return parse_set(in);
}

SemiAlgebraicSet load_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open set file '" + path + "'");
  return parse_set(in);
}

std::string write_set(const SemiAlgebraicSet& s) {
  std::ostringstream os;
  os.precision(17);
  os << "dim " << s.dim() << "\n";
  if (s.declared_degree()) os << "degree " << *s.declared_degree() << "\n";
  for (std::size_t p = 0; p < s.polys().size(); ++p) {
    os << "poly p" << p << "\n";
    for (const auto& t : s.polys()[p].terms()) {
      os << "  " << t.coef;
      for (int e : t.exponents) os << " " << e;
      os << "\n";
    }
    os << "end\n";
  }
  for (const auto& clause : s.clauses()) {
    os << "clause";
    for (const auto& c : clause) os << " p" << c.poly_index << " " << relation_symbol(c.relation);
    os << "\n";
  }
  return os.str();
}

}  // namespace sadisc
