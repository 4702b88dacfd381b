#include "sadisc/text_format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace sadisc {

namespace {

std::string describe(int line, int column, const std::string& message) {
  std::ostringstream os;
  if (line <= 0) return "end of input: " + message;
  os << "line " << line << ", column " << column << ": " << message;
  return os.str();
}

int column_after(const Line& line) {
  if (line.tokens.empty()) return 1;
  const Token& t = line.tokens.back();
  return t.column + static_cast<int>(t.text.size());
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(describe(line, column, message)), line_(line), column_(column) {}

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      if (i >= raw.size()) break;
      const std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      line.tokens.push_back({raw.substr(start, i - start), static_cast<int>(start) + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

double parse_real(const Line& line, std::size_t index) {
  if (index >= line.tokens.size()) throw ParseError(line.number, column_after(line), "expected a number");
  const Token& t = line.tokens[index];
  double v = 0.0;
  const auto* first = t.text.data();
  const auto* last = first + t.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ParseError(line.number, t.column, "'" + t.text + "' is not a finite real number");
  }
  return v;
}

std::int64_t parse_integer(const Line& line, std::size_t index) {
  if (index >= line.tokens.size()) throw ParseError(line.number, column_after(line), "expected an integer");
  const Token& t = line.tokens[index];
  std::int64_t v = 0;
  const auto* first = t.text.data();
  const auto* last = first + t.text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line.number, t.column, "'" + t.text + "' is not an integer");
  }
  return v;
}

void expect_token_count(const Line& line, std::size_t lo, std::size_t hi) {
  const std::size_t n = line.tokens.size();
  if (n < lo) throw ParseError(line.number, column_after(line), "too few values for '" + line.tokens[0].text + "'");
  if (n > hi) throw ParseError(line.number, line.tokens[hi].column, "unexpected extra value");
}

}  // namespace sadisc
