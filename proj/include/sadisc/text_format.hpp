#pragma once

// Line-oriented "keyword value..." dialect shared by set files and operator
// spec files. '#' starts a comment; blank lines are ignored.

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sadisc {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

struct Line {
  int number = 0;  // 1-based
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::istream& in);

double parse_real(const Line& line, std::size_t index);
std::int64_t parse_integer(const Line& line, std::size_t index);

/// Throws ParseError unless the line has between lo and hi tokens (keyword included).
void expect_token_count(const Line& line, std::size_t lo, std::size_t hi);

}  // namespace sadisc
