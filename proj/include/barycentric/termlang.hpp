#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "barycentric/baryterm.hpp"

namespace bary {

enum class SourceErrorKind { UnexpectedToken, WeightOutOfRange, MalformedNumber, UnbalancedParen, TrailingInput };

std::string_view to_string(SourceErrorKind kind);

// Raised by parse. position is a byte offset into the input, at most its length.
class SourceError : public std::runtime_error {
 public:
  SourceError(SourceErrorKind kind, std::size_t position, const std::string& detail);

  SourceErrorKind kind() const noexcept { return kind_; }
  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  SourceErrorKind kind_;
  std::size_t position_;
  std::string detail_;
};

// Grammar, whitespace-insensitive:
//   term   := leaf | "[" weight "]" "(" term "," term ")"
//   leaf   := "v" DIGITS                      generator index, >= 1
//   weight := DECIMAL | DIGITS "/" DIGITS     strictly inside (0,1)
// DECIMAL accepts an optional fraction and exponent, so every printed weight
// parses back.
BaryTerm parse_term(std::string_view text);

// Canonical form: no whitespace, weights as the shortest decimal that
// round-trips. parse_term(print_term(t)) == t bit for bit.
std::string print_term(const BaryTerm& term);

// Shortest round-tripping decimal for a double ("0.5", "1", "1e-07").
std::string format_double(double value);

}  // namespace bary
