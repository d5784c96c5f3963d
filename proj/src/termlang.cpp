#include "barycentric/termlang.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <system_error>

namespace bary {

std::string_view to_string(SourceErrorKind kind) {
  switch (kind) {
    case SourceErrorKind::UnexpectedToken: return "UnexpectedToken";
    case SourceErrorKind::WeightOutOfRange: return "WeightOutOfRange";
    case SourceErrorKind::MalformedNumber: return "MalformedNumber";
    case SourceErrorKind::UnbalancedParen: return "UnbalancedParen";
    case SourceErrorKind::TrailingInput: return "TrailingInput";
  }
  return "Unknown";
}

SourceError::SourceError(SourceErrorKind kind, std::size_t position, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + " at offset " + std::to_string(position) + ": " + detail),
      kind_(kind),
      position_(position),
      detail_(detail) {}

namespace {

// Deep enough for any practical term; keeps hostile input off the stack limit.
constexpr std::size_t kMaxNesting = 10000;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  BaryTerm parse() {
    BaryTerm term = parse_term(0);
    skip_ws();
    if (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ')' || c == ']') throw SourceError(SourceErrorKind::UnbalancedParen, pos_, "unmatched closing bracket");
      throw SourceError(SourceErrorKind::TrailingInput, pos_, "input continues after a complete term");
    }
    return term;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail_expected(std::string_view what) {
    if (pos_ >= text_.size() && open_ > 0) {
      throw SourceError(SourceErrorKind::UnbalancedParen, text_.size(),
                        "input ended while expecting " + std::string(what));
    }
    if (pos_ >= text_.size()) {
      throw SourceError(SourceErrorKind::UnexpectedToken, pos_, "expected " + std::string(what) + ", found end of input");
    }
    throw SourceError(SourceErrorKind::UnexpectedToken, pos_,
                      "expected " + std::string(what) + ", found '" + text_[pos_] + "'");
  }

  void expect(char c, std::string_view what) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return;
    }
    fail_expected(what);
  }

  BaryTerm parse_term(std::size_t nesting) {
    if (nesting > kMaxNesting) throw SourceError(SourceErrorKind::UnexpectedToken, pos_, "nesting too deep");
    skip_ws();
    if (pos_ >= text_.size()) fail_expected("a term");
    const char c = text_[pos_];
    if (c == 'v') return parse_leaf();
    if (c != '[') fail_expected("'v' or '['");
    ++pos_;
    ++open_;
    const Weight w = parse_weight();
    expect(']', "']'");
    expect('(', "'('");
    BaryTerm left = parse_term(nesting + 1);
    expect(',', "','");
    BaryTerm right = parse_term(nesting + 1);
    expect(')', "')'");
    --open_;
    return BaryTerm::node(w, std::move(left), std::move(right));
  }

  BaryTerm parse_leaf() {
    ++pos_;  // 'v'
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (digits == pos_) {
      if (pos_ >= text_.size()) throw SourceError(SourceErrorKind::MalformedNumber, pos_, "missing generator index");
      throw SourceError(SourceErrorKind::MalformedNumber, pos_, "generator index must follow 'v'");
    }
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, index);
    if (ec != std::errc() || index == 0) {
      throw SourceError(SourceErrorKind::MalformedNumber, digits,
                        "generator index '" + std::string(text_.substr(digits, pos_ - digits)) +
                            "' must be a positive integer");
    }
    return BaryTerm::leaf(index);
  }

  // Consumes DIGITS ["." DIGITS] [("e"|"E") ["+"|"-"] DIGITS] or DIGITS "/" DIGITS.
  Weight parse_weight() {
    skip_ws();
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
      return pos_ - s;
    };

    if (pos_ >= text_.size()) fail_expected("a weight");
    if (!is_digit(text_[pos_]) && text_[pos_] != '.') {
      if (text_[pos_] == '-' || text_[pos_] == '+') {
        throw SourceError(SourceErrorKind::WeightOutOfRange, start, "weights are unsigned and inside (0,1)");
      }
      fail_expected("a weight");
    }

    const std::size_t int_digits = digits();
    const std::size_t int_end = pos_;
    skip_ws();
    double value = 0.0;
    if (int_digits > 0 && pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      skip_ws();
      const std::size_t den_start = pos_;
      if (digits() == 0) throw SourceError(SourceErrorKind::MalformedNumber, pos_, "denominator expected after '/'");
      const double num = to_double(start, int_end);
      const double den = to_double(den_start, pos_);
      if (den == 0.0) throw SourceError(SourceErrorKind::MalformedNumber, den_start, "division by zero");
      value = num / den;
    } else {
      pos_ = int_end;
      std::size_t frac_digits = 0;
      if (pos_ < text_.size() && text_[pos_] == '.') {
        ++pos_;
        frac_digits = digits();
      }
      if (int_digits + frac_digits == 0) throw SourceError(SourceErrorKind::MalformedNumber, start, "no digits");
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        if (digits() == 0) throw SourceError(SourceErrorKind::MalformedNumber, start, "exponent has no digits");
      }
      value = to_double(start, pos_);
    }
    if (!(value > 0.0 && value < 1.0)) {
      throw SourceError(SourceErrorKind::WeightOutOfRange, start,
                        "weight " + std::string(text_.substr(start, pos_ - start)) + " is not inside (0,1)");
    }
    return Weight(value);
  }

  double to_double(std::size_t begin, std::size_t end) const {
    // strtod saturates instead of failing: overflow gives HUGE_VAL and
    // underflow gives 0, both of which are then reported as out of range.
    const std::string token(text_.substr(begin, end - begin));
    char* stop = nullptr;
    const double value = std::strtod(token.c_str(), &stop);
    if (stop != token.c_str() + token.size()) {
      throw SourceError(SourceErrorKind::MalformedNumber, begin, "cannot read number '" + token + "'");
    }
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  // Brackets opened by enclosing nodes that are not yet closed.
  std::size_t open_ = 0;
};

void print_into(const BaryTerm& term, std::string& out) {
  if (term.is_leaf()) {
    out += 'v';
    out += std::to_string(term.generator());
    return;
  }
  out += '[';
  out += format_double(term.weight().value());
  out += "](";
  print_into(term.left(), out);
  out += ',';
  print_into(term.right(), out);
  out += ')';
}

}  // namespace

BaryTerm parse_term(std::string_view text) { return Parser(text).parse(); }

std::string print_term(const BaryTerm& term) {
  std::string out;
  print_into(term, out);
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

}  // namespace bary
