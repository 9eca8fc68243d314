#include "oscdecay/parser.hpp"

#include <cctype>

namespace oscdecay {

namespace {

class Scanner {
 public:
  Scanner(const std::string& text, int n) : text_(text), n_(n) {}

  HomogeneousPolynomial run() {
    TermMap terms;
    int degree = -1;
    skip_ws();
    if (eof()) fail("empty expression");
    Rat sign = 1;
    if (peek() == '+' || peek() == '-') {
      if (get() == '-') sign = -1;
    }
    for (;;) {
      parse_term(sign, terms, degree);
      skip_ws();
      if (eof()) break;
      char c = get();
      if (c == '+')
        sign = 1;
      else if (c == '-')
        sign = -1;
      else
        fail("expected '+' or '-' between terms", pos_ - 1);
    }
    if (degree < 2)
      throw ParseError(ParseError::Kind::syntax, 0,
                       "phase degree must be at least 2, got " + std::to_string(degree));
    return HomogeneousPolynomial(n_, degree, std::move(terms));
  }

 private:
  void parse_term(const Rat& sign, TermMap& terms, int& degree) {
    skip_ws();
    std::size_t term_pos = pos_;
    Rat coeff = 1;
    if (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.'))
      coeff = parse_coefficient();
    MultiIndex alpha = MultiIndex::zero(n_);
    MultiIndex beta = MultiIndex::zero(n_);
    int nfactors = 0;
    for (;;) {
      skip_ws();
      std::size_t save = pos_;
      if (!eof() && peek() == '*') {
        get();
        skip_ws();
        parse_factor(alpha, beta);  // '*' commits to a factor
        ++nfactors;
        continue;
      }
      if (!eof() && (peek() == 'x' || peek() == 'y')) {
        parse_factor(alpha, beta);
        ++nfactors;
        continue;
      }
      pos_ = save;
      break;
    }
    if (nfactors == 0) fail("expected at least one variable factor in term", term_pos);
    int term_degree = alpha.order() + beta.order();
    if (degree < 0) {
      degree = term_degree;
    } else if (term_degree != degree) {
      throw ParseError(ParseError::Kind::mixed_degree, term_pos,
                       "mixed total degree: term of degree " + std::to_string(term_degree) +
                           " in a polynomial of degree " + std::to_string(degree));
    }
    terms[{alpha, beta}] += sign * coeff;
    auto it = terms.find({alpha, beta});
    if (it != terms.end() && it->second == 0) terms.erase(it);
  }

  void parse_factor(MultiIndex& alpha, MultiIndex& beta) {
    skip_ws();
    if (eof()) fail("expected variable");
    char block = get();
    if (block != 'x' && block != 'y') fail("expected variable 'x<i>' or 'y<i>'", pos_ - 1);
    std::size_t idx_pos = pos_;
    long idx = parse_uint("variable index");
    if (idx < 1 || idx > n_)
      throw ParseError(ParseError::Kind::dimension, idx_pos,
                       "variable index " + std::to_string(idx) + " out of range 1.." +
                           std::to_string(n_));
    int e = 1;
    skip_ws();
    if (!eof() && peek() == '^') {
      get();
      skip_ws();
      e = static_cast<int>(parse_uint("exponent"));
    }
    auto& mi = (block == 'x') ? alpha : beta;
    mi.exps[static_cast<int>(idx) - 1] += e;
  }

  Rat parse_coefficient() {
    std::size_t start = pos_;
    std::string digits;
    bool saw_dot = false;
    while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
      if (peek() == '.') {
        if (saw_dot) fail("malformed decimal", pos_);
        saw_dot = true;
      }
      digits += get();
    }
    if (digits.empty() || digits == ".") fail("expected coefficient", start);
    skip_ws();
    if (!saw_dot && !eof() && peek() == '/') {
      get();
      skip_ws();
      std::string den;
      while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) den += get();
      if (den.empty()) fail("expected denominator after '/'", pos_);
      digits += "/" + den;
    }
    try {
      return rat_from_string(digits);
    } catch (const RatParseError& e) {
      fail(e.what(), start);
    }
    return 0;  // unreachable
  }

  long parse_uint(const std::string& what) {
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected " + what);
    long v = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (get() - '0');
      if (v > 1'000'000) fail(what + " too large", pos_);
    }
    return v;
  }

  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() { return text_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw ParseError(ParseError::Kind::syntax, at, msg);
  }

  const std::string& text_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

HomogeneousPolynomial parse_polynomial(const std::string& text, int n) {
  if (n < 1) throw PolynomialError("block dimension must be >= 1");
  return Scanner(text, n).run();
}

}  // namespace oscdecay
