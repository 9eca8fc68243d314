#include "oscdecay/rational.hpp"

#include <cctype>

namespace oscdecay {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
  std::string s = text;
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = (s[0] == '-');
    s.erase(0, 1);
  }
  if (s.empty()) throw RatParseError("empty rational literal");

  Rat value;
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw RatParseError("malformed fraction: '" + text + "'");
    value = Rat(mpz_class(num), mpz_class(den));
    if (value.get_den() == 0) throw RatParseError("zero denominator: '" + text + "'");
    value.canonicalize();
  } else {
    auto dot = s.find('.');
    if (dot == std::string::npos) {
      if (!all_digits(s)) throw RatParseError("malformed integer: '" + text + "'");
      value = Rat(mpz_class(s));
    } else {
      std::string ip = s.substr(0, dot);
      std::string fp = s.substr(dot + 1);
      if (ip.empty() && fp.empty()) throw RatParseError("malformed decimal: '" + text + "'");
      if (!ip.empty() && !all_digits(ip)) throw RatParseError("malformed decimal: '" + text + "'");
      if (!fp.empty() && !all_digits(fp)) throw RatParseError("malformed decimal: '" + text + "'");
      mpz_class digits(ip.empty() ? std::string("0") : ip);
      mpz_class scale = 1;
      for (char c : fp) {
        digits = digits * 10 + (c - '0');
        scale *= 10;
      }
      value = Rat(digits, scale);
      value.canonicalize();
    }
  }
  return neg ? Rat(-value) : value;
}

bool looks_like_rational(const std::string& text) {
  try {
    rat_from_string(text);
    return true;
  } catch (const RatParseError&) {
    return false;
  }
}

}  // namespace oscdecay
