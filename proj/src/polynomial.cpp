#include "oscdecay/polynomial.hpp"

#include <cmath>
#include <sstream>

namespace oscdecay {

HomogeneousPolynomial::HomogeneousPolynomial(int n, int d, TermMap terms)
    : n_(n), d_(d), terms_(std::move(terms)) {
  if (n_ < 1) throw PolynomialError("block dimension must be >= 1");
  if (d_ < 0) throw PolynomialError("degree must be >= 0");
  for (auto it = terms_.begin(); it != terms_.end();) {
    const auto& key = it->first;
    if (key.first.size() != n_ || key.second.size() != n_)
      throw PolynomialError("multi-index length does not match block dimension");
    if (key.first.order() + key.second.order() != d_)
      throw PolynomialError("term degree differs from polynomial degree");
    for (int e : key.first.exps)
      if (e < 0) throw PolynomialError("negative exponent");
    for (int e : key.second.exps)
      if (e < 0) throw PolynomialError("negative exponent");
    if (it->second.get_den() == 0) throw PolynomialError("coefficient with zero denominator");
    it->second.canonicalize();  // raw mpq_class(p, q) inputs may be unreduced
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
  flat_.reserve(terms_.size());
  for (const auto& [key, coeff] : terms_)
    flat_.push_back(FlatTerm{key.first.exps, key.second.exps, to_double(coeff)});
}

double HomogeneousPolynomial::evaluate(std::span<const double> x,
                                       std::span<const double> y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_)
    throw PolynomialError("evaluate: dimension mismatch");
  double sum = 0.0;
  for (const auto& t : flat_) {
    double m = t.c;
    for (int k = 0; k < n_; ++k) {
      if (t.a[k]) m *= ipow(x[k], t.a[k]);
      if (t.b[k]) m *= ipow(y[k], t.b[k]);
    }
    sum += m;
  }
  return sum;
}

HomogeneousPolynomial HomogeneousPolynomial::derivative_x(int i) const {
  TermMap out;
  for (const auto& [key, coeff] : terms_) {
    int e = key.first[i];
    if (e == 0) continue;
    TermKey k = key;
    k.first.exps[i] = e - 1;
    out[k] += coeff * e;
  }
  return HomogeneousPolynomial(n_, d_ > 0 ? d_ - 1 : 0, std::move(out));
}

HomogeneousPolynomial HomogeneousPolynomial::derivative_y(int j) const {
  TermMap out;
  for (const auto& [key, coeff] : terms_) {
    int e = key.second[j];
    if (e == 0) continue;
    TermKey k = key;
    k.second.exps[j] = e - 1;
    out[k] += coeff * e;
  }
  return HomogeneousPolynomial(n_, d_ > 0 ? d_ - 1 : 0, std::move(out));
}

double HomogeneousPolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& t : flat_) m = std::max(m, std::fabs(t.c));
  return m;
}

double HomogeneousPolynomial::coefficient_l1() const {
  double s = 0.0;
  for (const auto& t : flat_) s += std::fabs(t.c);
  return s;
}

namespace {

void append_monomial(std::ostringstream& os, char block, const MultiIndex& mi,
                     bool& first_factor) {
  for (int k = 0; k < mi.size(); ++k) {
    if (mi[k] == 0) continue;
    if (!first_factor) os << "*";
    first_factor = false;
    os << block << (k + 1);
    if (mi[k] > 1) os << "^" << mi[k];
  }
}

}  // namespace

std::string HomogeneousPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (const auto& [key, coeff] : terms_) {
    Rat c = coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first_term) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first_term = false;
    bool first_factor = true;
    if (c != 1) {
      os << rat_to_string(c);
      first_factor = false;
    }
    append_monomial(os, 'x', key.first, first_factor);
    append_monomial(os, 'y', key.second, first_factor);
    if (first_factor) os << "1";  // constant term (degree 0)
  }
  return os.str();
}

HessianMatrix mixed_hessian(const HomogeneousPolynomial& S) {
  if (S.degree() < 2) throw PolynomialError("mixed_hessian requires degree >= 2");
  const int n = S.block_dim();
  HessianMatrix H;
  H.n = n;
  H.entry_degree = S.degree() - 2;
  H.entries.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    HomogeneousPolynomial dx = S.derivative_x(i);
    for (int j = 0; j < n; ++j) H.entries.push_back(dx.derivative_y(j));
  }
  return H;
}

double hs_norm_value(const HessianMatrix& H, std::span<const double> x,
                     std::span<const double> y) {
  double s = 0.0;
  for (const auto& e : H.entries) {
    double v = e.evaluate(x, y);
    s += v * v;
  }
  return std::sqrt(s);
}

OdVerdict validate_O_d(const HomogeneousPolynomial& S) {
  OdVerdict v;
  for (const auto& [key, coeff] : S.terms()) {
    (void)coeff;
    if (key.first.order() == 0 || key.second.order() == 0) v.offending.push_back(key);
  }
  v.passes = v.offending.empty();
  return v;
}

}  // namespace oscdecay
