#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace biharm {

using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& q);

/// Multivariate polynomial with exact rational coefficients in a fixed number
/// of variables. Terms with zero coefficient are never stored, so structural
/// equality is polynomial identity.
class Poly {
 public:
  using Exponents = std::vector<int>;

  explicit Poly(int variables = 1) : nvars_(variables) {}

  static Poly constant(int variables, const Rational& c);
  /// The monomial coeff * x_0^e_0 * ... * x_{n-1}^e_{n-1}.
  static Poly monomial(int variables, const Rational& coeff, Exponents exponents);
  static Poly variable(int variables, int which);

  int variables() const { return nvars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Exponents& e) const;

  Poly derivative(int which) const;
  Rational evaluate(const std::vector<Rational>& point) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void add_term(const Exponents& e, const Rational& c);

  int nvars_;
  std::map<Exponents, Rational> terms_;
};

}  // namespace biharm
