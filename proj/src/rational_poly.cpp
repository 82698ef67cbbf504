#include "biharm/rational_poly.hpp"

#include "biharm/error.hpp"

namespace biharm {

std::string to_string(const Rational& q) {
  const auto num = boost::multiprecision::numerator(q);
  const auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Poly Poly::constant(int variables, const Rational& c) {
  return monomial(variables, c, Exponents(static_cast<std::size_t>(variables), 0));
}

Poly Poly::monomial(int variables, const Rational& coeff, Exponents exponents) {
  if (static_cast<int>(exponents.size()) != variables) throw ContractError("Poly::monomial: exponent arity");
  Poly p(variables);
  p.add_term(exponents, coeff);
  return p;
}

Poly Poly::variable(int variables, int which) {
  Exponents e(static_cast<std::size_t>(variables), 0);
  e[static_cast<std::size_t>(which)] = 1;
  return monomial(variables, Rational(1), e);
}

Rational Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::derivative(int which) const {
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    const int k = e[static_cast<std::size_t>(which)];
    if (k == 0) continue;
    Exponents d = e;
    d[static_cast<std::size_t>(which)] = k - 1;
    out.add_term(d, c * k);
  }
  return out;
}

Rational Poly::evaluate(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != nvars_) throw ContractError("Poly::evaluate: point arity");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (int v = 0; v < nvars_; ++v) {
      for (int k = 0; k < e[static_cast<std::size_t>(v)]; ++k) term *= point[static_cast<std::size_t>(v)];
    }
    sum += term;
  }
  return sum;
}

Poly& Poly::operator+=(const Poly& other) {
  if (other.nvars_ != nvars_) throw ContractError("Poly: variable count mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.nvars_ != nvars_) throw ContractError("Poly: variable count mismatch");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_) throw ContractError("Poly: variable count mismatch");
  Poly out(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Poly::Exponents e = ea;
      for (std::size_t v = 0; v < e.size(); ++v) e[v] += eb[v];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string out;
  // Highest total degree first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    Rational mag = c < 0 ? Rational(-c) : c;
    std::string body;
    for (int v = 0; v < nvars_; ++v) {
      const int k = e[static_cast<std::size_t>(v)];
      if (k == 0) continue;
      if (!body.empty()) body += "*";
      body += names[static_cast<std::size_t>(v)];
      if (k > 1) body += "^" + std::to_string(k);
    }
    if (body.empty() || mag != 1) {
      out += biharm::to_string(mag);
      if (!body.empty()) out += "*";
    }
    out += body;
  }
  return out;
}

}  // namespace biharm
