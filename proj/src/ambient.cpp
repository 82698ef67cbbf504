#include "biharm/ambient.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <regex>

#include "biharm/format.hpp"

namespace biharm {

std::string format_shortest(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

std::string format_17g(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Signature::Signature(int positive, int negative) : positive_count(positive), negative_count(negative) {
  if (positive < 0 || negative < 0 || positive + negative < 1) {
    throw ContractError("Signature: counts must be non-negative with positive dimension");
  }
}

Eigen::VectorXd Signature::diagonal() const {
  Eigen::VectorXd d(dimension());
  d.head(positive_count).setOnes();
  d.tail(negative_count).setConstant(-1.0);
  return d;
}

std::string_view to_string(CausalCharacter c) {
  switch (c) {
    case CausalCharacter::space_like: return "space_like";
    case CausalCharacter::time_like: return "time_like";
    case CausalCharacter::null: return "null";
  }
  return "null";
}

CausalCharacter causal_character(const AmbientVector& v, const Signature& sig, double tol) {
  const double q = inner_product(v, v, sig);
  if (q > tol) return CausalCharacter::space_like;
  if (q < -tol) return CausalCharacter::time_like;
  return CausalCharacter::null;
}

SpaceForm::SpaceForm(Kind kind, int dim, int index, double radius)
    : kind_(kind), dim_(dim), index_(index), radius_(radius) {
  if (dim < 1) throw ContractError("SpaceForm: dimension must be >= 1");
  if (index < 0 || index > dim) throw ContractError("SpaceForm: index must lie in [0, dim]");
  if (kind != Kind::flat && !(radius > 0.0 && std::isfinite(radius))) {
    throw ContractError("SpaceForm: radius must be positive and finite");
  }
}

SpaceForm SpaceForm::pseudo_sphere(int dim, int index, double radius) {
  return SpaceForm(Kind::pseudo_sphere, dim, index, radius);
}

SpaceForm SpaceForm::pseudo_hyperbolic(int dim, int index, double radius) {
  return SpaceForm(Kind::pseudo_hyperbolic, dim, index, radius);
}

SpaceForm SpaceForm::flat(int dim, int index) { return SpaceForm(Kind::flat, dim, index, 0.0); }

SpaceForm SpaceForm::parse(std::string_view text) {
  static const std::regex pattern(R"(^\s*([HSR])(\d+)(?:_(\d+))?(?:\(\s*([^()\s]+)\s*\))?\s*$)");
  const std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) {
    throw ContractError("malformed space form '" + s + "' (expected kind dim[_index](radius), e.g. H3_1(1))");
  }
  const char kind = m[1].str()[0];
  const int dim = std::stoi(m[2].str());
  const int index = m[3].matched ? std::stoi(m[3].str()) : 0;
  if (kind == 'R') {
    if (m[4].matched) throw ContractError("malformed space form '" + s + "': flat space takes no radius");
    return flat(dim, index);
  }
  if (!m[4].matched) throw ContractError("malformed space form '" + s + "': missing radius");
  const std::string rtext = m[4].str();
  double radius = 0.0;
  auto [ptr, ec] = std::from_chars(rtext.data(), rtext.data() + rtext.size(), radius);
  if (ec != std::errc() || ptr != rtext.data() + rtext.size()) {
    throw ContractError("malformed space form '" + s + "': bad radius '" + rtext + "'");
  }
  return kind == 'H' ? pseudo_hyperbolic(dim, index, radius) : pseudo_sphere(dim, index, radius);
}

double SpaceForm::curvature() const {
  switch (kind_) {
    case Kind::pseudo_sphere: return 1.0 / (radius_ * radius_);
    case Kind::pseudo_hyperbolic: return -1.0 / (radius_ * radius_);
    case Kind::flat: return 0.0;
  }
  return 0.0;
}

int SpaceForm::quadric_sign() const {
  switch (kind_) {
    case Kind::pseudo_sphere: return 1;
    case Kind::pseudo_hyperbolic: return -1;
    case Kind::flat: return 0;
  }
  return 0;
}

Signature SpaceForm::ambient_signature() const {
  switch (kind_) {
    case Kind::pseudo_sphere: return Signature(dim_ + 1 - index_, index_);
    case Kind::pseudo_hyperbolic: return Signature(dim_ - index_, index_ + 1);
    case Kind::flat: return Signature(dim_ - index_, index_);
  }
  return Signature(dim_, 0);
}

std::string SpaceForm::name() const {
  std::string out;
  out += kind_ == Kind::pseudo_sphere ? 'S' : kind_ == Kind::pseudo_hyperbolic ? 'H' : 'R';
  out += std::to_string(dim_);
  if (index_ > 0) out += "_" + std::to_string(index_);
  if (kind_ != Kind::flat) out += "(" + format_shortest(radius_) + ")";
  return out;
}

double quadric_residual(const AmbientVector& x, const SpaceForm& sf) {
  if (sf.is_flat()) throw ContractError("quadric_residual: flat space form has no quadric");
  const double r2 = sf.radius() * sf.radius();
  return inner_product(x, x, sf.ambient_signature()) - sf.quadric_sign() * r2;
}

}  // namespace biharm
