#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biharm/ambient.hpp"
#include "biharm/chart_jet.hpp"
#include "biharm/error.hpp"
#include "biharm/jet.hpp"

namespace biharm::chartlang {

struct SourceLoc {
  int line = 0;
  int column = 0;
};

/// Every parse or evaluation failure carries the offending source location.
class ChartError : public Error {
 public:
  enum class Kind { lexer, parse, arity, unknown_symbol, domain, semantic };

  ChartError(Kind kind, SourceLoc loc, const std::string& message);

  Kind kind() const { return kind_; }
  SourceLoc location() const { return loc_; }
  const std::string& message() const { return message_; }

 private:
  Kind kind_;
  SourceLoc loc_;
  std::string message_;
};

std::string_view to_string(ChartError::Kind kind);

enum class Func { sin, cos, sinh, cosh, tanh, exp, log, sqrt };

std::string_view to_string(Func f);

struct Expr {
  enum class Kind { number, param, pi, neg, add, sub, mul, div, pow, call };

  Kind kind = Kind::number;
  double number = 0.0;   // number
  int param = 0;         // param: zero-based, u1 -> 0
  int exponent = 0;      // pow
  Func func = Func::sin; // call
  std::vector<Expr> args;
  SourceLoc loc;

  /// Structural equality; source locations are ignored.
  friend bool operator==(const Expr& a, const Expr& b);
};

/// Precedence-aware printing; parse(print(e)) reproduces e structurally.
std::string print(const Expr& e);

struct ChartProgram {
  int param_count = 0;
  SpaceForm space = SpaceForm::flat(1, 0);
  std::vector<Expr> components;  // x1..xN in coordinate order
};

/// Parses a chart file:
///
///   # comment
///   params m=2 space=H3_1(1)
///   x1 = ...
///   ...
///
/// One binding per ambient coordinate, in any order, each exactly once.
ChartProgram parse_chart(std::string_view source);

/// Parses a single expression over parameters u1..u<param_count>.
Expr parse_expression(std::string_view source, int param_count);

/// Plain real evaluation.
double eval(const Expr& e, std::span<const double> u);

/// Second-order jet evaluation; derivatives are exact up to rounding.
Jet2<double> eval_jet(const Expr& e, std::span<const Jet2<double>> u);

ChartJet eval_jet2(const ChartProgram& prog, const Eigen::VectorXd& u);

}  // namespace biharm::chartlang
