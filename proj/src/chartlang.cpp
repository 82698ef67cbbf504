#include "biharm/chartlang.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <regex>
#include <string>

#include "biharm/format.hpp"

namespace biharm::chartlang {

namespace {

std::string located(ChartError::Kind kind, SourceLoc loc, const std::string& message) {
  return std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + std::string(to_string(kind)) +
         " error: " + message;
}

constexpr std::array<std::pair<std::string_view, Func>, 8> kFunctions{{
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"sinh", Func::sinh},
    {"cosh", Func::cosh},
    {"tanh", Func::tanh},
    {"exp", Func::exp},
    {"log", Func::log},
    {"sqrt", Func::sqrt},
}};

std::optional<Func> lookup_function(std::string_view name) {
  for (const auto& [n, f] : kFunctions) {
    if (n == name) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- lexer

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, equals, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  double number = 0.0;
  SourceLoc loc;
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::number: return "number";
    case Tok::ident: return "identifier";
    case Tok::plus: return "'+'";
    case Tok::minus: return "'-'";
    case Tok::star: return "'*'";
    case Tok::slash: return "'/'";
    case Tok::caret: return "'^'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::equals: return "'='";
    case Tok::end: return "end of input";
  }
  return "token";
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

std::vector<Token> tokenize(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const SourceLoc loc{line_no, static_cast<int>(i) + 1};
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (is_digit(c) || (c == '.' && i + 1 < line.size() && is_digit(line[i + 1]))) {
      std::size_t j = i;
      while (j < line.size() && is_digit(line[j])) ++j;
      if (j < line.size() && line[j] == '.') {
        ++j;
        while (j < line.size() && is_digit(line[j])) ++j;
      }
      if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
        if (k < line.size() && is_digit(line[k])) {
          while (k < line.size() && is_digit(line[k])) ++k;
          j = k;
        } else {
          throw ChartError(ChartError::Kind::lexer, {line_no, static_cast<int>(k) + 1},
                           "malformed exponent in number literal");
        }
      }
      Token t{Tok::number, std::string(line.substr(i, j - i)), 0.0, loc};
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
      if (ec != std::errc() || ptr != t.text.data() + t.text.size() || !std::isfinite(t.number)) {
        throw ChartError(ChartError::Kind::lexer, loc, "number literal '" + t.text + "' is not a finite double");
      }
      out.push_back(std::move(t));
      i = j;
      continue;
    }
    if (is_alpha(c)) {
      std::size_t j = i;
      while (j < line.size() && (is_alpha(line[j]) || is_digit(line[j]))) ++j;
      out.push_back(Token{Tok::ident, std::string(line.substr(i, j - i)), 0.0, loc});
      i = j;
      continue;
    }
    Tok kind;
    switch (c) {
      case '+': kind = Tok::plus; break;
      case '-': kind = Tok::minus; break;
      case '*': kind = Tok::star; break;
      case '/': kind = Tok::slash; break;
      case '^': kind = Tok::caret; break;
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case ',': kind = Tok::comma; break;
      case '=': kind = Tok::equals; break;
      default: {
        const auto byte = static_cast<unsigned char>(c);
        std::string shown = (byte >= 0x20 && byte < 0x7f) ? std::string(1, c) : "\\x" + std::to_string(byte);
        throw ChartError(ChartError::Kind::lexer, loc, "unexpected character '" + shown + "'");
      }
    }
    out.push_back(Token{kind, std::string(1, c), 0.0, loc});
    ++i;
  }
  out.push_back(Token{Tok::end, "", 0.0, {line_no, static_cast<int>(line.size()) + 1}});
  return out;
}

// ---------------------------------------------------------------- parser

class Parser {
 public:
  Parser(std::vector<Token> tokens, int param_count) : toks_(std::move(tokens)), m_(param_count) {}

  Expr expression() { return additive(); }

  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  void expect(Tok kind) {
    if (peek().kind != kind) unexpected(std::string("expected ") + std::string(describe(kind)));
    take();
  }

  [[noreturn]] void unexpected(const std::string& what) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ChartError(ChartError::Kind::parse, t.loc, what + ", got " + got);
  }

 private:
  static Expr binary(Expr::Kind kind, Expr lhs, Expr rhs, SourceLoc loc) {
    Expr e;
    e.kind = kind;
    e.loc = loc;
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
  }

  Expr additive() {
    Expr lhs = multiplicative();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      Token op = take();
      Expr rhs = multiplicative();
      lhs = binary(op.kind == Tok::plus ? Expr::Kind::add : Expr::Kind::sub, std::move(lhs), std::move(rhs), op.loc);
    }
    return lhs;
  }

  Expr multiplicative() {
    Expr lhs = unary();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      Token op = take();
      Expr rhs = unary();
      lhs = binary(op.kind == Tok::star ? Expr::Kind::mul : Expr::Kind::div, std::move(lhs), std::move(rhs), op.loc);
    }
    return lhs;
  }

  Expr unary() {
    if (peek().kind == Tok::minus) {
      Token op = take();
      Expr e;
      e.kind = Expr::Kind::neg;
      e.loc = op.loc;
      e.args.push_back(unary());
      return e;
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (peek().kind != Tok::caret) return base;
    Token op = take();
    const SourceLoc exp_loc = peek().loc;
    Expr exponent = unary();  // right-associative; validated below
    int sign = 1;
    const Expr* lit = &exponent;
    if (lit->kind == Expr::Kind::neg) {
      sign = -1;
      lit = &lit->args[0];
    }
    if (lit->kind != Expr::Kind::number || lit->number != std::floor(lit->number) || std::abs(lit->number) > 1024) {
      throw ChartError(ChartError::Kind::parse, exp_loc, "exponent of '^' must be an integer literal");
    }
    Expr e;
    e.kind = Expr::Kind::pow;
    e.loc = op.loc;
    e.exponent = sign * static_cast<int>(lit->number);
    e.args.push_back(std::move(base));
    return e;
  }

  Expr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number: {
        Token n = take();
        Expr e;
        e.kind = Expr::Kind::number;
        e.number = n.number;
        e.loc = n.loc;
        return e;
      }
      case Tok::lparen: {
        take();
        Expr inner = additive();
        expect(Tok::rparen);
        return inner;
      }
      case Tok::ident: return identifier();
      default: unexpected("expected an operand");
    }
  }

  Expr identifier() {
    Token id = take();
    if (auto f = lookup_function(id.text)) {
      if (peek().kind != Tok::lparen) {
        throw ChartError(ChartError::Kind::arity, id.loc, "function '" + id.text + "' takes exactly 1 argument");
      }
      take();
      std::vector<Expr> args;
      if (peek().kind != Tok::rparen) {
        args.push_back(additive());
        while (peek().kind == Tok::comma) {
          take();
          args.push_back(additive());
        }
      }
      expect(Tok::rparen);
      if (args.size() != 1) {
        throw ChartError(ChartError::Kind::arity, id.loc,
                         "function '" + id.text + "' takes exactly 1 argument, got " + std::to_string(args.size()));
      }
      Expr e;
      e.kind = Expr::Kind::call;
      e.func = *f;
      e.loc = id.loc;
      e.args = std::move(args);
      return e;
    }
    if (peek().kind == Tok::lparen) {
      throw ChartError(ChartError::Kind::unknown_symbol, id.loc, "unknown function '" + id.text + "'");
    }
    Expr e;
    e.loc = id.loc;
    if (id.text == "pi") {
      e.kind = Expr::Kind::pi;
      return e;
    }
    static const std::regex param_re("u([1-9][0-9]{0,5})");
    std::smatch match;
    if (std::regex_match(id.text, match, param_re)) {
      const int k = std::stoi(match[1].str());
      if (k <= m_) {
        e.kind = Expr::Kind::param;
        e.param = k - 1;
        return e;
      }
    }
    throw ChartError(ChartError::Kind::unknown_symbol, id.loc,
                     "unknown symbol '" + id.text + "' (parameters are u1..u" + std::to_string(m_) + ")");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int m_;
};

// ---------------------------------------------------------------- printer

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub: return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div: return 2;
    case Expr::Kind::neg: return 3;
    case Expr::Kind::pow: return 4;
    default: return 5;
  }
}

void print_into(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool parens, std::string& out) {
  if (parens) out += '(';
  print_into(e, out);
  if (parens) out += ')';
}

void print_into(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::number: out += format_shortest(e.number); return;
    case Expr::Kind::param: out += "u" + std::to_string(e.param + 1); return;
    case Expr::Kind::pi: out += "pi"; return;
    case Expr::Kind::call:
      out += to_string(e.func);
      out += '(';
      print_into(e.args[0], out);
      out += ')';
      return;
    case Expr::Kind::neg:
      out += '-';
      print_wrapped(e.args[0], precedence(e.args[0]) <= 3, out);
      return;
    case Expr::Kind::pow:
      print_wrapped(e.args[0], precedence(e.args[0]) <= 4, out);
      out += '^';
      out += std::to_string(e.exponent);
      return;
    default: {
      const int p = precedence(e);
      const char op = e.kind == Expr::Kind::add   ? '+'
                      : e.kind == Expr::Kind::sub ? '-'
                      : e.kind == Expr::Kind::mul ? '*'
                                                  : '/';
      print_wrapped(e.args[0], precedence(e.args[0]) < p, out);
      out += op;
      print_wrapped(e.args[1], precedence(e.args[1]) <= p, out);
      return;
    }
  }
}

// ---------------------------------------------------------------- evaluator

double value_of(double v) { return v; }
double value_of(const Jet2<double>& j) { return j.value; }

template <typename T>
struct Evaluator {
  std::span<const T> u;
  int m;
  bool jets;

  T constant(double v) const {
    if constexpr (std::is_same_v<T, double>) {
      return v;
    } else {
      return T::constant(v, m);
    }
  }

  [[noreturn]] static void domain(const Expr& e, const std::string& what) {
    throw ChartError(ChartError::Kind::domain, e.loc, what);
  }

  T checked(const Expr& e, T v) const {
    if (!std::isfinite(value_of(v))) domain(e, "non-finite value");
    return v;
  }

  T operator()(const Expr& e) const {
    using std::cos;
    using std::cosh;
    using std::exp;
    using std::log;
    using std::sin;
    using std::sinh;
    using std::sqrt;
    using std::tanh;
    switch (e.kind) {
      case Expr::Kind::number: return constant(e.number);
      case Expr::Kind::pi: return constant(M_PI);
      case Expr::Kind::param: return u[static_cast<std::size_t>(e.param)];
      case Expr::Kind::neg: return -(*this)(e.args[0]);
      case Expr::Kind::add: return checked(e, (*this)(e.args[0]) + (*this)(e.args[1]));
      case Expr::Kind::sub: return checked(e, (*this)(e.args[0]) - (*this)(e.args[1]));
      case Expr::Kind::mul: return checked(e, (*this)(e.args[0]) * (*this)(e.args[1]));
      case Expr::Kind::div: {
        T num = (*this)(e.args[0]);
        T den = (*this)(e.args[1]);
        if (value_of(den) == 0.0) domain(e, "division by zero");
        return checked(e, num / den);
      }
      case Expr::Kind::pow: {
        T base = (*this)(e.args[0]);
        if (e.exponent < 0 && value_of(base) == 0.0) domain(e, "zero raised to a negative power");
        if constexpr (std::is_same_v<T, double>) {
          return checked(e, std::pow(base, e.exponent));
        } else {
          return checked(e, pow(base, e.exponent));
        }
      }
      case Expr::Kind::call: {
        T a = (*this)(e.args[0]);
        const double v = value_of(a);
        switch (e.func) {
          case Func::sin: return sin(a);
          case Func::cos: return cos(a);
          case Func::sinh: return checked(e, sinh(a));
          case Func::cosh: return checked(e, cosh(a));
          case Func::tanh: return tanh(a);
          case Func::exp: return checked(e, exp(a));
          case Func::log:
            if (!(v > 0.0)) domain(e, "log of non-positive value " + format_shortest(v));
            return log(a);
          case Func::sqrt:
            if (jets ? !(v > 0.0) : !(v >= 0.0)) {
              domain(e, "sqrt of " + std::string(jets ? "non-positive" : "negative") + " value " +
                            format_shortest(v));
            }
            return sqrt(a);
        }
      }
    }
    domain(e, "malformed expression");
  }
};

}  // namespace

ChartError::ChartError(Kind kind, SourceLoc loc, const std::string& message)
    : Error(located(kind, loc, message)), kind_(kind), loc_(loc), message_(message) {}

std::string_view to_string(ChartError::Kind kind) {
  switch (kind) {
    case ChartError::Kind::lexer: return "lexer";
    case ChartError::Kind::parse: return "parse";
    case ChartError::Kind::arity: return "arity";
    case ChartError::Kind::unknown_symbol: return "unknown-symbol";
    case ChartError::Kind::domain: return "domain";
    case ChartError::Kind::semantic: return "semantic";
  }
  return "unknown";
}

std::string_view to_string(Func f) {
  for (const auto& [n, fn] : kFunctions) {
    if (fn == f) return n;
  }
  return "?";
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::number:
      if (a.number != b.number) return false;
      break;
    case Expr::Kind::param:
      if (a.param != b.param) return false;
      break;
    case Expr::Kind::pow:
      if (a.exponent != b.exponent) return false;
      break;
    case Expr::Kind::call:
      if (a.func != b.func) return false;
      break;
    default: break;
  }
  return a.args == b.args;
}

std::string print(const Expr& e) {
  std::string out;
  print_into(e, out);
  return out;
}

Expr parse_expression(std::string_view source, int param_count) {
  Parser p(tokenize(source, 1), param_count);
  Expr e = p.expression();
  if (p.peek().kind != Tok::end) p.unexpected("expected end of expression");
  return e;
}

ChartProgram parse_chart(std::string_view source) {
  ChartProgram prog;
  bool have_header = false;
  std::vector<bool> bound;
  std::vector<SourceLoc> binding_locs;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= source.size()) {
    std::size_t end = source.find('\n', start);
    if (end == std::string_view::npos) end = source.size();
    std::string_view line = source.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (end == source.size()) break;
      continue;
    }

    if (!have_header) {
      const auto first = line.find_first_not_of(" \t\r");
      const SourceLoc loc{line_no, static_cast<int>(first) + 1};
      if (line.substr(first, 6) != "params") {
        throw ChartError(ChartError::Kind::semantic, loc, "expected header 'params m=<int> space=<spaceform>'");
      }
      std::string rest(line.substr(first + 6));
      static const std::regex kv(R"(\s*([A-Za-z_]+)\s*=\s*([^\s]+))");
      std::optional<int> m;
      std::optional<SpaceForm> space;
      auto it = std::sregex_iterator(rest.begin(), rest.end(), kv);
      std::size_t consumed = 0;
      for (; it != std::sregex_iterator(); ++it) {
        const auto& match = *it;
        const SourceLoc kloc{line_no, static_cast<int>(first + 6 + match.position(1)) + 1};
        if (static_cast<std::size_t>(match.position(0)) != consumed) {
          throw ChartError(ChartError::Kind::parse, {line_no, static_cast<int>(first + 6 + consumed) + 1},
                           "malformed header");
        }
        consumed = match.position(0) + match.length(0);
        const std::string key = match[1].str();
        const std::string val = match[2].str();
        if (key == "m") {
          int v = 0;
          auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
          if (ec != std::errc() || ptr != val.data() + val.size() || v < 1) {
            throw ChartError(ChartError::Kind::semantic, kloc, "m must be a positive integer");
          }
          m = v;
        } else if (key == "space") {
          try {
            space = SpaceForm::parse(val);
          } catch (const Error& err) {
            throw ChartError(ChartError::Kind::semantic, kloc, err.what());
          }
        } else {
          throw ChartError(ChartError::Kind::semantic, kloc, "unknown header key '" + key + "'");
        }
      }
      if (rest.find_first_not_of(" \t\r", consumed) != std::string::npos) {
        throw ChartError(ChartError::Kind::parse, {line_no, static_cast<int>(first + 6 + consumed) + 1},
                         "malformed header");
      }
      if (!m || !space) {
        throw ChartError(ChartError::Kind::semantic, loc, "header needs both m=<int> and space=<spaceform>");
      }
      prog.param_count = *m;
      prog.space = *space;
      const int n = space->ambient_dimension();
      prog.components.assign(n, Expr{});
      bound.assign(n, false);
      binding_locs.assign(n, SourceLoc{});
      have_header = true;
      continue;
    }

    Parser p(tokenize(line, line_no), prog.param_count);
    const Token target = p.take();
    static const std::regex coord_re("x([1-9][0-9]{0,5})");
    std::smatch match;
    if (target.kind != Tok::ident || !std::regex_match(target.text, match, coord_re)) {
      throw ChartError(ChartError::Kind::parse, target.loc, "expected a binding 'x<k> = <expr>'");
    }
    const int k = std::stoi(match[1].str());
    const int n = static_cast<int>(prog.components.size());
    if (k > n) {
      throw ChartError(ChartError::Kind::unknown_symbol, target.loc,
                       "coordinate '" + target.text + "' out of range for " + prog.space.name() + " (x1..x" +
                           std::to_string(n) + ")");
    }
    if (bound[k - 1]) {
      throw ChartError(ChartError::Kind::semantic, target.loc,
                       "coordinate '" + target.text + "' bound twice (first at line " +
                           std::to_string(binding_locs[k - 1].line) + ")");
    }
    p.expect(Tok::equals);
    Expr e = p.expression();
    if (p.peek().kind != Tok::end) p.unexpected("expected end of line");
    prog.components[k - 1] = std::move(e);
    bound[k - 1] = true;
    binding_locs[k - 1] = target.loc;
    if (end == source.size()) break;
  }
  if (!have_header) {
    throw ChartError(ChartError::Kind::semantic, {line_no, 1}, "missing header 'params m=<int> space=<spaceform>'");
  }
  for (std::size_t k = 0; k < bound.size(); ++k) {
    if (!bound[k]) {
      throw ChartError(ChartError::Kind::semantic, {line_no + 1, 1},
                       "missing binding for x" + std::to_string(k + 1));
    }
  }
  return prog;
}

double eval(const Expr& e, std::span<const double> u) {
  return Evaluator<double>{u, static_cast<int>(u.size()), false}(e);
}

Jet2<double> eval_jet(const Expr& e, std::span<const Jet2<double>> u) {
  const int m = u.empty() ? 0 : u[0].params();
  return Evaluator<Jet2<double>>{u, m, true}(e);
}

ChartJet eval_jet2(const ChartProgram& prog, const Eigen::VectorXd& u) {
  const int m = prog.param_count;
  if (u.size() != m) {
    throw ContractError("eval_jet2: parameter point has " + std::to_string(u.size()) + " components, chart expects " +
                        std::to_string(m));
  }
  std::vector<Jet2<double>> seeds;
  seeds.reserve(m);
  for (int i = 0; i < m; ++i) seeds.push_back(Jet2<double>::variable(u(i), i, m));
  const int n = static_cast<int>(prog.components.size());
  ChartJet jet(n, m);
  for (int a = 0; a < n; ++a) {
    Jet2<double> x = eval_jet(prog.components[a], seeds);
    jet.point(a) = x.value;
    jet.jacobian.row(a) = x.grad.transpose();
    jet.hessians[a] = x.hess;
  }
  return jet;
}

}  // namespace biharm::chartlang
