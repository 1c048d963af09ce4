#include "et/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "et/errors.hpp"

namespace et::expr {

bool operator==(const ExprNode& a, const ExprNode& b) {
  return a.kind == b.kind && a.number == b.number && a.name == b.name && a.fn == b.fn &&
         a.children == b.children;
}

namespace {

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  TokKind kind = TokKind::End;
  std::string_view text;
  std::size_t offset = 0;
  double number = 0.0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const auto single = [&](TokKind k) {
    out.push_back({k, text.substr(i, 1), i, 0.0});
    ++i;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      double value = 0.0;
      const char* begin = text.data() + i;
      const char* end = text.data() + text.size();
      const auto res = std::from_chars(begin, end, value);
      if (res.ec != std::errc{})
        throw ParseError("malformed number", i);
      const std::size_t len = static_cast<std::size_t>(res.ptr - begin);
      out.push_back({TokKind::Number, text.substr(i, len), i, value});
      i += len;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      out.push_back({TokKind::Ident, text.substr(i, j - i), i, 0.0});
      i = j;
      continue;
    }
    switch (c) {
      case '+': single(TokKind::Plus); break;
      case '-': single(TokKind::Minus); break;
      case '*': single(TokKind::Star); break;
      case '/': single(TokKind::Slash); break;
      case '^': single(TokKind::Caret); break;
      case '(': single(TokKind::LParen); break;
      case ')': single(TokKind::RParen); break;
      case ',': single(TokKind::Comma); break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  out.push_back({TokKind::End, text.substr(text.size(), 0), text.size(), 0.0});
  return out;
}

int binding_power(TokKind k) {
  switch (k) {
    case TokKind::Plus:
    case TokKind::Minus: return 10;
    case TokKind::Star:
    case TokKind::Slash: return 20;
    case TokKind::Caret: return 40;
    default: return -1;
  }
}

constexpr int kUnaryBindingPower = 30;

ExprNode make_node(NodeKind kind, ExprNode lhs, ExprNode rhs) {
  ExprNode n;
  n.kind = kind;
  n.children.push_back(std::move(lhs));
  n.children.push_back(std::move(rhs));
  return n;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string_view variable)
      : tokens_(std::move(tokens)), variable_(variable) {}

  Parsed run() {
    Parsed result;
    result.root = parse_expression(0);
    if (peek().kind != TokKind::End)
      throw ParseError("unexpected trailing input", peek().offset);
    result.variable = std::string(variable_);
    result.parameters.assign(parameters_.begin(), parameters_.end());
    return result;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  ExprNode parse_expression(int min_bp) {
    ExprNode lhs = parse_prefix();
    for (;;) {
      const Token& t = peek();
      const int bp = binding_power(t.kind);
      if (bp < min_bp || bp < 0) break;
      advance();
      // '^' is right-associative: its right operand re-admits the same level.
      ExprNode rhs = parse_expression(t.kind == TokKind::Caret ? bp : bp + 1);
      switch (t.kind) {
        case TokKind::Plus: lhs = make_node(NodeKind::Add, std::move(lhs), std::move(rhs)); break;
        case TokKind::Minus: lhs = make_node(NodeKind::Sub, std::move(lhs), std::move(rhs)); break;
        case TokKind::Star: lhs = make_node(NodeKind::Mul, std::move(lhs), std::move(rhs)); break;
        case TokKind::Slash: lhs = make_node(NodeKind::Div, std::move(lhs), std::move(rhs)); break;
        case TokKind::Caret: lhs = make_node(NodeKind::Pow, std::move(lhs), std::move(rhs)); break;
        default: break;
      }
    }
    return lhs;
  }

  ExprNode parse_prefix() {
    const Token t = advance();
    switch (t.kind) {
      case TokKind::Number: {
        ExprNode n;
        n.kind = NodeKind::Number;
        n.number = t.number;
        return n;
      }
      case TokKind::Minus: {
        ExprNode n;
        n.kind = NodeKind::Negate;
        n.children.push_back(parse_expression(kUnaryBindingPower));
        return n;
      }
      case TokKind::LParen: {
        ExprNode inner = parse_expression(0);
        if (peek().kind != TokKind::RParen)
          throw ParseError("expected ')'", peek().offset);
        advance();
        return inner;
      }
      case TokKind::Ident:
        if (peek().kind == TokKind::LParen) return parse_call(t);
        if (t.text == variable_) {
          ExprNode n;
          n.kind = NodeKind::Variable;
          n.name = std::string(t.text);
          return n;
        } else {
          ExprNode n;
          n.kind = NodeKind::Parameter;
          n.name = std::string(t.text);
          parameters_.insert(n.name);
          return n;
        }
      default:
        throw ParseError("expected a number, a name, or '('", t.offset);
    }
  }

  ExprNode parse_call(const Token& name) {
    advance();  // '('
    std::vector<ExprNode> args;
    if (peek().kind != TokKind::RParen) {
      args.push_back(parse_expression(0));
      while (peek().kind == TokKind::Comma) {
        advance();
        args.push_back(parse_expression(0));
      }
    }
    if (peek().kind != TokKind::RParen)
      throw ParseError("expected ')' after function arguments", peek().offset);
    advance();

    const auto require_arity = [&](std::size_t n) {
      if (args.size() != n)
        throw ParseError("function '" + std::string(name.text) + "' takes " + std::to_string(n) +
                             (n == 1 ? " argument" : " arguments"),
                         name.offset);
    };

    if (name.text == "pow") {
      require_arity(2);
      return make_node(NodeKind::Pow, std::move(args[0]), std::move(args[1]));
    }
    Builtin fn;
    if (name.text == "exp") fn = Builtin::Exp;
    else if (name.text == "log") fn = Builtin::Log;
    else if (name.text == "sqrt") fn = Builtin::Sqrt;
    else if (name.text == "abs") fn = Builtin::Abs;
    else if (name.text == "sin") fn = Builtin::Sin;
    else if (name.text == "cos") fn = Builtin::Cos;
    else throw ParseError("unknown function '" + std::string(name.text) + "'", name.offset);
    require_arity(1);
    ExprNode n;
    n.kind = NodeKind::Call;
    n.fn = fn;
    n.children.push_back(std::move(args[0]));
    return n;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::string_view variable_;
  std::set<std::string> parameters_;
};

bool is_blank(std::string_view text) {
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

const char* builtin_name(Builtin fn) {
  switch (fn) {
    case Builtin::Exp: return "exp";
    case Builtin::Log: return "log";
    case Builtin::Sqrt: return "sqrt";
    case Builtin::Abs: return "abs";
    case Builtin::Sin: return "sin";
    case Builtin::Cos: return "cos";
  }
  return "?";
}

int node_binding_power(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 10;
    case NodeKind::Mul:
    case NodeKind::Div: return 20;
    case NodeKind::Negate: return kUnaryBindingPower;
    case NodeKind::Pow: return 40;
    default: return 100;  // atoms and calls never need parentheses
  }
}

void print_node(const ExprNode& n, int context_bp, std::string& out) {
  const int bp = node_binding_power(n);
  const bool parens = bp < context_bp;
  if (parens) out += '(';
  switch (n.kind) {
    case NodeKind::Number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      out += buf;
      break;
    }
    case NodeKind::Variable: out += n.name; break;
    case NodeKind::Parameter: out += n.name; break;
    case NodeKind::Negate:
      out += '-';
      print_node(n.children[0], bp + 1, out);
      break;
    case NodeKind::Add:
      print_node(n.children[0], bp, out);
      out += '+';
      print_node(n.children[1], bp + 1, out);
      break;
    case NodeKind::Sub:
      print_node(n.children[0], bp, out);
      out += '-';
      print_node(n.children[1], bp + 1, out);
      break;
    case NodeKind::Mul:
      print_node(n.children[0], bp, out);
      out += '*';
      print_node(n.children[1], bp + 1, out);
      break;
    case NodeKind::Div:
      print_node(n.children[0], bp, out);
      out += '/';
      print_node(n.children[1], bp + 1, out);
      break;
    case NodeKind::Pow:
      print_node(n.children[0], bp + 1, out);
      out += '^';
      print_node(n.children[1], bp, out);
      break;
    case NodeKind::Call:
      out += builtin_name(n.fn);
      out += '(';
      print_node(n.children[0], 0, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

Dual eval_pow(const ExprNode& node, Dual base, Dual exponent) {
  if (exponent.deriv == 0.0) {
    const double e = exponent.value;
    if (base.value < 0.0 && e != std::floor(e))
      throw EvalDomainError("negative base raised to a non-integer power", to_string(node));
    if (base.value == 0.0 && e < 0.0)
      throw EvalDomainError("zero base raised to a negative power", to_string(node));
    const double v = std::pow(base.value, e);
    double d = 0.0;
    if (e != 0.0 && base.deriv != 0.0) {
      d = e * std::pow(base.value, e - 1.0) * base.deriv;
      if (!std::isfinite(d))
        throw EvalDomainError("derivative of power is not finite", to_string(node));
    }
    return {v, d};
  }
  if (base.value <= 0.0)
    throw EvalDomainError("variable exponent requires a positive base", to_string(node));
  const double lv = std::log(base.value);
  const double v = std::exp(exponent.value * lv);
  return {v, v * (exponent.deriv * lv + exponent.value * base.deriv / base.value)};
}

}  // namespace

Parsed parse(std::string_view text, std::string_view variable) {
  if (is_blank(text)) throw ParseError("empty expression", 0);
  if (variable.empty()) throw std::invalid_argument("variable name must not be empty");
  Parser parser(tokenize(text), variable);
  return parser.run();
}

std::string to_string(const ExprNode& node) {
  std::string out;
  print_node(node, 0, out);
  return out;
}

std::string to_string(const Parsed& parsed) {
  return to_string(parsed.root);
}

Dual eval(const ExprNode& node, Dual at, const ParamMap& params) {
  switch (node.kind) {
    case NodeKind::Number: return {node.number, 0.0};
    case NodeKind::Variable: return at;
    case NodeKind::Parameter: {
      const auto it = params.find(node.name);
      if (it == params.end())
        throw std::invalid_argument("unbound parameter '" + node.name + "'");
      return {it->second, 0.0};
    }
    case NodeKind::Negate: {
      const Dual c = eval(node.children[0], at, params);
      return {-c.value, -c.deriv};
    }
    case NodeKind::Add: {
      const Dual a = eval(node.children[0], at, params);
      const Dual b = eval(node.children[1], at, params);
      return {a.value + b.value, a.deriv + b.deriv};
    }
    case NodeKind::Sub: {
      const Dual a = eval(node.children[0], at, params);
      const Dual b = eval(node.children[1], at, params);
      return {a.value - b.value, a.deriv - b.deriv};
    }
    case NodeKind::Mul: {
      const Dual a = eval(node.children[0], at, params);
      const Dual b = eval(node.children[1], at, params);
      return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
    }
    case NodeKind::Div: {
      const Dual a = eval(node.children[0], at, params);
      const Dual b = eval(node.children[1], at, params);
      if (b.value == 0.0) throw EvalDomainError("division by zero", to_string(node));
      return {a.value / b.value, (a.deriv * b.value - a.value * b.deriv) / (b.value * b.value)};
    }
    case NodeKind::Pow: {
      const Dual a = eval(node.children[0], at, params);
      const Dual b = eval(node.children[1], at, params);
      return eval_pow(node, a, b);
    }
    case NodeKind::Call: {
      const Dual c = eval(node.children[0], at, params);
      switch (node.fn) {
        case Builtin::Exp: {
          const double e = std::exp(c.value);
          return {e, e * c.deriv};
        }
        case Builtin::Log:
          if (c.value <= 0.0)
            throw EvalDomainError("logarithm of a non-positive value", to_string(node));
          return {std::log(c.value), c.deriv / c.value};
        case Builtin::Sqrt: {
          if (c.value < 0.0)
            throw EvalDomainError("square root of a negative value", to_string(node));
          if (c.value == 0.0) {
            if (c.deriv == 0.0) return {0.0, 0.0};
            throw EvalDomainError("derivative of sqrt at zero is not finite", to_string(node));
          }
          const double s = std::sqrt(c.value);
          return {s, c.deriv / (2.0 * s)};
        }
        case Builtin::Abs:
          // abs'(0) is defined as 0; the solver only evaluates at x, p > 0.
          return {std::fabs(c.value), c.value > 0.0 ? c.deriv : (c.value < 0.0 ? -c.deriv : 0.0)};
        case Builtin::Sin: return {std::sin(c.value), std::cos(c.value) * c.deriv};
        case Builtin::Cos: return {std::cos(c.value), -std::sin(c.value) * c.deriv};
      }
      break;
    }
  }
  throw std::logic_error("unreachable expression node");
}

Dual eval(const Parsed& parsed, double at, const ParamMap& params) {
  return eval(parsed.root, Dual{at, 1.0}, params);
}

std::pair<double, double> eval_with_derivative(const Parsed& parsed, double at,
                                               const ParamMap& params) {
  const Dual d = eval(parsed, at, params);
  return {d.value, d.deriv};
}

}  // namespace et::expr
