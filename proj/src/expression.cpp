#include "zetauniv/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>

#include "zetauniv/errors.hpp"

namespace zetauniv {

struct Expression::Node {
  enum class Kind {
    Literal,
    Variable,
    Pi,
    Negate,
    Add,
    Subtract,
    Multiply,
    Divide,
    Power,
    Exp,
    Log,
    Sin,
    Cos,
    ZetaShift,
  };

  Kind kind;
  Complex value = 0.0;  // Literal
  TallShift shift{};    // ZetaShift
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using Node = Expression::Node;
using Kind = Node::Kind;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr literal(Complex v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Literal;
  n->value = v;
  return n;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    skip_space();
    if (pos_ == text_.size()) fail("empty expression");
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make(Kind::Add, lhs, term());
      else if (accept('-'))
        lhs = make(Kind::Subtract, lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = make(Kind::Multiply, lhs, unary());
      else if (accept('/'))
        lhs = make(Kind::Divide, lhs, unary());
      else
        return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::Negate, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Kind::Power, base, unary());
    return base;
  }

  std::string_view number_token() {
    std::size_t start = pos_;
    auto digit = [&](std::size_t i) {
      return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
    };
    while (digit(pos_)) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (digit(pos_)) ++pos_;
    }
    if (pos_ == start || (pos_ == start + 1 && text_[start] == '.')) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (!digit(pos_)) {
        pos_ = mark;
        fail("malformed exponent");
      }
      while (digit(pos_)) ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  double to_double(std::string_view token, std::size_t at) {
    double v = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size())
      throw ParseError("malformed number", at);
    return v;
  }

  // Splits a decimal literal into exact integer and fractional parts.
  TallShift to_shift(std::string_view token, std::size_t at) {
    bool plain = token.find_first_of("eE") == std::string_view::npos;
    if (!plain) return TallShift::from_double(to_double(token, at));
    std::size_t dot = token.find('.');
    std::string_view whole = token.substr(0, dot);
    std::int64_t base = 0;
    if (!whole.empty()) {
      auto res = std::from_chars(whole.data(), whole.data() + whole.size(), base);
      if (res.ec != std::errc()) throw ParseError("shift out of range", at);
    }
    double offset = 0.0;
    if (dot != std::string_view::npos && dot + 1 < token.size()) {
      std::string fractional = "0" + std::string(token.substr(dot));
      offset = to_double(fractional, at);
    }
    return TallShift{base, offset};
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const std::size_t at = pos_;
    char c = text_[pos_];

    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = to_double(number_token(), at);
      if (pos_ < text_.size() && text_[pos_] == 'i' &&
          !(pos_ + 1 < text_.size() &&
            (std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])) ||
             text_[pos_ + 1] == '_'))) {
        ++pos_;
        return literal(Complex(0.0, v));
      }
      return literal(Complex(v, 0.0));
    }

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(at, pos_ - at);
      if (name == "s") return make(Kind::Variable);
      if (name == "pi") return make(Kind::Pi);
      if (name == "i") return literal(Complex(0.0, 1.0));

      Kind kind;
      if (name == "exp")
        kind = Kind::Exp;
      else if (name == "log")
        kind = Kind::Log;
      else if (name == "sin")
        kind = Kind::Sin;
      else if (name == "cos")
        kind = Kind::Cos;
      else if (name == "zeta_shift")
        kind = Kind::ZetaShift;
      else
        throw ParseError("unknown identifier '" + std::string(name) + "'", at);

      expect('(');
      if (kind == Kind::ZetaShift) {
        skip_space();
        std::size_t arg_at = pos_;
        if (pos_ >= text_.size() ||
            !(std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '.'))
          fail("zeta_shift expects a non-negative number literal");
        auto node = std::make_shared<Node>();
        node->kind = Kind::ZetaShift;
        node->shift = to_shift(number_token(), arg_at);
        expect(')');
        return node;
      }
      NodePtr arg = expr();
      expect(')');
      return make(kind, arg);
    }

    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Complex integer_power(Complex base, long long n) {
  bool invert = n < 0;
  unsigned long long e = invert ? -static_cast<unsigned long long>(n) : n;
  Complex result = 1.0;
  while (e) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return invert ? 1.0 / result : result;
}

Complex eval(const Node& n, ComplexPoint s, const EvalConfig& cfg) {
  switch (n.kind) {
    case Kind::Literal: return n.value;
    case Kind::Variable: return s;
    case Kind::Pi: return kPi;
    case Kind::Negate: return -eval(*n.lhs, s, cfg);
    case Kind::Add: return eval(*n.lhs, s, cfg) + eval(*n.rhs, s, cfg);
    case Kind::Subtract: return eval(*n.lhs, s, cfg) - eval(*n.rhs, s, cfg);
    case Kind::Multiply: return eval(*n.lhs, s, cfg) * eval(*n.rhs, s, cfg);
    case Kind::Divide: return eval(*n.lhs, s, cfg) / eval(*n.rhs, s, cfg);
    case Kind::Power: {
      Complex base = eval(*n.lhs, s, cfg);
      Complex e = eval(*n.rhs, s, cfg);
      if (e.imag() == 0.0 && e.real() == std::nearbyint(e.real()) &&
          std::abs(e.real()) <= 1024.0)
        return integer_power(base, static_cast<long long>(e.real()));
      return std::pow(base, e);
    }
    case Kind::Exp: return std::exp(eval(*n.lhs, s, cfg));
    case Kind::Log: return std::log(eval(*n.lhs, s, cfg));
    case Kind::Sin: return std::sin(eval(*n.lhs, s, cfg));
    case Kind::Cos: return std::cos(eval(*n.lhs, s, cfg));
    case Kind::ZetaShift: return zeta_shifted(s, n.shift, cfg);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::string format_literal(Complex v) {
  if (v.imag() == 0.0) return format_double(v.real());
  if (v.real() == 0.0) return format_double(v.imag()) + "i";
  return "(" + format_double(v.real()) + "+" + format_double(v.imag()) + "i)";
}

std::string format_shift(TallShift t) {
  std::string out = std::to_string(t.base);
  if (t.offset != 0.0) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, t.offset,
                             std::chars_format::fixed);
    std::string frac(buf, res.ptr);  // "0.xxx"
    out += frac.substr(1);
  }
  return out;
}

std::string unparse(const Node& n) {
  auto bin = [&](const char* op) {
    return "(" + unparse(*n.lhs) + op + unparse(*n.rhs) + ")";
  };
  auto call = [&](const char* name) {
    return std::string(name) + "(" + unparse(*n.lhs) + ")";
  };
  switch (n.kind) {
    case Kind::Literal: {
      std::string lit = format_literal(n.value);
      return lit[0] == '-' ? "(" + lit + ")" : lit;
    }
    case Kind::Variable: return "s";
    case Kind::Pi: return "pi";
    case Kind::Negate: return "(-" + unparse(*n.lhs) + ")";
    case Kind::Add: return bin("+");
    case Kind::Subtract: return bin("-");
    case Kind::Multiply: return bin("*");
    case Kind::Divide: return bin("/");
    case Kind::Power: return bin("^");
    case Kind::Exp: return call("exp");
    case Kind::Log: return call("log");
    case Kind::Sin: return call("sin");
    case Kind::Cos: return call("cos");
    case Kind::ZetaShift: return "zeta_shift(" + format_shift(n.shift) + ")";
  }
  return {};
}

void collect_shifts(const Node& n, std::vector<TallShift>& out) {
  if (n.kind == Kind::ZetaShift) out.push_back(n.shift);
  if (n.lhs) collect_shifts(*n.lhs, out);
  if (n.rhs) collect_shifts(*n.rhs, out);
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  return Expression(Parser(text).parse());
}

Complex Expression::evaluate(ComplexPoint s, const EvalConfig& cfg) const {
  return eval(*root_, s, cfg);
}

std::string Expression::to_string() const { return unparse(*root_); }

std::vector<TallShift> Expression::zeta_shifts() const {
  std::vector<TallShift> out;
  collect_shifts(*root_, out);
  return out;
}

}  // namespace zetauniv
