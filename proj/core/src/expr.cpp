#include "sympf/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "sympf/scalar.hpp"

namespace sympf {

namespace {

enum class Tok { kNumber, kIdent, kPlus, kMinus, kStar, kSlash, kCaret, kLParen, kRParen, kEnd };

struct Token {
  Tok kind;
  std::size_t offset;
  double number = 0;
  std::string text;
};

const char* token_name(Tok t) {
  switch (t) {
    case Tok::kNumber: return "number";
    case Tok::kIdent: return "identifier";
    case Tok::kPlus: return "'+'";
    case Tok::kMinus: return "'-'";
    case Tok::kStar: return "'*'";
    case Tok::kSlash: return "'/'";
    case Tok::kCaret: return "'^'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    default: return "end of input";
  }
}

[[noreturn]] void syntax_error(std::size_t offset, const std::string& expected) {
  throw Error(Errc::kParse, "syntax error at offset " + std::to_string(offset) + ": expected " + expected);
}

bool is_known_function(std::string_view name) {
  return name == "sin" || name == "cos" || name == "exp" || name == "sqrt" || name == "abs";
}

bool is_variable_name(std::string_view name) {
  if (name == "t") return true;
  if (name.size() < 2 || (name[0] != 'x' && name[0] != 'y')) return false;
  if (name[1] == '0') return false;  // indices start at 1
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    current_.offset = pos_;
    current_.text.clear();
    if (pos_ >= src_.size()) {
      current_.kind = Tok::kEnd;
      return;
    }
    const char ch = src_[pos_];
    switch (ch) {
      case '+': current_.kind = Tok::kPlus; ++pos_; return;
      case '-': current_.kind = Tok::kMinus; ++pos_; return;
      case '*': current_.kind = Tok::kStar; ++pos_; return;
      case '/': current_.kind = Tok::kSlash; ++pos_; return;
      case '^': current_.kind = Tok::kCaret; ++pos_; return;
      case '(': current_.kind = Tok::kLParen; ++pos_; return;
      case ')': current_.kind = Tok::kRParen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
          syntax_error(pos_, "digits after the decimal point");
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t mark = pos_++;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          pos_ = mark;  // 'e' belongs to a following identifier, not this literal
        } else {
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
      }
      current_.kind = Tok::kNumber;
      current_.text.assign(src_.substr(start, pos_ - start));
      auto res = std::from_chars(current_.text.data(), current_.text.data() + current_.text.size(), current_.number);
      if (res.ec != std::errc{}) syntax_error(start, "a representable number");
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      current_.kind = Tok::kIdent;
      current_.text.assign(src_.substr(start, pos_ - start));
      return;
    }
    syntax_error(pos_, "a number, identifier, operator, or parenthesis");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_{Tok::kEnd, 0, 0, {}};
};

ExprPtr make(Expr e) { return std::make_shared<Expr>(std::move(e)); }

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  ExprPtr parse() {
    ExprPtr e = sum();
    if (lex_.peek().kind != Tok::kEnd)
      syntax_error(lex_.peek().offset, "an operator or end of input");
    return e;
  }

 private:
  ExprPtr sum() {
    ExprPtr lhs = product();
    while (lex_.peek().kind == Tok::kPlus || lex_.peek().kind == Tok::kMinus) {
      Token op = lex_.take();
      ExprPtr rhs = product();
      lhs = make({op.kind == Tok::kPlus ? Expr::Kind::kAdd : Expr::Kind::kSub, 0, "", 0, lhs, rhs, op.offset});
    }
    return lhs;
  }

  ExprPtr product() {
    ExprPtr lhs = unary();
    while (lex_.peek().kind == Tok::kStar || lex_.peek().kind == Tok::kSlash) {
      Token op = lex_.take();
      ExprPtr rhs = unary();
      lhs = make({op.kind == Tok::kStar ? Expr::Kind::kMul : Expr::Kind::kDiv, 0, "", 0, lhs, rhs, op.offset});
    }
    return lhs;
  }

  ExprPtr unary() {
    if (lex_.peek().kind == Tok::kMinus) {
      Token op = lex_.take();
      ExprPtr operand = unary();
      return make({Expr::Kind::kNegate, 0, "", 0, operand, nullptr, op.offset});
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (lex_.peek().kind == Tok::kCaret) {
      Token op = lex_.take();
      long expo = exponent_literal();
      return make({Expr::Kind::kPow, 0, "", expo, base, nullptr, op.offset});
    }
    return base;
  }

  // Right-associative tower of integer literals, folded to one integer.
  long exponent_literal() {
    if (lex_.peek().kind != Tok::kNumber) syntax_error(lex_.peek().offset, "an integer exponent");
    Token lit = lex_.take();
    double v = lit.number;
    if (v != std::floor(v) || std::abs(v) > 1e9) syntax_error(lit.offset, "an integer exponent");
    long base = static_cast<long>(v);
    if (lex_.peek().kind != Tok::kCaret) return base;
    lex_.take();
    long expo = exponent_literal();
    if (expo < 0) syntax_error(lit.offset, "a nonnegative exponent in an exponent tower");
    long result = 1;
    for (long i = 0; i < expo; ++i) {
      if (std::abs(result) > 1000000 || std::abs(base) > 1000000)
        syntax_error(lit.offset, "a smaller exponent tower");
      result *= base;
    }
    return result;
  }

  ExprPtr primary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::kNumber: {
        Token lit = lex_.take();
        return make({Expr::Kind::kNumber, lit.number, "", 0, nullptr, nullptr, lit.offset});
      }
      case Tok::kIdent: {
        Token id = lex_.take();
        if (lex_.peek().kind == Tok::kLParen) {
          if (!is_known_function(id.text))
            throw Error(Errc::kParse, "unknown function '" + id.text + "' at offset " + std::to_string(id.offset));
          lex_.take();
          ExprPtr arg = sum();
          expect(Tok::kRParen);
          return make({Expr::Kind::kCall, 0, id.text, 0, arg, nullptr, id.offset});
        }
        if (!is_variable_name(id.text))
          throw Error(Errc::kParse, "unknown identifier '" + id.text + "' at offset " + std::to_string(id.offset) +
                                        " (variables are x<k>, y<k>, t)");
        return make({Expr::Kind::kVariable, 0, id.text, 0, nullptr, nullptr, id.offset});
      }
      case Tok::kLParen: {
        lex_.take();
        ExprPtr inner = sum();
        expect(Tok::kRParen);
        return inner;
      }
      default:
        syntax_error(t.offset, "a number, variable, function call, or '('");
    }
  }

  void expect(Tok kind) {
    if (lex_.peek().kind != kind) syntax_error(lex_.peek().offset, token_name(kind));
    lex_.take();
  }

  Lexer lex_;
};

[[noreturn]] void eval_error(const Expr& e, const std::string& what) {
  throw Error(Errc::kEval, what + " (at offset " + std::to_string(e.offset) + ")");
}

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub: return 1;
    case Expr::Kind::kMul:
    case Expr::Kind::kDiv: return 2;
    case Expr::Kind::kNegate: return 3;
    case Expr::Kind::kPow: return 4;
    default: return 5;
  }
}

void print(const Expr& e, std::string& out) {
  auto child = [&](const Expr& c, bool needs_paren) {
    if (needs_paren) out += '(';
    print(c, out);
    if (needs_paren) out += ')';
  };
  switch (e.kind) {
    case Expr::Kind::kNumber: out += double_to_string(e.number); return;
    case Expr::Kind::kVariable: out += e.name; return;
    case Expr::Kind::kNegate:
      out += '-';
      child(*e.lhs, precedence(e.lhs->kind) < precedence(Expr::Kind::kNegate));
      return;
    case Expr::Kind::kPow:
      // Negations, binaries, and nested powers must be parenthesized so the
      // base re-binds the same way: (-x)^2, (x^2)^3.
      child(*e.lhs, precedence(e.lhs->kind) <= precedence(Expr::Kind::kPow));
      out += '^';
      out += std::to_string(e.exponent);
      return;
    case Expr::Kind::kCall:
      out += e.name;
      out += '(';
      print(*e.lhs, out);
      out += ')';
      return;
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub:
    case Expr::Kind::kMul:
    case Expr::Kind::kDiv: {
      const int prec = precedence(e.kind);
      child(*e.lhs, precedence(e.lhs->kind) < prec);
      switch (e.kind) {
        case Expr::Kind::kAdd: out += " + "; break;
        case Expr::Kind::kSub: out += " - "; break;
        case Expr::Kind::kMul: out += "*"; break;
        default: out += "/"; break;
      }
      // Right operand needs parens at equal precedence: a - (b + c), a/(b*c).
      child(*e.rhs, precedence(e.rhs->kind) <= prec);
      return;
    }
  }
}

void collect_free(const Expr& e, std::set<std::string>& out) {
  switch (e.kind) {
    case Expr::Kind::kVariable: out.insert(e.name); return;
    case Expr::Kind::kNumber: return;
    default:
      if (e.lhs) collect_free(*e.lhs, out);
      if (e.rhs) collect_free(*e.rhs, out);
  }
}

}  // namespace

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::kNumber: return a.number == b.number;
    case Expr::Kind::kVariable: return a.name == b.name;
    case Expr::Kind::kCall:
      return a.name == b.name && expr_equal(*a.lhs, *b.lhs);
    case Expr::Kind::kPow:
      return a.exponent == b.exponent && expr_equal(*a.lhs, *b.lhs);
    case Expr::Kind::kNegate: return expr_equal(*a.lhs, *b.lhs);
    default: return expr_equal(*a.lhs, *b.lhs) && expr_equal(*a.rhs, *b.rhs);
  }
}

ExprPtr parse_expression(std::string_view source) { return Parser(source).parse(); }

double evaluate(const Expr& e, const Env& env) {
  switch (e.kind) {
    case Expr::Kind::kNumber: return e.number;
    case Expr::Kind::kVariable: {
      auto it = env.find(e.name);
      if (it == env.end()) eval_error(e, "unbound variable '" + e.name + "'");
      return it->second;
    }
    case Expr::Kind::kNegate: return -evaluate(*e.lhs, env);
    case Expr::Kind::kAdd: return evaluate(*e.lhs, env) + evaluate(*e.rhs, env);
    case Expr::Kind::kSub: return evaluate(*e.lhs, env) - evaluate(*e.rhs, env);
    case Expr::Kind::kMul: return evaluate(*e.lhs, env) * evaluate(*e.rhs, env);
    case Expr::Kind::kDiv: {
      const double denom = evaluate(*e.rhs, env);
      if (denom == 0) eval_error(e, "division by zero");
      return evaluate(*e.lhs, env) / denom;
    }
    case Expr::Kind::kPow: {
      const double base = evaluate(*e.lhs, env);
      long expo = e.exponent;
      if (expo < 0 && base == 0) eval_error(e, "zero raised to a negative exponent");
      double result = 1;
      for (long i = 0; i < std::labs(expo); ++i) result *= base;
      return expo < 0 ? 1.0 / result : result;
    }
    case Expr::Kind::kCall: {
      const double arg = evaluate(*e.lhs, env);
      if (e.name == "sin") return std::sin(arg);
      if (e.name == "cos") return std::cos(arg);
      if (e.name == "exp") return std::exp(arg);
      if (e.name == "abs") return std::abs(arg);
      if (arg < 0) eval_error(e, "square root of a negative value");
      return std::sqrt(arg);
    }
  }
  eval_error(e, "malformed expression node");
}

std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> out;
  collect_free(e, out);
  return out;
}

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace sympf
