#pragma once

#include <cctype>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "surflab/errors.hpp"
#include "surflab/wirtinger.hpp"

namespace surflab {

// Expressions in the variables z and zbar. Grammar (whitespace-insensitive):
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' signed-integer)*
//   atom   := number | 'i' | 'z' | 'zbar' | fn '(' expr ')' | '(' expr ')'
//   fn     := exp log sin cos sinh cosh tanh sqrt conj re im abs2
//
// '^' binds tighter than unary minus and accepts integer exponents only;
// general powers are written exp(w*log(z)).

enum class NodeKind {
  Number, ImagUnit, VarZ, VarZbar,
  Neg, Conj, Re, Im, Abs2,
  Add, Sub, Mul, Div, Pow,
  Call,
};

struct AstNode {
  NodeKind kind;
  double number = 0.0;           // Number
  int exponent = 0;              // Pow
  Elementary fn = Elementary::Exp;  // Call
  std::size_t offset = 0;        // byte offset into the source text
  std::unique_ptr<AstNode> lhs, rhs;
};

class Ast {
 public:
  Ast() = default;
  explicit Ast(std::shared_ptr<const AstNode> root) : root_(std::move(root)) {}
  const AstNode& root() const {
    if (!root_) throw SurfError(Errc::EvalError, "empty expression");
    return *root_;
  }
  bool empty() const { return root_ == nullptr; }

 private:
  std::shared_ptr<const AstNode> root_;
};

namespace detail {

struct Token {
  enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } kind;
  std::size_t offset;
  double number = 0.0;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }
  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    tok_.offset = pos_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::End;
      return;
    }
    const char c = src_[pos_];
    switch (c) {
      case '+': tok_.kind = Token::Plus; ++pos_; return;
      case '-': tok_.kind = Token::Minus; ++pos_; return;
      case '*': tok_.kind = Token::Star; ++pos_; return;
      case '/': tok_.kind = Token::Slash; ++pos_; return;
      case '^': tok_.kind = Token::Caret; ++pos_; return;
      case '(': tok_.kind = Token::LParen; ++pos_; return;
      case ')': tok_.kind = Token::RParen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
        ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t mark = pos_ + 1;
        if (mark < src_.size() && (src_[mark] == '+' || src_[mark] == '-')) ++mark;
        if (mark < src_.size() && std::isdigit(static_cast<unsigned char>(src_[mark]))) {
          pos_ = mark;
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
      }
      tok_.kind = Token::Number;
      tok_.text = src_.substr(start, pos_ - start);
      try {
        tok_.number = std::stod(tok_.text);
      } catch (const std::exception&) {
        throw SurfError(Errc::SyntaxError, "malformed number '" + tok_.text + "'", start);
      }
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Ident;
      tok_.text = src_.substr(start, pos_ - start);
      return;
    }
    throw SurfError(Errc::SyntaxError, std::string("unexpected character '") + c + "'", pos_);
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  Token tok_;
};

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src), lex_(src) {}

  std::unique_ptr<AstNode> parse() {
    auto e = parse_expr();
    if (lex_.peek().kind != Token::End)
      fail("end of input, '+', '-', '*', '/', or '^'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) {
    throw SurfError(Errc::SyntaxError, "expected " + expected, lex_.peek().offset);
  }

  std::unique_ptr<AstNode> make(NodeKind k, std::size_t off) {
    auto n = std::make_unique<AstNode>();
    n->kind = k;
    n->offset = off;
    return n;
  }

  std::unique_ptr<AstNode> parse_expr() {
    auto lhs = parse_term();
    while (lex_.peek().kind == Token::Plus || lex_.peek().kind == Token::Minus) {
      Token op = lex_.take();
      auto n = make(op.kind == Token::Plus ? NodeKind::Add : NodeKind::Sub, op.offset);
      n->lhs = std::move(lhs);
      n->rhs = parse_term();
      lhs = std::move(n);
    }
    return lhs;
  }

  std::unique_ptr<AstNode> parse_term() {
    auto lhs = parse_unary();
    while (lex_.peek().kind == Token::Star || lex_.peek().kind == Token::Slash) {
      Token op = lex_.take();
      auto n = make(op.kind == Token::Star ? NodeKind::Mul : NodeKind::Div, op.offset);
      n->lhs = std::move(lhs);
      n->rhs = parse_unary();
      lhs = std::move(n);
    }
    return lhs;
  }

  std::unique_ptr<AstNode> parse_unary() {
    if (lex_.peek().kind == Token::Minus) {
      Token op = lex_.take();
      auto n = make(NodeKind::Neg, op.offset);
      n->lhs = parse_unary();
      return n;
    }
    return parse_power();
  }

  std::unique_ptr<AstNode> parse_power() {
    auto base = parse_atom();
    while (lex_.peek().kind == Token::Caret) {
      Token op = lex_.take();
      int sign = 1;
      if (lex_.peek().kind == Token::Minus) {
        lex_.take();
        sign = -1;
      }
      if (lex_.peek().kind != Token::Number) fail("integer exponent");
      Token e = lex_.take();
      if (e.text.find('.') != std::string::npos || e.text.find('e') != std::string::npos ||
          e.text.find('E') != std::string::npos)
        throw SurfError(Errc::SyntaxError, "exponent must be an integer", e.offset);
      auto n = make(NodeKind::Pow, op.offset);
      n->exponent = sign * static_cast<int>(e.number);
      n->lhs = std::move(base);
      base = std::move(n);
    }
    return base;
  }

  std::unique_ptr<AstNode> parse_atom() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Token::Number: {
        Token n = lex_.take();
        auto node = make(NodeKind::Number, n.offset);
        node->number = n.number;
        return node;
      }
      case Token::LParen: {
        lex_.take();
        auto inner = parse_expr();
        if (lex_.peek().kind != Token::RParen) fail("')'");
        lex_.take();
        return inner;
      }
      case Token::Ident: {
        Token id = lex_.take();
        if (id.text == "i") return make(NodeKind::ImagUnit, id.offset);
        if (id.text == "z") return make(NodeKind::VarZ, id.offset);
        if (id.text == "zbar") return make(NodeKind::VarZbar, id.offset);
        NodeKind uk;
        Elementary fn = Elementary::Exp;
        bool is_call = true;
        if (id.text == "conj") uk = NodeKind::Conj;
        else if (id.text == "re") uk = NodeKind::Re;
        else if (id.text == "im") uk = NodeKind::Im;
        else if (id.text == "abs2") uk = NodeKind::Abs2;
        else {
          uk = NodeKind::Call;
          if (id.text == "exp") fn = Elementary::Exp;
          else if (id.text == "log") fn = Elementary::Log;
          else if (id.text == "sin") fn = Elementary::Sin;
          else if (id.text == "cos") fn = Elementary::Cos;
          else if (id.text == "sinh") fn = Elementary::Sinh;
          else if (id.text == "cosh") fn = Elementary::Cosh;
          else if (id.text == "tanh") fn = Elementary::Tanh;
          else if (id.text == "sqrt") fn = Elementary::Sqrt;
          else is_call = false;
        }
        if (!is_call)
          throw SurfError(Errc::SyntaxError, "unknown identifier '" + id.text +
                          "'; expected z, zbar, i, or a function name", id.offset);
        if (lex_.peek().kind != Token::LParen) fail("'(' after function name");
        lex_.take();
        auto arg = parse_expr();
        if (lex_.peek().kind != Token::RParen) fail("')'");
        lex_.take();
        auto node = make(uk, id.offset);
        node->fn = fn;
        node->lhs = std::move(arg);
        return node;
      }
      default:
        fail("number, 'i', 'z', 'zbar', function call, or '('");
    }
  }

  const std::string& src_;
  Lexer lex_;
};

inline const char* fn_name(Elementary fn) {
  switch (fn) {
    case Elementary::Exp: return "exp";
    case Elementary::Log: return "log";
    case Elementary::Sin: return "sin";
    case Elementary::Cos: return "cos";
    case Elementary::Sinh: return "sinh";
    case Elementary::Cosh: return "cosh";
    case Elementary::Tanh: return "tanh";
    case Elementary::Sqrt: return "sqrt";
  }
  return "?";
}

// Precedence levels used by the printer: higher binds tighter.
inline int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
  }
}

inline void print_node(const AstNode& n, std::string& out) {
  auto child = [&](const AstNode& c, bool needs_paren) {
    if (needs_paren) out += '(';
    print_node(c, out);
    if (needs_paren) out += ')';
  };
  switch (n.kind) {
    case NodeKind::Number: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      out += buf;
      return;
    }
    case NodeKind::ImagUnit: out += 'i'; return;
    case NodeKind::VarZ: out += 'z'; return;
    case NodeKind::VarZbar: out += "zbar"; return;
    case NodeKind::Neg:
      out += '-';
      child(*n.lhs, precedence(n.lhs->kind) < precedence(NodeKind::Neg));
      return;
    case NodeKind::Conj:
    case NodeKind::Re:
    case NodeKind::Im:
    case NodeKind::Abs2: {
      out += (n.kind == NodeKind::Conj ? "conj" : n.kind == NodeKind::Re ? "re"
              : n.kind == NodeKind::Im ? "im" : "abs2");
      out += '(';
      print_node(*n.lhs, out);
      out += ')';
      return;
    }
    case NodeKind::Call:
      out += fn_name(n.fn);
      out += '(';
      print_node(*n.lhs, out);
      out += ')';
      return;
    case NodeKind::Pow: {
      child(*n.lhs, precedence(n.lhs->kind) <= precedence(NodeKind::Pow) &&
                        n.lhs->kind != NodeKind::Pow);
      out += '^';
      char buf[32];
      std::snprintf(buf, sizeof buf, "%d", n.exponent);
      out += buf;
      return;
    }
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div: {
      const int p = precedence(n.kind);
      child(*n.lhs, precedence(n.lhs->kind) < p);
      out += (n.kind == NodeKind::Add ? '+' : n.kind == NodeKind::Sub ? '-'
              : n.kind == NodeKind::Mul ? '*' : '/');
      // left associativity: equal precedence on the right needs parens
      child(*n.rhs, precedence(n.rhs->kind) <= p);
      return;
    }
  }
}

inline Jet eval_node(const AstNode& n, Complex z, int order) {
  try {
    switch (n.kind) {
      case NodeKind::Number: return Jet::constant(Complex(n.number, 0.0), order);
      case NodeKind::ImagUnit: return Jet::constant(Complex(0.0, 1.0), order);
      case NodeKind::VarZ: return Jet::var_z(z, order);
      case NodeKind::VarZbar: return Jet::var_zbar(z, order);
      case NodeKind::Neg: return -eval_node(*n.lhs, z, order);
      case NodeKind::Conj: return conj(eval_node(*n.lhs, z, order));
      case NodeKind::Re: return re(eval_node(*n.lhs, z, order));
      case NodeKind::Im: return im(eval_node(*n.lhs, z, order));
      case NodeKind::Abs2: return abs2(eval_node(*n.lhs, z, order));
      case NodeKind::Add: return eval_node(*n.lhs, z, order) + eval_node(*n.rhs, z, order);
      case NodeKind::Sub: return eval_node(*n.lhs, z, order) - eval_node(*n.rhs, z, order);
      case NodeKind::Mul: return eval_node(*n.lhs, z, order) * eval_node(*n.rhs, z, order);
      case NodeKind::Div: return eval_node(*n.lhs, z, order) / eval_node(*n.rhs, z, order);
      case NodeKind::Pow: return pow_int(eval_node(*n.lhs, z, order), n.exponent);
      case NodeKind::Call: return elementary(n.fn, eval_node(*n.lhs, z, order));
    }
  } catch (const SurfError& e) {
    if (e.offset()) throw;  // deepest location wins
    throw SurfError(e.code(), e.message(), n.offset);
  }
  throw SurfError(Errc::EvalError, "unreachable", n.offset);
}

inline void collect_nonholomorphic(const AstNode& n,
                                   std::vector<std::pair<std::string, std::size_t>>& out) {
  switch (n.kind) {
    case NodeKind::VarZbar: out.emplace_back("zbar", n.offset); break;
    case NodeKind::Conj: out.emplace_back("conj", n.offset); break;
    case NodeKind::Re: out.emplace_back("re", n.offset); break;
    case NodeKind::Im: out.emplace_back("im", n.offset); break;
    case NodeKind::Abs2: out.emplace_back("abs2", n.offset); break;
    default: break;
  }
  if (n.lhs) collect_nonholomorphic(*n.lhs, out);
  if (n.rhs) collect_nonholomorphic(*n.rhs, out);
}

}  // namespace detail

inline Ast parse(const std::string& text) {
  detail::Parser p(text);
  return Ast(std::shared_ptr<const AstNode>(p.parse().release()));
}

inline std::string print(const Ast& ast) {
  std::string out;
  detail::print_node(ast.root(), out);
  return out;
}

// Structural holomorphy: lists every zbar/conj/re/im/abs2 node with its
// source location. Empty result means the tree is holomorphic by construction.
struct HolomorphyViolation {
  std::string node;
  std::size_t offset;
};

inline std::vector<HolomorphyViolation> validate_holomorphic(const Ast& ast) {
  std::vector<std::pair<std::string, std::size_t>> raw;
  detail::collect_nonholomorphic(ast.root(), raw);
  std::vector<HolomorphyViolation> out;
  out.reserve(raw.size());
  for (auto& [name, off] : raw) out.push_back({name, off});
  return out;
}

inline Jet eval_jet(const Ast& ast, Complex z, int order = kMaxJetOrder) {
  if (order < 0 || order > kMaxJetOrder)
    throw SurfError(Errc::InsufficientJetOrder, "eval_jet order must be in 0..3");
  return detail::eval_node(ast.root(), z, order);
}

inline Complex eval_value(const Ast& ast, Complex z) { return eval_jet(ast, z, 0).value(); }

}  // namespace surflab
