#include "rocflow/parser.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "rocflow/errors.hpp"

namespace rocflow {

namespace {

struct Token {
  enum class Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen,
                    RParen, End };
  Kind kind;
  double value = 0.0;
  std::string text;
  size_t pos = 0;
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
    while (i_ < src_.size() && std::isspace((unsigned char)src_[i_])) ++i_;
    tok_.pos = i_;
    if (i_ >= src_.size()) {
      tok_.kind = Token::Kind::End;
      return;
    }
    char c = src_[i_];
    switch (c) {
      case '+': tok_.kind = Token::Kind::Plus; ++i_; return;
      case '-': tok_.kind = Token::Kind::Minus; ++i_; return;
      case '*': tok_.kind = Token::Kind::Star; ++i_; return;
      case '/': tok_.kind = Token::Kind::Slash; ++i_; return;
      case '^': tok_.kind = Token::Kind::Caret; ++i_; return;
      case '(': tok_.kind = Token::Kind::LParen; ++i_; return;
      case ')': tok_.kind = Token::Kind::RParen; ++i_; return;
      default: break;
    }
    if (std::isdigit((unsigned char)c) || c == '.') {
      const char* begin = src_.c_str() + i_;
      char* end = nullptr;
      tok_.value = std::strtod(begin, &end);
      if (end == begin) throw SyntaxError("malformed number", i_);
      i_ += size_t(end - begin);
      tok_.kind = Token::Kind::Number;
      return;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = i_;
      while (i_ < src_.size() &&
             (std::isalnum((unsigned char)src_[i_]) || src_[i_] == '_'))
        ++i_;
      tok_.kind = Token::Kind::Ident;
      tok_.text = src_.substr(start, i_ - start);
      return;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", i_);
  }

  const std::string& src_;
  size_t i_ = 0;
  Token tok_;
};

ExprPtr node(ExprNode::Kind k, ExprPtr l = nullptr, ExprPtr r = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  n->lhs = std::move(l);
  n->rhs = std::move(r);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  ExprPtr parse() {
    ExprPtr e = expression();
    if (lex_.peek().kind != Token::Kind::End)
      throw SyntaxError("unexpected trailing input", lex_.peek().pos);
    return e;
  }

 private:
  ExprPtr expression() {
    ExprPtr e = term();
    for (;;) {
      auto k = lex_.peek().kind;
      if (k == Token::Kind::Plus) {
        lex_.take();
        e = node(ExprNode::Kind::Add, e, term());
      } else if (k == Token::Kind::Minus) {
        lex_.take();
        e = node(ExprNode::Kind::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      auto k = lex_.peek().kind;
      if (k == Token::Kind::Star) {
        lex_.take();
        e = node(ExprNode::Kind::Mul, e, unary());
      } else if (k == Token::Kind::Slash) {
        lex_.take();
        e = node(ExprNode::Kind::Div, e, unary());
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    if (lex_.peek().kind == Token::Kind::Minus) {
      lex_.take();
      return node(ExprNode::Kind::Neg, unary());
    }
    return power();
  }

  // ^ binds tighter than unary minus and is right associative.
  ExprPtr power() {
    ExprPtr base = primary();
    if (lex_.peek().kind == Token::Kind::Caret) {
      lex_.take();
      return node(ExprNode::Kind::Pow, base, unary());
    }
    return base;
  }

  ExprPtr primary() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Kind::Number: {
        auto n = node(ExprNode::Kind::Constant);
        const_cast<ExprNode*>(n.get())->value = t.value;
        return n;
      }
      case Token::Kind::Ident: {
        if (t.text == "psi") return node(ExprNode::Kind::VarPsi);
        if (t.text == "s") return node(ExprNode::Kind::VarS);
        if (t.text == "exp" || t.text == "log" || t.text == "sqrt") {
          if (lex_.peek().kind != Token::Kind::LParen)
            throw SyntaxError("expected '(' after function name",
                              lex_.peek().pos);
          lex_.take();
          ExprPtr arg = expression();
          if (lex_.peek().kind != Token::Kind::RParen)
            throw SyntaxError("expected ')'", lex_.peek().pos);
          lex_.take();
          auto n = node(ExprNode::Kind::Call, arg);
          const_cast<ExprNode*>(n.get())->func = t.text;
          return n;
        }
        throw UnknownIdentifier(t.text);
      }
      case Token::Kind::LParen: {
        ExprPtr e = expression();
        if (lex_.peek().kind != Token::Kind::RParen)
          throw SyntaxError("expected ')'", lex_.peek().pos);
        lex_.take();
        return e;
      }
      default:
        throw SyntaxError("expected a value", t.pos);
    }
  }

  Lexer lex_;
};

Jet2<double> eval_node(const ExprNode& n, const Jet2<double>& psi,
                       const Jet2<double>& s) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::Constant: return Jet2<double>::constant(n.value);
    case K::VarPsi: return psi;
    case K::VarS: return s;
    case K::Add: return eval_node(*n.lhs, psi, s) + eval_node(*n.rhs, psi, s);
    case K::Sub: return eval_node(*n.lhs, psi, s) - eval_node(*n.rhs, psi, s);
    case K::Mul: return eval_node(*n.lhs, psi, s) * eval_node(*n.rhs, psi, s);
    case K::Div: return eval_node(*n.lhs, psi, s) / eval_node(*n.rhs, psi, s);
    case K::Neg: return -eval_node(*n.lhs, psi, s);
    case K::Pow: {
      Jet2<double> base = eval_node(*n.lhs, psi, s);
      // Constant exponent keeps negative bases usable for integer powers.
      if (n.rhs->kind == K::Constant) return pow(base, n.rhs->value);
      if (n.rhs->kind == K::Neg && n.rhs->lhs->kind == K::Constant)
        return pow(base, -n.rhs->lhs->value);
      return pow(base, eval_node(*n.rhs, psi, s));
    }
    case K::Call: {
      Jet2<double> a = eval_node(*n.lhs, psi, s);
      if (n.func == "exp") return exp(a);
      if (n.func == "log") return log(a);
      return sqrt(a);
    }
  }
  throw Error("corrupt expression tree");
}

void print_node(const ExprNode& n, std::ostream& os) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::Constant: {
      std::ostringstream tmp;
      tmp.precision(17);
      tmp << n.value;
      os << tmp.str();
      return;
    }
    case K::VarPsi: os << "psi"; return;
    case K::VarS: os << "s"; return;
    case K::Add: case K::Sub: case K::Mul: case K::Div: case K::Pow: {
      const char* op = n.kind == K::Add   ? " + "
                       : n.kind == K::Sub ? " - "
                       : n.kind == K::Mul ? "*"
                       : n.kind == K::Div ? "/"
                                          : "^";
      os << '(';
      print_node(*n.lhs, os);
      os << op;
      print_node(*n.rhs, os);
      os << ')';
      return;
    }
    case K::Neg:
      os << "(-";
      print_node(*n.lhs, os);
      os << ')';
      return;
    case K::Call:
      os << n.func << '(';
      print_node(*n.lhs, os);
      os << ')';
      return;
  }
}

bool nodes_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == ExprNode::Kind::Constant) return a.value == b.value;
  if (a.kind == ExprNode::Kind::Call && a.func != b.func) return false;
  if ((a.lhs == nullptr) != (b.lhs == nullptr)) return false;
  if ((a.rhs == nullptr) != (b.rhs == nullptr)) return false;
  if (a.lhs && !nodes_equal(*a.lhs, *b.lhs)) return false;
  if (a.rhs && !nodes_equal(*a.rhs, *b.rhs)) return false;
  return true;
}

}  // namespace

ExprAst parse_flow_expression(const std::string& text) {
  if (text.empty()) throw SyntaxError("empty expression", 0);
  Parser p(text);
  return ExprAst{p.parse()};
}

std::string print_expression(const ExprAst& ast) {
  std::ostringstream os;
  print_node(*ast.root, os);
  return os.str();
}

bool expressions_equal(const ExprAst& a, const ExprAst& b) {
  return nodes_equal(*a.root, *b.root);
}

FlowJet jet_eval(const ExprAst& ast, double psi, double s) {
  if (!(psi > s) || !(s >= 0.0))
    throw OutOfDomain("expression evaluated outside the cone");
  Jet2<double> r =
      eval_node(*ast.root, Jet2<double>::var_p(psi), Jet2<double>::var_q(s));
  return to_flow_jet(r);
}

FlowSpec make_expression_flow(const std::string& text) {
  ExprAst ast = parse_flow_expression(text);
  return FlowSpec(
      "expr(" + text + ")", FlowSign::Indefinite,
      [ast](double psi, double s) { return jet_eval(ast, psi, s); }, false);
}

}  // namespace rocflow
