#include "core/dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

#include "core/numeric.hpp"

namespace infomeasure {

namespace dsl {

enum class NodeType {
  number,
  var_p,
  var_r,
  var_q,
  negate,
  add,
  sub,
  mul,
  div,
  pow,
  call_log,
  call_exp,
  call_lnq,
};

struct Node {
  NodeType type;
  double number = 0.0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
  SourceSpan span;
};

using NodePtr = std::shared_ptr<const Node>;

namespace {

enum class TokenType {
  number,
  var_p,
  var_r,
  var_q,
  kw_log,
  kw_exp,
  kw_lnq,
  kw_affine,
  plus,
  minus,
  star,
  slash,
  caret,
  lparen,
  rparen,
  comma,
  end,
};

struct Token {
  TokenType type;
  SourceSpan span;
  double value = 0.0;
};

class Lexer {
public:
  explicit Lexer(const std::string& src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {TokenType::end, {start, start}};

    const char c = src_[pos_];
    switch (c) {
      case '+': ++pos_; return {TokenType::plus, {start, pos_}};
      case '-': ++pos_; return {TokenType::minus, {start, pos_}};
      case '*': ++pos_; return {TokenType::star, {start, pos_}};
      case '/': ++pos_; return {TokenType::slash, {start, pos_}};
      case '^': ++pos_; return {TokenType::caret, {start, pos_}};
      case '(': ++pos_; return {TokenType::lparen, {start, pos_}};
      case ')': ++pos_; return {TokenType::rparen, {start, pos_}};
      case ',': ++pos_; return {TokenType::comma, {start, pos_}};
      default: break;
    }
    if (is_digit(c) || c == '.') return lex_number();
    if (is_alpha(c)) return lex_word();
    throw Error(ErrorCode::parse_error,
                "unexpected character '" + printable(c) + "' at offset " +
                    std::to_string(start),
                SourceSpan{start, start + 1});
  }

private:
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }

  static std::string printable(char c) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f) return std::string(1, c);
    char buf[8];
    std::snprintf(buf, sizeof(buf), "\\x%02x", u);
    return buf;
  }

  Token lex_number() {
    const std::size_t start = pos_;
    bool any_digit = false;
    while (pos_ < src_.size() && is_digit(src_[pos_])) {
      ++pos_;
      any_digit = true;
    }
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) {
        ++pos_;
        any_digit = true;
      }
    }
    if (!any_digit) {
      throw Error(ErrorCode::parse_error,
                  "malformed number at offset " + std::to_string(start),
                  SourceSpan{start, pos_});
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t exp_pos = pos_ + 1;
      if (exp_pos < src_.size() &&
          (src_[exp_pos] == '+' || src_[exp_pos] == '-')) {
        ++exp_pos;
      }
      if (exp_pos >= src_.size() || !is_digit(src_[exp_pos])) {
        throw Error(ErrorCode::parse_error,
                    "malformed exponent at offset " + std::to_string(pos_),
                    SourceSpan{start, exp_pos});
      }
      pos_ = exp_pos;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    const std::string text = src_.substr(start, pos_ - start);
    return {TokenType::number, {start, pos_}, std::strtod(text.c_str(), nullptr)};
  }

  Token lex_word() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (is_alpha(src_[pos_]) || is_digit(src_[pos_]))) {
      ++pos_;
    }
    const std::string word = src_.substr(start, pos_ - start);
    const SourceSpan span{start, pos_};
    if (word == "p") return {TokenType::var_p, span};
    if (word == "r") return {TokenType::var_r, span};
    if (word == "q") return {TokenType::var_q, span};
    if (word == "log") return {TokenType::kw_log, span};
    if (word == "exp") return {TokenType::kw_exp, span};
    if (word == "lnq") return {TokenType::kw_lnq, span};
    if (word == "affine") return {TokenType::kw_affine, span};
    throw Error(ErrorCode::parse_error,
                "unknown identifier '" + word + "' at offset " +
                    std::to_string(start),
                span);
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

const std::vector<std::string> kAtomExpected = {
    "number", "'p'", "'r'", "'q'", "'log'", "'exp'", "'lnq'", "'('"};

class Parser {
public:
  explicit Parser(const std::string& src) : lexer_(src) { advance(); }

  // source := 'affine' '(' const ',' const ',' expr ')' | expr
  struct Result {
    NodePtr root;
    bool has_affine = false;
    double scale = 1.0;
    double offset = 0.0;
  };

  Result parse_source() {
    Result result;
    if (current_.type == TokenType::kw_affine) {
      advance();
      expect(TokenType::lparen, "'('");
      result.scale = parse_constant();
      expect(TokenType::comma, "','");
      result.offset = parse_constant();
      expect(TokenType::comma, "','");
      result.root = parse_expr();
      expect(TokenType::rparen, "')'");
      result.has_affine = true;
    } else {
      result.root = parse_expr();
    }
    if (current_.type != TokenType::end) {
      throw Error(ErrorCode::parse_error,
                  "unexpected trailing input at offset " +
                      std::to_string(current_.span.begin),
                  current_.span, {"operator", "end of input"});
    }
    return result;
  }

private:
  void advance() { current_ = lexer_.next(); }

  void expect(TokenType type, const std::string& what) {
    if (current_.type != type) {
      throw Error(ErrorCode::parse_error,
                  "expected " + what + " at offset " +
                      std::to_string(current_.span.begin),
                  current_.span, {what});
    }
    advance();
  }

  double parse_constant() {
    const SourceSpan start = current_.span;
    NodePtr node = parse_expr();
    return fold_constant(*node, start);
  }

  static double fold_constant(const Node& node, SourceSpan where) {
    switch (node.type) {
      case NodeType::number: return node.number;
      case NodeType::negate: return -fold_constant(*node.lhs, where);
      case NodeType::add:
        return fold_constant(*node.lhs, where) +
               fold_constant(*node.rhs, where);
      case NodeType::sub:
        return fold_constant(*node.lhs, where) -
               fold_constant(*node.rhs, where);
      case NodeType::mul:
        return fold_constant(*node.lhs, where) *
               fold_constant(*node.rhs, where);
      case NodeType::div:
        return fold_constant(*node.lhs, where) /
               fold_constant(*node.rhs, where);
      case NodeType::pow:
        return std::pow(fold_constant(*node.lhs, where),
                        fold_constant(*node.rhs, where));
      case NodeType::call_exp:
        return std::exp(fold_constant(*node.lhs, where));
      default:
        throw Error(ErrorCode::parse_error,
                    "affine parameters must be constant expressions",
                    node.span, {"number"});
    }
  }

  NodePtr parse_expr() {
    NodePtr left = parse_term();
    while (current_.type == TokenType::plus ||
           current_.type == TokenType::minus) {
      const bool is_add = current_.type == TokenType::plus;
      advance();
      NodePtr right = parse_term();
      left = make_binary(is_add ? NodeType::add : NodeType::sub, left, right);
    }
    return left;
  }

  NodePtr parse_term() {
    NodePtr left = parse_factor();
    while (current_.type == TokenType::star ||
           current_.type == TokenType::slash) {
      const bool is_mul = current_.type == TokenType::star;
      advance();
      NodePtr right = parse_factor();
      left = make_binary(is_mul ? NodeType::mul : NodeType::div, left, right);
    }
    return left;
  }

  // factor := unary ('^' factor)?   -- right-associative
  NodePtr parse_factor() {
    NodePtr base = parse_unary();
    if (current_.type == TokenType::caret) {
      advance();
      NodePtr exponent = parse_factor();
      return make_binary(NodeType::pow, base, exponent);
    }
    return base;
  }

  NodePtr parse_unary() {
    if (current_.type == TokenType::minus) {
      const SourceSpan start = current_.span;
      advance();
      NodePtr inner = parse_atom();
      auto node = std::make_shared<Node>();
      node->type = NodeType::negate;
      node->lhs = inner;
      node->span = SourceSpan{start.begin, inner->span.end};
      return node;
    }
    return parse_atom();
  }

  NodePtr parse_atom() {
    const Token tok = current_;
    switch (tok.type) {
      case TokenType::number: {
        advance();
        auto node = std::make_shared<Node>();
        node->type = NodeType::number;
        node->number = tok.value;
        node->span = tok.span;
        return node;
      }
      case TokenType::var_p: return make_leaf(NodeType::var_p, tok);
      case TokenType::var_r: return make_leaf(NodeType::var_r, tok);
      case TokenType::var_q: return make_leaf(NodeType::var_q, tok);
      case TokenType::kw_log: return parse_call(NodeType::call_log, tok);
      case TokenType::kw_exp: return parse_call(NodeType::call_exp, tok);
      case TokenType::kw_lnq: return parse_call(NodeType::call_lnq, tok);
      case TokenType::lparen: {
        advance();
        NodePtr inner = parse_expr();
        expect(TokenType::rparen, "')'");
        return inner;
      }
      default:
        throw Error(ErrorCode::parse_error,
                    "expected an operand at offset " +
                        std::to_string(tok.span.begin),
                    tok.span, kAtomExpected);
    }
  }

  NodePtr make_leaf(NodeType type, const Token& tok) {
    advance();
    auto node = std::make_shared<Node>();
    node->type = type;
    node->span = tok.span;
    return node;
  }

  NodePtr parse_call(NodeType type, const Token& name) {
    advance();
    expect(TokenType::lparen, "'('");
    NodePtr arg = parse_expr();
    const SourceSpan close = current_.span;
    expect(TokenType::rparen, "')'");
    auto node = std::make_shared<Node>();
    node->type = type;
    node->lhs = arg;
    node->span = SourceSpan{name.span.begin, close.end};
    return node;
  }

  static NodePtr make_binary(NodeType type, NodePtr lhs, NodePtr rhs) {
    auto node = std::make_shared<Node>();
    node->type = type;
    node->span = SourceSpan{lhs->span.begin, rhs->span.end};
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
  }

  Lexer lexer_;
  Token current_{TokenType::end, {0, 0}};
};

struct EvalContext {
  double p = 0.0;
  const double* r = nullptr;
  const QParameter* q = nullptr;
  std::size_t index = 0;
};

double eval_node(const Node& node, const EvalContext& ctx) {
  switch (node.type) {
    case NodeType::number: return node.number;
    case NodeType::var_p: return ctx.p;
    case NodeType::var_r:
      if (ctx.r == nullptr) {
        throw Error(ErrorCode::invalid_argument,
                    "expression references r but no second distribution "
                    "was supplied",
                    node.span);
      }
      return *ctx.r;
    case NodeType::var_q:
      if (ctx.q == nullptr) {
        throw Error(ErrorCode::invalid_argument,
                    "expression references q but no q parameter was supplied",
                    node.span);
      }
      return ctx.q->value();
    case NodeType::negate: return -eval_node(*node.lhs, ctx);
    case NodeType::add:
      return eval_node(*node.lhs, ctx) + eval_node(*node.rhs, ctx);
    case NodeType::sub:
      return eval_node(*node.lhs, ctx) - eval_node(*node.rhs, ctx);
    case NodeType::mul:
      return eval_node(*node.lhs, ctx) * eval_node(*node.rhs, ctx);
    case NodeType::div:
      return eval_node(*node.lhs, ctx) / eval_node(*node.rhs, ctx);
    case NodeType::pow:
      return std::pow(eval_node(*node.lhs, ctx), eval_node(*node.rhs, ctx));
    case NodeType::call_exp: return std::exp(eval_node(*node.lhs, ctx));
    case NodeType::call_log: {
      const double arg = eval_node(*node.lhs, ctx);
      if (!(arg > 0.0)) {
        throw Error(ErrorCode::domain_error,
                    "log of nonpositive argument " + std::to_string(arg) +
                        " at summand index " + std::to_string(ctx.index),
                    node.span);
      }
      return std::log(arg);
    }
    case NodeType::call_lnq: {
      if (ctx.q == nullptr) {
        throw Error(ErrorCode::invalid_argument,
                    "expression references q (via lnq) but no q parameter "
                    "was supplied",
                    node.span);
      }
      const double arg = eval_node(*node.lhs, ctx);
      if (!(arg > 0.0)) {
        throw Error(ErrorCode::domain_error,
                    "lnq of nonpositive argument " + std::to_string(arg) +
                        " at summand index " + std::to_string(ctx.index),
                    node.span);
      }
      return q_logarithm(arg, *ctx.q);
    }
  }
  throw Error(ErrorCode::internal, "corrupt expression node");
}

bool node_references(const Node& node, NodeType what) {
  if (node.type == what) return true;
  if (node.type == NodeType::call_lnq && what == NodeType::var_q) return true;
  if (node.lhs && node_references(*node.lhs, what)) return true;
  if (node.rhs && node_references(*node.rhs, what)) return true;
  return false;
}

std::string render_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

std::string render(const Node& node) {
  switch (node.type) {
    case NodeType::number: return render_number(node.number);
    case NodeType::var_p: return "p";
    case NodeType::var_r: return "r";
    case NodeType::var_q: return "q";
    case NodeType::negate: return "(-" + render(*node.lhs) + ")";
    case NodeType::add:
      return "(" + render(*node.lhs) + " + " + render(*node.rhs) + ")";
    case NodeType::sub:
      return "(" + render(*node.lhs) + " - " + render(*node.rhs) + ")";
    case NodeType::mul:
      return "(" + render(*node.lhs) + " * " + render(*node.rhs) + ")";
    case NodeType::div:
      return "(" + render(*node.lhs) + " / " + render(*node.rhs) + ")";
    case NodeType::pow:
      return "(" + render(*node.lhs) + " ^ " + render(*node.rhs) + ")";
    case NodeType::call_log: return "log(" + render(*node.lhs) + ")";
    case NodeType::call_exp: return "exp(" + render(*node.lhs) + ")";
    case NodeType::call_lnq: return "lnq(" + render(*node.lhs) + ")";
  }
  return "?";
}

}  // namespace

}  // namespace dsl

MeasureExpression MeasureExpression::parse(std::string source) {
  dsl::Parser parser(source);
  dsl::Parser::Result parsed = parser.parse_source();
  MeasureExpression expr;
  expr.source_ = std::move(source);
  expr.root_ = parsed.root;
  expr.has_affine_ = parsed.has_affine;
  expr.affine_scale_ = parsed.scale;
  expr.affine_offset_ = parsed.offset;
  expr.references_r_ = dsl::node_references(*expr.root_, dsl::NodeType::var_r);
  expr.references_q_ = dsl::node_references(*expr.root_, dsl::NodeType::var_q);
  return expr;
}

double MeasureExpression::evaluate(const Distribution& p,
                                   const Distribution* r,
                                   std::optional<QParameter> q) const {
  if (r != nullptr && r->size() != p.size()) {
    throw Error(ErrorCode::invalid_argument,
                "p and r must have the same length");
  }
  CompensatedSum acc;
  dsl::EvalContext ctx;
  ctx.q = q.has_value() ? &*q : nullptr;
  double r_value = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0)) continue;  // summands only see the support of p
    ctx.p = p[i];
    if (r != nullptr) {
      r_value = (*r)[i];
      ctx.r = &r_value;
    }
    ctx.index = i;
    acc.add(dsl::eval_node(*root_, ctx));
  }
  const double total = acc.value();
  return has_affine_ ? affine_scale_ * total + affine_offset_ : total;
}

Measure MeasureExpression::as_measure(MeasureKind kind,
                                      std::optional<double> q) const {
  if (kind == MeasureKind::entropy && references_r_) {
    throw Error(ErrorCode::kind_mismatch,
                "entropy-type expression must not reference r");
  }
  if (references_q_ && !q.has_value()) {
    throw Error(ErrorCode::invalid_argument,
                "expression references q: a q parameter is required");
  }
  std::optional<QParameter> qp;
  if (q.has_value()) qp = QParameter(*q);

  MeasureExpression self = *this;
  if (kind == MeasureKind::entropy) {
    return Measure::entropy(
        source_,
        [self, qp](const Distribution& p) {
          return self.evaluate(p, nullptr, qp);
        },
        q);
  }
  return Measure::divergence(
      source_,
      [self, qp](const AbsolutelyContinuousPair& pair) {
        return self.evaluate(pair.p(), &pair.r(), qp);
      },
      q);
}

std::string MeasureExpression::to_string() const {
  std::string body = dsl::render(*root_);
  if (!has_affine_) return body;
  return "affine(" + dsl::render_number(affine_scale_) + ", " +
         dsl::render_number(affine_offset_) + ", " + body + ")";
}

std::string format_span_diagnostic(const std::string& source,
                                   SourceSpan span) {
  std::string out = source;
  out += '\n';
  const std::size_t caret = span.begin < source.size() ? span.begin
                                                       : source.size();
  out.append(caret, ' ');
  const std::size_t width = span.end > span.begin ? span.end - span.begin : 1;
  out.append(width, '^');
  return out;
}

}  // namespace infomeasure
