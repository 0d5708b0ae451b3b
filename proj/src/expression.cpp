#include "mopef/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace mopef {

namespace {

enum Function : int { kExp = 0, kLog, kSqrt, kAbs, kMin, kMax };

int lookup_function(std::string_view name) {
  if (name == "exp") return kExp;
  if (name == "log") return kLog;
  if (name == "sqrt") return kSqrt;
  if (name == "abs") return kAbs;
  if (name == "min") return kMin;
  if (name == "max") return kMax;
  return -1;
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvalError(std::string("non-finite result in ") + what);
  return v;
}

double apply_binary(NodeKind kind, double a, double b) {
  switch (kind) {
    case NodeKind::Add:
      return checked(a + b, "addition");
    case NodeKind::Sub:
      return checked(a - b, "subtraction");
    case NodeKind::Mul:
      return checked(a * b, "multiplication");
    case NodeKind::Div:
      if (b == 0.0) throw EvalError("division by zero");
      return checked(a / b, "division");
    case NodeKind::Pow:
      if (a < 0.0 && std::trunc(b) != b) throw EvalError("negative base under a non-integer exponent");
      if (a == 0.0 && b < 0.0) throw EvalError("division by zero in power");
      return checked(std::pow(a, b), "power");
    default:
      throw EvalError("not a binary operator");
  }
}

double apply_function(int fn, std::span<const double> args) {
  switch (fn) {
    case kExp:
      return checked(std::exp(args[0]), "exp");
    case kLog:
      if (args[0] <= 0.0) throw EvalError("log of a nonpositive number");
      return checked(std::log(args[0]), "log");
    case kSqrt:
      if (args[0] < 0.0) throw EvalError("sqrt of a negative number");
      return std::sqrt(args[0]);
    case kAbs:
      return std::abs(args[0]);
    case kMin:
      return *std::min_element(args.begin(), args.end());
    case kMax:
      return *std::max_element(args.begin(), args.end());
    default:
      throw EvalError("unknown function");
  }
}

// ---------------------------------------------------------------- parsing

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse_all() {
    auto e = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static ExprPtr make(NodeKind kind, std::vector<ExprPtr> args) {
    auto node = std::make_shared<ExprNode>();
    node->kind = kind;
    node->args = std::move(args);
    return node;
  }

  ExprPtr parse_expr() {
    auto lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make(NodeKind::Add, {lhs, parse_term()});
      } else if (accept('-')) {
        lhs = make(NodeKind::Sub, {lhs, parse_term()});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    auto lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(NodeKind::Mul, {lhs, parse_unary()});
      } else if (accept('/')) {
        lhs = make(NodeKind::Div, {lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    if (accept('-')) return make(NodeKind::Neg, {parse_unary()});
    return parse_power();
  }

  ExprPtr parse_power() {
    auto base = parse_primary();
    if (accept('^')) return make(NodeKind::Pow, {base, parse_unary()});
    return base;
  }

  ExprPtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  ExprPtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    const std::string literal(text_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(literal.c_str(), &end);
    if (end != literal.c_str() + literal.size() || !std::isfinite(v)) {
      throw SyntaxError("malformed number '" + literal + "'", start);
    }
    auto node = std::make_shared<ExprNode>();
    node->kind = NodeKind::Number;
    node->value = v;
    return node;
  }

  ExprPtr parse_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      const int fn = lookup_function(name);
      if (fn < 0) throw SyntaxError("unknown function '" + name + "'", start);
      ++pos_;
      std::vector<ExprPtr> args;
      args.push_back(parse_expr());
      while (accept(',')) args.push_back(parse_expr());
      if (!accept(')')) fail("expected ')' or ','");
      const bool variadic = fn == kMin || fn == kMax;
      if (variadic ? args.size() < 2 : args.size() != 1) {
        throw SyntaxError("wrong number of arguments to '" + name + "'", start);
      }
      auto node = std::make_shared<ExprNode>();
      node->kind = NodeKind::Call;
      node->name = std::move(name);
      node->args = std::move(args);
      return node;
    }
    auto node = std::make_shared<ExprNode>();
    node->kind = NodeKind::Variable;
    node->name = std::move(name);
    return node;
  }
};

// --------------------------------------------------------------- printing

int precedence(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
      return 1;
    case NodeKind::Mul:
    case NodeKind::Div:
      return 2;
    case NodeKind::Neg:
      return 3;
    case NodeKind::Pow:
      return 4;
    case NodeKind::Number:
      return n.value < 0.0 ? 3 : 5;
    default:
      return 5;
  }
}

std::string format_number(double v) {
  char buf[64];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

void print(const ExprNode& n, std::string& out);

void print_wrapped(const ExprNode& n, bool parens, std::string& out) {
  if (parens) out += '(';
  print(n, out);
  if (parens) out += ')';
}

void print(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Number:
      out += format_number(n.value);
      return;
    case NodeKind::Variable:
      out += n.name;
      return;
    case NodeKind::Neg:
      out += '-';
      print_wrapped(*n.args[0], precedence(*n.args[0]) < 3, out);
      return;
    case NodeKind::Pow:
      print_wrapped(*n.args[0], precedence(*n.args[0]) <= 4, out);
      out += '^';
      print_wrapped(*n.args[1], precedence(*n.args[1]) < 3, out);
      return;
    case NodeKind::Call:
      out += n.name;
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i != 0) out += ", ";
        print(*n.args[i], out);
      }
      out += ')';
      return;
    default: {
      const int p = precedence(n);
      const char* op = n.kind == NodeKind::Add ? " + " : n.kind == NodeKind::Sub ? " - " : n.kind == NodeKind::Mul ? " * " : " / ";
      print_wrapped(*n.args[0], precedence(*n.args[0]) < p, out);
      out += op;
      print_wrapped(*n.args[1], precedence(*n.args[1]) <= p, out);
      return;
    }
  }
}

// ------------------------------------------------------------- evaluation

double eval_node(const ExprNode& n, const Environment& env) {
  switch (n.kind) {
    case NodeKind::Number:
      return n.value;
    case NodeKind::Variable: {
      auto it = env.find(n.name);
      if (it == env.end()) throw EvalError("unbound variable '" + n.name + "'");
      return checked(it->second, "variable binding");
    }
    case NodeKind::Neg:
      return -eval_node(*n.args[0], env);
    case NodeKind::Call: {
      std::vector<double> args;
      args.reserve(n.args.size());
      for (const auto& a : n.args) args.push_back(eval_node(*a, env));
      return apply_function(lookup_function(n.name), args);
    }
    default:
      return apply_binary(n.kind, eval_node(*n.args[0], env), eval_node(*n.args[1], env));
  }
}

void collect_variables(const ExprNode& n, std::set<std::string>& out) {
  if (n.kind == NodeKind::Variable) out.insert(n.name);
  for (const auto& a : n.args) collect_variables(*a, out);
}

ExprPtr substitute_node(const ExprPtr& n, const std::map<std::string, Expression>& mapping) {
  if (n->kind == NodeKind::Variable) {
    auto it = mapping.find(n->name);
    return it == mapping.end() ? n : it->second.root();
  }
  if (n->args.empty()) return n;
  auto copy = std::make_shared<ExprNode>(*n);
  for (auto& a : copy->args) a = substitute_node(a, mapping);
  return copy;
}

bool equal_nodes(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  if (a.kind == NodeKind::Number && a.value != b.value) return false;
  if ((a.kind == NodeKind::Variable || a.kind == NodeKind::Call) && a.name != b.name) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!equal_nodes(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

}  // namespace

Expression Expression::parse(std::string_view text) { return Expression(Parser(text).parse_all()); }

Expression Expression::number(double v) {
  auto node = std::make_shared<ExprNode>();
  node->kind = NodeKind::Number;
  node->value = v;
  return Expression(node);
}

Expression Expression::variable(std::string name) {
  auto node = std::make_shared<ExprNode>();
  node->kind = NodeKind::Variable;
  node->name = std::move(name);
  return Expression(node);
}

Expression Expression::unary(NodeKind kind, const Expression& operand) {
  auto node = std::make_shared<ExprNode>();
  node->kind = kind;
  node->args = {operand.root()};
  return Expression(node);
}

Expression Expression::binary(NodeKind kind, const Expression& lhs, const Expression& rhs) {
  auto node = std::make_shared<ExprNode>();
  node->kind = kind;
  node->args = {lhs.root(), rhs.root()};
  return Expression(node);
}

Expression Expression::call(std::string function, std::vector<Expression> args) {
  if (lookup_function(function) < 0) throw ValidationError("unknown function '" + function + "'");
  auto node = std::make_shared<ExprNode>();
  node->kind = NodeKind::Call;
  node->name = std::move(function);
  for (auto& a : args) node->args.push_back(a.root());
  return Expression(node);
}

double Expression::evaluate(const Environment& env) const {
  if (!root_) throw EvalError("empty expression");
  return eval_node(*root_, env);
}

std::string Expression::to_string() const {
  std::string out;
  if (root_) print(*root_, out);
  return out;
}

std::set<std::string> Expression::variables() const {
  std::set<std::string> out;
  if (root_) collect_variables(*root_, out);
  return out;
}

Expression Expression::substitute(const std::map<std::string, Expression>& mapping) const {
  if (!root_) return *this;
  return Expression(substitute_node(root_, mapping));
}

bool operator==(const Expression& a, const Expression& b) {
  if (!a.root_ || !b.root_) return a.root_ == b.root_;
  return equal_nodes(*a.root_, *b.root_);
}

// ------------------------------------------------------------ compilation

CompiledExpression::CompiledExpression(const Expression& expr, const std::vector<std::string>& slots) {
  if (expr.empty()) throw EvalError("empty expression");
  emit(*expr.root(), slots, 1);
}

void CompiledExpression::emit(const ExprNode& node, const std::vector<std::string>& slots, std::size_t depth) {
  max_depth_ = std::max(max_depth_, depth + node.args.size());
  for (std::size_t i = 0; i < node.args.size(); ++i) emit(*node.args[i], slots, depth + i);
  Instr ins{node.kind};
  switch (node.kind) {
    case NodeKind::Number:
      ins.value = node.value;
      break;
    case NodeKind::Variable: {
      auto it = std::find(slots.begin(), slots.end(), node.name);
      if (it == slots.end()) throw EvalError("unbound variable '" + node.name + "'");
      ins.slot = static_cast<std::size_t>(it - slots.begin());
      break;
    }
    case NodeKind::Call:
      ins.function = lookup_function(node.name);
      ins.arity = node.args.size();
      break;
    default:
      break;
  }
  program_.push_back(ins);
}

double CompiledExpression::operator()(std::span<const double> values) const {
  if (program_.empty()) throw EvalError("empty expression");
  std::vector<double> stack;
  stack.reserve(max_depth_ + 1);
  for (const auto& ins : program_) {
    switch (ins.kind) {
      case NodeKind::Number:
        stack.push_back(ins.value);
        break;
      case NodeKind::Variable:
        stack.push_back(checked(values[ins.slot], "variable binding"));
        break;
      case NodeKind::Neg:
        stack.back() = -stack.back();
        break;
      case NodeKind::Call: {
        const std::size_t base = stack.size() - ins.arity;
        const double r = apply_function(ins.function, std::span<const double>(stack).subspan(base));
        stack.resize(base);
        stack.push_back(r);
        break;
      }
      default: {
        const double b = stack.back();
        stack.pop_back();
        stack.back() = apply_binary(ins.kind, stack.back(), b);
        break;
      }
    }
  }
  return stack.back();
}

}  // namespace mopef
