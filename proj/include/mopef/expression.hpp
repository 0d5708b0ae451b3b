/**
 * @file expression.hpp
 * @brief A small arithmetic expression language for objectives and transforms.
 *
 * Grammar (lowest to highest precedence):
 *
 *     expr    := term (('+' | '-') term)*
 *     term    := unary (('*' | '/') unary)*
 *     unary   := '-' unary | power
 *     power   := primary ('^' unary)?          right associative
 *     primary := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
 *
 * Functions: exp, log, sqrt, abs (one argument), min, max (two or more).
 * Evaluation never produces NaN or infinity: any non-finite intermediate,
 * log/sqrt of a negative number, division by zero or a negative base under a
 * non-integer exponent raises EvalError.
 */

#ifndef MOPEF_EXPRESSION_HPP
#define MOPEF_EXPRESSION_HPP

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mopef/error.hpp"

namespace mopef {

enum class NodeKind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Call };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind = NodeKind::Number;
  double value = 0.0;     ///< Number
  std::string name;       ///< Variable name or function name
  std::vector<ExprPtr> args;
};

using Environment = std::map<std::string, double, std::less<>>;

class Expression {
 public:
  Expression() = default;
  explicit Expression(ExprPtr root) : root_(std::move(root)) {}

  /// Throws SyntaxError with the offending byte offset.
  static Expression parse(std::string_view text);

  static Expression number(double v);
  static Expression variable(std::string name);
  static Expression unary(NodeKind kind, const Expression& operand);
  static Expression binary(NodeKind kind, const Expression& lhs, const Expression& rhs);
  static Expression call(std::string function, std::vector<Expression> args);

  [[nodiscard]] double evaluate(const Environment& env) const;

  /// Minimal-parenthesis text that parses back to the same tree.
  [[nodiscard]] std::string to_string() const;

  [[nodiscard]] std::set<std::string> variables() const;

  /// Replaces variables by expressions; unmapped variables are kept.
  [[nodiscard]] Expression substitute(const std::map<std::string, Expression>& mapping) const;

  [[nodiscard]] const ExprPtr& root() const noexcept { return root_; }
  [[nodiscard]] bool empty() const noexcept { return root_ == nullptr; }

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  ExprPtr root_;
};

/**
 * @brief An expression flattened to a stack program over positional variables.
 *
 * Variable names are resolved once against `slots`; evaluation then takes a
 * span of values in slot order. Used by the sampler and the finite-difference
 * audits where the same expression is evaluated many times.
 */
class CompiledExpression {
 public:
  CompiledExpression() = default;
  /// Throws EvalError if the expression references a name not in `slots`.
  CompiledExpression(const Expression& expr, const std::vector<std::string>& slots);

  [[nodiscard]] double operator()(std::span<const double> values) const;

 private:
  struct Instr {
    NodeKind kind;
    double value = 0.0;
    std::size_t slot = 0;
    std::size_t arity = 0;
    int function = 0;
  };
  std::vector<Instr> program_;
  std::size_t max_depth_ = 0;
  void emit(const ExprNode& node, const std::vector<std::string>& slots, std::size_t depth);
};

}  // namespace mopef

#endif  // MOPEF_EXPRESSION_HPP
