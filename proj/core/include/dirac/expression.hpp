#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace dirac {

/// A parsed closed-form expression over the variables x, y, t.
///
/// Grammar (deliberately tiny):
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := primary ('^' factor)?          // right-associative, binds above unary minus
///   primary:= number | 'pi' | 'x' | 'y' | 't'
///           | ('sin'|'cos'|'exp') '(' expr ')' | '(' expr ')'
///
/// Parse errors are reported as ConfigError with the 0-based column offset.
/// Evaluation is pure and thread-safe. Two independent evaluation paths are
/// kept: eval() runs a compiled postfix program (the production path) and
/// eval_tree() walks the syntax tree; tests cross-check them.
class Expression {
public:
    /// Parse `text`; throws ConfigError on syntax errors or unknown identifiers.
    static Expression parse(std::string_view text);

    double eval(double x, double y, double t) const;
    double eval_tree(double x, double y, double t) const;

    bool uses_x() const { return uses_x_; }
    bool uses_y() const { return uses_y_; }
    bool uses_t() const { return uses_t_; }

    const std::string& text() const { return text_; }

private:
    struct Node;
    struct Op;
    Expression() = default;

    std::string text_;
    std::shared_ptr<const std::vector<Node>> nodes_; // tree arena, root is last node
    std::shared_ptr<const std::vector<Op>> program_; // postfix form of the same tree
    bool uses_x_ = false, uses_y_ = false, uses_t_ = false;

    friend class ExpressionParser;
};

struct Expression::Node {
    enum class Kind { Num, VarX, VarY, VarT, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };
    Kind kind{};
    double value = 0.0;     // Kind::Num
    int lhs = -1, rhs = -1; // arena indices; unary ops use lhs only
};

struct Expression::Op {
    enum class Code { Push, LoadX, LoadY, LoadT, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };
    Code code{};
    double imm = 0.0; // Code::Push
};

} // namespace dirac
