#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace slret::expr {

enum class BinOp { add, sub, mul, div, pow };
enum class Func { sin, cos, tan, exp, log, sqrt, abs, pos, min, max };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { number, variable, neg, binary, call };
    Kind kind;
    double value = 0.0;  // number
    BinOp op{};          // binary
    Func func{};         // call
    NodePtr a, b;        // operands; b set for binary and two-argument calls
};

bool structurally_equal(const Node& lhs, const Node& rhs);

/// Parsed one-variable coefficient expression. Immutable after parse();
/// eval() is pure, so one Expr may be evaluated from many threads.
class Expr {
public:
    Expr();  // the literal 0

    /// Grammar: + - * / ^ with usual precedence (^ highest, then unary -,
    /// then * /, then + -), ^ right-associative; functions sin cos tan exp
    /// log sqrt abs pos, two-argument min max; constants pi, e; variable x.
    /// Throws SyntaxError / UnknownIdentifier with a byte offset.
    static Expr parse(std::string_view text);

    /// Throws EvalDomainError for log(<=0), sqrt(<0), division by zero and
    /// any non-finite intermediate.
    double eval(double x) const;

    /// Text form that parses back to a structurally identical tree.
    std::string str() const;

    const Node& root() const { return *root_; }

    friend bool operator==(const Expr& lhs, const Expr& rhs) {
        return structurally_equal(*lhs.root_, *rhs.root_);
    }

private:
    explicit Expr(NodePtr root) : root_(std::move(root)) {}
    NodePtr root_;
};

}  // namespace slret::expr
