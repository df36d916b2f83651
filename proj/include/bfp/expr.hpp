#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bfp::expr {

/// Syntax error at a byte offset, with the set of tokens that would have
/// been accepted there.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what);

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Evaluation failure (division by zero, log/sqrt out of domain, non-finite
/// result) at the source offset of the failing node.
class DomainError : public std::runtime_error {
public:
    DomainError(std::size_t offset, const std::string& what);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

enum class NodeKind { Number, Variable, Negate, Binary, Call };
enum class Variable { Rho, G };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Sin, Cos, Exp, Log, Abs, Sqrt };

struct Node {
    NodeKind kind = NodeKind::Number;
    double value = 0.0;        // Number
    Variable var = Variable::Rho;
    BinaryOp op = BinaryOp::Add;
    Function fn = Function::Sin;
    int lhs = -1;              // operand of Negate / Call, left of Binary
    int rhs = -1;              // right of Binary
    std::size_t offset = 0;    // byte offset in the source
};

/// Expression tree stored in a flat arena; `root` indexes `nodes`.
struct Ast {
    std::vector<Node> nodes;
    int root = -1;
};

/// Parses an arithmetic expression in the variables `rho` and `g`.
///
/// Precedence from loosest: + -, * /, unary -, ^ (right-associative).
/// Functions: sin cos exp log abs sqrt. Constants: pi e.
Ast parse(std::string_view source);

double eval(const Ast& ast, double rho, double g);

/// Canonical text with the minimum parentheses needed to reparse to the same
/// tree. Numbers are printed with 17 significant digits.
std::string print(const Ast& ast);

/// Same shape, operators, variables and literal values (exact comparison).
bool structurally_equal(const Ast& a, const Ast& b);

}  // namespace bfp::expr
