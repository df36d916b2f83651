#include "bfp/expr.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "bfp/common.hpp"

namespace bfp::expr {

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
    : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

DomainError::DomainError(std::size_t offset, const std::string& what) : std::runtime_error(what), offset_(offset) {}

namespace {

constexpr int kMaxDepth = 256;

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    std::size_t offset = 0;
    double number = 0.0;
    std::string_view text;
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::End: return "end of input";
        case Tok::Number:
        case Tok::Ident: return "'" + std::string(t.text) + "'";
        default: return "'" + std::string(t.text) + "'";
    }
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) { advance(); }

    Ast run() {
        ast_.root = expression(0);
        if (tok_.kind != Tok::End)
            fail({"+", "-", "*", "/", "^", "end of input"}, "unexpected " + describe(tok_));
        return std::move(ast_);
    }

private:
    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& msg) {
        std::string what = "syntax error at offset " + std::to_string(tok_.offset) + ": " + msg + "; expected one of";
        for (std::size_t i = 0; i < expected.size(); ++i) what += (i ? ", " : " ") + expected[i];
        throw ParseError(tok_.offset, std::move(expected), what);
    }

    void advance() {
        while (pos_ < src_.size() && is_space(src_[pos_])) ++pos_;
        tok_ = Token{};
        tok_.offset = pos_;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        const char c = src_[pos_];
        if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
            lex_number();
            return;
        }
        if (is_alpha(c)) {
            std::size_t start = pos_;
            while (pos_ < src_.size() && (is_alpha(src_[pos_]) || is_digit(src_[pos_]))) ++pos_;
            tok_.kind = Tok::Ident;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        tok_.text = src_.substr(pos_, 1);
        switch (c) {
            case '+': tok_.kind = Tok::Plus; break;
            case '-': tok_.kind = Tok::Minus; break;
            case '*': tok_.kind = Tok::Star; break;
            case '/': tok_.kind = Tok::Slash; break;
            case '^': tok_.kind = Tok::Caret; break;
            case '(': tok_.kind = Tok::LParen; break;
            case ')': tok_.kind = Tok::RParen; break;
            default: {
                std::string shown = (static_cast<unsigned char>(c) >= 0x20 && static_cast<unsigned char>(c) < 0x7f)
                                        ? std::string(1, c)
                                        : "\\x" + std::to_string(static_cast<unsigned char>(c));
                fail({"number", "identifier", "operator", "(", ")"}, "invalid character '" + shown + "'");
            }
        }
        ++pos_;
    }

    void lex_number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (p < src_.size() && is_digit(src_[p])) {
                while (p < src_.size() && is_digit(src_[p])) ++p;
                pos_ = p;
            } else {
                tok_.offset = p;
                fail({"digit"}, "malformed exponent in number");
            }
        }
        tok_.kind = Tok::Number;
        tok_.text = src_.substr(start, pos_ - start);
        auto res = std::from_chars(tok_.text.data(), tok_.text.data() + tok_.text.size(), tok_.number);
        if (res.ec != std::errc() || !std::isfinite(tok_.number))
            fail({"number"}, "number '" + std::string(tok_.text) + "' out of range");
    }

    int add(Node n) {
        ast_.nodes.push_back(n);
        return static_cast<int>(ast_.nodes.size() - 1);
    }

    int binary(BinaryOp op, int l, int r, std::size_t offset) {
        Node n;
        n.kind = NodeKind::Binary;
        n.op = op;
        n.lhs = l;
        n.rhs = r;
        n.offset = offset;
        return add(n);
    }

    void enter(int depth) {
        if (depth > kMaxDepth) fail({"shallower nesting"}, "expression nested too deeply");
    }

    int expression(int depth) {
        enter(depth);
        int lhs = term(depth + 1);
        while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
            BinaryOp op = tok_.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
            std::size_t at = tok_.offset;
            advance();
            lhs = binary(op, lhs, term(depth + 1), at);
        }
        return lhs;
    }

    int term(int depth) {
        enter(depth);
        int lhs = unary(depth + 1);
        while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
            BinaryOp op = tok_.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
            std::size_t at = tok_.offset;
            advance();
            lhs = binary(op, lhs, unary(depth + 1), at);
        }
        return lhs;
    }

    int unary(int depth) {
        enter(depth);
        if (tok_.kind == Tok::Minus) {
            Node n;
            n.kind = NodeKind::Negate;
            n.offset = tok_.offset;
            advance();
            n.lhs = unary(depth + 1);
            return add(n);
        }
        return power(depth + 1);
    }

    int power(int depth) {
        enter(depth);
        int base = primary(depth + 1);
        if (tok_.kind == Tok::Caret) {
            std::size_t at = tok_.offset;
            advance();
            return binary(BinaryOp::Pow, base, unary(depth + 1), at);
        }
        return base;
    }

    int primary(int depth) {
        enter(depth);
        const Token t = tok_;
        switch (t.kind) {
            case Tok::Number: {
                advance();
                Node n;
                n.kind = NodeKind::Number;
                n.value = t.number;
                n.offset = t.offset;
                return add(n);
            }
            case Tok::LParen: {
                advance();
                int inner = expression(depth + 1);
                if (tok_.kind != Tok::RParen) fail({")", "+", "-", "*", "/", "^"}, "unexpected " + describe(tok_));
                advance();
                return inner;
            }
            case Tok::Ident: return identifier(depth);
            default: fail({"number", "identifier", "(", "-"}, "unexpected " + describe(t));
        }
    }

    int identifier(int depth) {
        const Token t = tok_;
        Node n;
        n.offset = t.offset;
        if (t.text == "rho" || t.text == "g") {
            advance();
            n.kind = NodeKind::Variable;
            n.var = t.text == "rho" ? Variable::Rho : Variable::G;
            return add(n);
        }
        if (t.text == "pi" || t.text == "e") {
            advance();
            n.kind = NodeKind::Number;
            n.value = t.text == "pi" ? std::numbers::pi : std::numbers::e;
            return add(n);
        }
        static constexpr std::pair<std::string_view, Function> kFunctions[] = {
            {"sin", Function::Sin}, {"cos", Function::Cos}, {"exp", Function::Exp},
            {"log", Function::Log}, {"abs", Function::Abs}, {"sqrt", Function::Sqrt},
        };
        for (const auto& [name, fn] : kFunctions) {
            if (t.text != name) continue;
            advance();
            if (tok_.kind != Tok::LParen) fail({"("}, "expected '(' after function '" + std::string(name) + "'");
            advance();
            n.kind = NodeKind::Call;
            n.fn = fn;
            n.lhs = expression(depth + 1);
            if (tok_.kind != Tok::RParen) fail({")", "+", "-", "*", "/", "^"}, "unexpected " + describe(tok_));
            advance();
            return add(n);
        }
        throw ParseError(t.offset, {"rho", "g", "pi", "e", "sin", "cos", "exp", "log", "abs", "sqrt"},
                         "unknown identifier '" + std::string(t.text) + "' at offset " + std::to_string(t.offset));
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_;
    Ast ast_;
};

double eval_node(const Ast& ast, int index, double rho, double g) {
    const Node& n = ast.nodes[static_cast<std::size_t>(index)];
    double r = 0.0;
    switch (n.kind) {
        case NodeKind::Number: return n.value;
        case NodeKind::Variable: r = n.var == Variable::Rho ? rho : g; break;
        case NodeKind::Negate: r = -eval_node(ast, n.lhs, rho, g); break;
        case NodeKind::Binary: {
            double a = eval_node(ast, n.lhs, rho, g);
            double b = eval_node(ast, n.rhs, rho, g);
            switch (n.op) {
                case BinaryOp::Add: r = a + b; break;
                case BinaryOp::Sub: r = a - b; break;
                case BinaryOp::Mul: r = a * b; break;
                case BinaryOp::Div:
                    if (b == 0.0) throw DomainError(n.offset, "division by zero at offset " + std::to_string(n.offset));
                    r = a / b;
                    break;
                case BinaryOp::Pow: r = std::pow(a, b); break;
            }
            break;
        }
        case NodeKind::Call: {
            double a = eval_node(ast, n.lhs, rho, g);
            switch (n.fn) {
                case Function::Sin: r = std::sin(a); break;
                case Function::Cos: r = std::cos(a); break;
                case Function::Exp: r = std::exp(a); break;
                case Function::Abs: r = std::abs(a); break;
                case Function::Log:
                    if (!(a > 0.0))
                        throw DomainError(n.offset, "log of non-positive value at offset " + std::to_string(n.offset));
                    r = std::log(a);
                    break;
                case Function::Sqrt:
                    if (a < 0.0)
                        throw DomainError(n.offset, "sqrt of negative value at offset " + std::to_string(n.offset));
                    r = std::sqrt(a);
                    break;
            }
            break;
        }
    }
    if (!std::isfinite(r)) throw DomainError(n.offset, "non-finite result at offset " + std::to_string(n.offset));
    return r;
}

// Binding strength used by the printer.
int precedence(const Node& n) {
    switch (n.kind) {
        case NodeKind::Binary:
            switch (n.op) {
                case BinaryOp::Add:
                case BinaryOp::Sub: return 1;
                case BinaryOp::Mul:
                case BinaryOp::Div: return 2;
                case BinaryOp::Pow: return 4;
            }
            return 0;
        case NodeKind::Negate: return 3;
        default: return 5;
    }
}

const char* op_text(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return " + ";
        case BinaryOp::Sub: return " - ";
        case BinaryOp::Mul: return " * ";
        case BinaryOp::Div: return " / ";
        case BinaryOp::Pow: return " ^ ";
    }
    return "?";
}

const char* fn_name(Function fn) {
    switch (fn) {
        case Function::Sin: return "sin";
        case Function::Cos: return "cos";
        case Function::Exp: return "exp";
        case Function::Log: return "log";
        case Function::Abs: return "abs";
        case Function::Sqrt: return "sqrt";
    }
    return "?";
}

void print_node(const Ast& ast, int index, std::string& out) {
    const Node& n = ast.nodes[static_cast<std::size_t>(index)];
    auto child = [&](int c, bool parens) {
        if (parens) out += '(';
        print_node(ast, c, out);
        if (parens) out += ')';
    };
    switch (n.kind) {
        case NodeKind::Number: out += format_number(n.value); break;
        case NodeKind::Variable: out += n.var == Variable::Rho ? "rho" : "g"; break;
        case NodeKind::Negate:
            out += '-';
            child(n.lhs, precedence(ast.nodes[n.lhs]) < 3);
            break;
        case NodeKind::Call:
            out += fn_name(n.fn);
            child(n.lhs, true);
            break;
        case NodeKind::Binary: {
            const int p = precedence(n);
            const int lp = precedence(ast.nodes[n.lhs]);
            const int rp = precedence(ast.nodes[n.rhs]);
            if (n.op == BinaryOp::Pow) {
                // Base binds tighter than '^'; the exponent may be any unary.
                child(n.lhs, lp <= p);
                out += op_text(n.op);
                child(n.rhs, rp < 3);
            } else {
                child(n.lhs, lp < p);
                out += op_text(n.op);
                child(n.rhs, rp <= p);
            }
            break;
        }
    }
}

bool equal_nodes(const Ast& a, int ia, const Ast& b, int ib) {
    const Node& x = a.nodes[static_cast<std::size_t>(ia)];
    const Node& y = b.nodes[static_cast<std::size_t>(ib)];
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case NodeKind::Number: return x.value == y.value;
        case NodeKind::Variable: return x.var == y.var;
        case NodeKind::Negate: return equal_nodes(a, x.lhs, b, y.lhs);
        case NodeKind::Call: return x.fn == y.fn && equal_nodes(a, x.lhs, b, y.lhs);
        case NodeKind::Binary:
            return x.op == y.op && equal_nodes(a, x.lhs, b, y.lhs) && equal_nodes(a, x.rhs, b, y.rhs);
    }
    return false;
}

}  // namespace

Ast parse(std::string_view source) { return Parser(source).run(); }

double eval(const Ast& ast, double rho, double g) {
    if (ast.root < 0) throw DomainError(0, "empty expression");
    return eval_node(ast, ast.root, rho, g);
}

std::string print(const Ast& ast) {
    std::string out;
    if (ast.root >= 0) print_node(ast, ast.root, out);
    return out;
}

bool structurally_equal(const Ast& a, const Ast& b) {
    if (a.root < 0 || b.root < 0) return a.root == b.root;
    return equal_nodes(a, a.root, b, b.root);
}

}  // namespace bfp::expr
