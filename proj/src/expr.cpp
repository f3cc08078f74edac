#include "slret/expr.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>

#include "slret/errors.hpp"

namespace slret::expr {

namespace {

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::number;
    n->value = v;
    return n;
}

NodePtr make_variable() {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::variable;
    return n;
}

NodePtr make_neg(NodePtr a) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::neg;
    n->a = std::move(a);
    return n;
}

NodePtr make_binary(BinOp op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::binary;
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_call(Func f, NodePtr a, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::call;
    n->func = f;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

struct FuncInfo {
    std::string_view name;
    Func func;
    int arity;
};

constexpr std::array<FuncInfo, 10> kFuncs{{
    {"sin", Func::sin, 1},
    {"cos", Func::cos, 1},
    {"tan", Func::tan, 1},
    {"exp", Func::exp, 1},
    {"log", Func::log, 1},
    {"sqrt", Func::sqrt, 1},
    {"abs", Func::abs, 1},
    {"pos", Func::pos, 1},
    {"min", Func::min, 2},
    {"max", Func::max, 2},
}};

const FuncInfo* find_func(std::string_view name) {
    for (const auto& f : kFuncs)
        if (f.name == name) return &f;
    return nullptr;
}

std::string_view func_name(Func f) {
    for (const auto& fi : kFuncs)
        if (fi.func == f) return fi.name;
    return "?";
}

struct Token {
    enum class Type {
        number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end
    };
    Type type;
    double num = 0.0;
    std::string_view text;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        cur_.pos = i_;
        if (i_ >= src_.size()) {
            cur_.type = Token::Type::end;
            return;
        }
        char ch = src_[i_];
        switch (ch) {
            case '+': cur_.type = Token::Type::plus; ++i_; return;
            case '-': cur_.type = Token::Type::minus; ++i_; return;
            case '*': cur_.type = Token::Type::star; ++i_; return;
            case '/': cur_.type = Token::Type::slash; ++i_; return;
            case '^': cur_.type = Token::Type::caret; ++i_; return;
            case '(': cur_.type = Token::Type::lparen; ++i_; return;
            case ')': cur_.type = Token::Type::rparen; ++i_; return;
            case ',': cur_.type = Token::Type::comma; ++i_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = i_;
            while (i_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
                ++i_;
            cur_.type = Token::Type::ident;
            cur_.text = src_.substr(start, i_ - start);
            return;
        }
        throw SyntaxError(std::string("unexpected character '") + ch + "'", i_);
    }

    void lex_number() {
        std::size_t start = i_;
        bool any_digit = false;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
            ++i_;
            any_digit = true;
        }
        if (i_ < src_.size() && src_[i_] == '.') {
            ++i_;
            while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
                ++i_;
                any_digit = true;
            }
        }
        if (!any_digit) throw SyntaxError("malformed number", start);
        // exponent only when followed by digits (so "2*e" keeps e as a constant)
        if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
            std::size_t j = i_ + 1;
            if (j < src_.size() && (src_[j] == '+' || src_[j] == '-')) ++j;
            if (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) {
                i_ = j;
                while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_])))
                    ++i_;
            }
        }
        std::string_view text = src_.substr(start, i_ - start);
        double v = 0.0;
        auto res = std::from_chars(text.data(), text.data() + text.size(), v);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
            throw SyntaxError("malformed number", start);
        cur_.type = Token::Type::number;
        cur_.num = v;
        cur_.text = text;
    }

    std::string_view src_;
    std::size_t i_ = 0;
    Token cur_;
};

// expr   := term { (+|-) term }
// term   := factor { (*|/) factor }
// factor := '-' factor | power
// power  := primary [ '^' factor ]
// primary:= NUMBER | IDENT | IDENT '(' args ')' | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    NodePtr parse() {
        NodePtr e = parse_expr();
        const Token& t = lex_.peek();
        if (t.type != Token::Type::end)
            throw SyntaxError("unexpected trailing input", t.pos);
        return e;
    }

private:
    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            Token::Type t = lex_.peek().type;
            if (t == Token::Type::plus || t == Token::Type::minus) {
                lex_.take();
                NodePtr rhs = parse_term();
                lhs = make_binary(t == Token::Type::plus ? BinOp::add : BinOp::sub,
                                  std::move(lhs), std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_factor();
        for (;;) {
            Token::Type t = lex_.peek().type;
            if (t == Token::Type::star || t == Token::Type::slash) {
                lex_.take();
                NodePtr rhs = parse_factor();
                lhs = make_binary(t == Token::Type::star ? BinOp::mul : BinOp::div,
                                  std::move(lhs), std::move(rhs));
            } else {
                return lhs;
            }
        }
    }

    NodePtr parse_factor() {
        if (lex_.peek().type == Token::Type::minus) {
            lex_.take();
            return make_neg(parse_factor());
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (lex_.peek().type == Token::Type::caret) {
            lex_.take();
            return make_binary(BinOp::pow, std::move(base), parse_factor());
        }
        return base;
    }

    NodePtr parse_primary() {
        Token t = lex_.take();
        switch (t.type) {
            case Token::Type::number:
                return make_number(t.num);
            case Token::Type::lparen: {
                NodePtr e = parse_expr();
                expect_rparen();
                return e;
            }
            case Token::Type::ident:
                return parse_ident(t);
            default:
                throw SyntaxError("expected a number, identifier or '('", t.pos);
        }
    }

    NodePtr parse_ident(const Token& t) {
        if (lex_.peek().type == Token::Type::lparen) {
            const FuncInfo* fi = find_func(t.text);
            if (!fi) throw UnknownIdentifier(std::string(t.text), t.pos);
            lex_.take();  // '('
            NodePtr a = parse_expr();
            NodePtr b;
            if (fi->arity == 2) {
                const Token& sep = lex_.peek();
                if (sep.type != Token::Type::comma)
                    throw SyntaxError(std::string(fi->name) + " takes two arguments", sep.pos);
                lex_.take();
                b = parse_expr();
            }
            expect_rparen();
            return make_call(fi->func, std::move(a), std::move(b));
        }
        if (t.text == "x") return make_variable();
        if (t.text == "pi") return make_number(3.141592653589793238462643383279502884);
        if (t.text == "e") return make_number(2.718281828459045235360287471352662498);
        throw UnknownIdentifier(std::string(t.text), t.pos);
    }

    void expect_rparen() {
        const Token& t = lex_.peek();
        if (t.type != Token::Type::rparen)
            throw SyntaxError("expected ')'", t.pos);
        lex_.take();
    }

    Lexer lex_;
};

double eval_node(const Node& n, double x) {
    switch (n.kind) {
        case Node::Kind::number:
            return n.value;
        case Node::Kind::variable:
            return x;
        case Node::Kind::neg:
            return -eval_node(*n.a, x);
        case Node::Kind::binary: {
            double l = eval_node(*n.a, x);
            double r = eval_node(*n.b, x);
            double v;
            switch (n.op) {
                case BinOp::add: v = l + r; break;
                case BinOp::sub: v = l - r; break;
                case BinOp::mul: v = l * r; break;
                case BinOp::div:
                    if (r == 0.0) throw EvalDomainError("division by zero", x);
                    v = l / r;
                    break;
                case BinOp::pow:
                    v = std::pow(l, r);
                    break;
                default: v = 0.0; break;
            }
            if (!std::isfinite(v)) throw EvalDomainError("non-finite arithmetic result", x);
            return v;
        }
        case Node::Kind::call: {
            double a = eval_node(*n.a, x);
            double v;
            switch (n.func) {
                case Func::sin: v = std::sin(a); break;
                case Func::cos: v = std::cos(a); break;
                case Func::tan: v = std::tan(a); break;
                case Func::exp: v = std::exp(a); break;
                case Func::log:
                    if (a <= 0.0) throw EvalDomainError("log of non-positive value", x);
                    v = std::log(a);
                    break;
                case Func::sqrt:
                    if (a < 0.0) throw EvalDomainError("sqrt of negative value", x);
                    v = std::sqrt(a);
                    break;
                case Func::abs: v = std::fabs(a); break;
                case Func::pos: v = a > 0.0 ? a : 0.0; break;
                case Func::min: v = std::fmin(a, eval_node(*n.b, x)); break;
                case Func::max: v = std::fmax(a, eval_node(*n.b, x)); break;
                default: v = 0.0; break;
            }
            if (!std::isfinite(v)) throw EvalDomainError("non-finite function result", x);
            return v;
        }
    }
    return 0.0;
}

// precedence for printing: add/sub 1, mul/div 2, neg 3, pow 4, atoms 5
int prec(const Node& n) {
    switch (n.kind) {
        case Node::Kind::binary:
            switch (n.op) {
                case BinOp::add:
                case BinOp::sub: return 1;
                case BinOp::mul:
                case BinOp::div: return 2;
                case BinOp::pow: return 4;
            }
            return 1;
        case Node::Kind::neg: return 3;
        default: return 5;
    }
}

void print_node(const Node& n, std::string& out);

void print_child(const Node& child, int min_prec, std::string& out) {
    bool parens = prec(child) < min_prec;
    if (parens) out += '(';
    print_node(child, out);
    if (parens) out += ')';
}

void print_node(const Node& n, std::string& out) {
    switch (n.kind) {
        case Node::Kind::number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            return;
        }
        case Node::Kind::variable:
            out += 'x';
            return;
        case Node::Kind::neg:
            out += '-';
            print_child(*n.a, 3, out);
            return;
        case Node::Kind::binary: {
            const char* sym = "";
            int p = prec(n);
            int rhs_min = p + 1;
            switch (n.op) {
                case BinOp::add: sym = " + "; break;
                case BinOp::sub: sym = " - "; break;
                case BinOp::mul: sym = "*"; break;
                case BinOp::div: sym = "/"; break;
                case BinOp::pow:
                    sym = "^";
                    // base slot is a primary, exponent slot is a factor
                    print_child(*n.a, 5, out);
                    out += sym;
                    print_child(*n.b, 3, out);
                    return;
            }
            print_child(*n.a, p, out);
            out += sym;
            print_child(*n.b, rhs_min, out);
            return;
        }
        case Node::Kind::call:
            out += func_name(n.func);
            out += '(';
            print_node(*n.a, out);
            if (n.b) {
                out += ", ";
                print_node(*n.b, out);
            }
            out += ')';
            return;
    }
}

}  // namespace

bool structurally_equal(const Node& lhs, const Node& rhs) {
    if (lhs.kind != rhs.kind) return false;
    switch (lhs.kind) {
        case Node::Kind::number:
            return lhs.value == rhs.value;
        case Node::Kind::variable:
            return true;
        case Node::Kind::neg:
            return structurally_equal(*lhs.a, *rhs.a);
        case Node::Kind::binary:
            return lhs.op == rhs.op && structurally_equal(*lhs.a, *rhs.a) &&
                   structurally_equal(*lhs.b, *rhs.b);
        case Node::Kind::call:
            if (lhs.func != rhs.func) return false;
            if (!structurally_equal(*lhs.a, *rhs.a)) return false;
            if (!lhs.b != !rhs.b) return false;
            return !lhs.b || structurally_equal(*lhs.b, *rhs.b);
    }
    return false;
}

Expr::Expr() : root_(make_number(0.0)) {}

Expr Expr::parse(std::string_view text) {
    if (text.empty()) throw SyntaxError("empty expression", 0);
    Parser p(text);
    return Expr(p.parse());
}

double Expr::eval(double x) const { return eval_node(*root_, x); }

std::string Expr::str() const {
    std::string out;
    print_node(*root_, out);
    return out;
}

}  // namespace slret::expr
