#include "planar/expr.hpp"

#include <cctype>
#include <charconv>
#include <utility>

namespace planar {

int expr_arity(ExprKind kind) {
    switch (kind) {
        case ExprKind::Constant:
        case ExprKind::VarX:
        case ExprKind::VarY:
        case ExprKind::Param:
            return 0;
        case ExprKind::Neg:
        case ExprKind::Sin:
        case ExprKind::Cos:
        case ExprKind::Exp:
        case ExprKind::Sqrt:
        case ExprKind::PowInt:
            return 1;
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Div:
            return 2;
    }
    throw Error("corrupt expression node");
}

void expr_validate(const ExprAst& node, std::size_t param_count) {
    if (node.children.size() != std::size_t(expr_arity(node.kind)))
        throw Error("expression node arity mismatch");
    if (node.kind == ExprKind::Param &&
        (node.param_index < 0 || std::size_t(node.param_index) >= param_count))
        throw Error("expression parameter index out of range");
    if (node.kind == ExprKind::PowInt && node.exponent < 0)
        throw Error("expression exponent is negative");
    for (const auto& child : node.children) {
        if (!child) throw Error("expression node has null child");
        expr_validate(*child, param_count);
    }
}

ExprPtr expr_clone(const ExprAst& node) {
    auto copy = std::make_unique<ExprAst>();
    copy->kind = node.kind;
    copy->value = node.value;
    copy->param_index = node.param_index;
    copy->exponent = node.exponent;
    copy->children.reserve(node.children.size());
    for (const auto& child : node.children) copy->children.push_back(expr_clone(*child));
    return copy;
}

namespace {

enum class Tok {
    Number,
    Ident,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    double number = 0.0;
    std::size_t pos = 0;
};

class Lexer {
public:
    Lexer(const std::string& src, std::size_t base) : src_(src), base_(base) {}

    Token next() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        std::size_t begin = i_;
        std::size_t pos = base_ + begin;
        if (i_ >= src_.size()) return {Tok::End, "", 0.0, pos};
        char c = src_[i_];
        switch (c) {
            case '+': ++i_; return {Tok::Plus, "+", 0.0, pos};
            case '-': ++i_; return {Tok::Minus, "-", 0.0, pos};
            case '*': ++i_; return {Tok::Star, "*", 0.0, pos};
            case '/': ++i_; return {Tok::Slash, "/", 0.0, pos};
            case '^': ++i_; return {Tok::Caret, "^", 0.0, pos};
            case '(': ++i_; return {Tok::LParen, "(", 0.0, pos};
            case ')': ++i_; return {Tok::RParen, ")", 0.0, pos};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return lex_number(begin);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
                ++i_;
            return {Tok::Ident, src_.substr(begin, i_ - begin), 0.0, pos};
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

private:
    Token lex_number(std::size_t begin) {
        std::size_t pos = base_ + begin;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
        if (i_ < src_.size() && src_[i_] == '.') {
            ++i_;
            while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
        }
        if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
            std::size_t mark = i_;
            ++i_;
            if (i_ < src_.size() && (src_[i_] == '+' || src_[i_] == '-')) ++i_;
            if (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
                while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) ++i_;
            } else {
                i_ = mark;  // 'e' belongs to a following identifier, not this number
            }
        }
        std::string text = src_.substr(begin, i_ - begin);
        if (text == ".") throw ParseError("malformed number", pos);
        double value = 0.0;
        auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc() || p != text.data() + text.size())
            throw ParseError("malformed number '" + text + "'", pos);
        return {Tok::Number, text, value, pos};
    }

    const std::string& src_;
    std::size_t base_ = 0;
    std::size_t i_ = 0;
};

class Parser {
public:
    Parser(const std::string& src, const std::vector<std::string>& params, std::size_t base)
        : lexer_(src, base), params_(params) {
        advance();
    }

    ExprPtr parse() {
        ExprPtr e = expr();
        if (cur_.kind != Tok::End)
            throw ParseError("unexpected trailing input '" + cur_.text + "'", cur_.pos);
        return e;
    }

private:
    static ExprPtr node(ExprKind kind) {
        auto n = std::make_unique<ExprAst>();
        n->kind = kind;
        return n;
    }

    static ExprPtr unary(ExprKind kind, ExprPtr a) {
        ExprPtr n = node(kind);
        n->children.push_back(std::move(a));
        return n;
    }

    static ExprPtr binary(ExprKind kind, ExprPtr a, ExprPtr b) {
        ExprPtr n = node(kind);
        n->children.push_back(std::move(a));
        n->children.push_back(std::move(b));
        return n;
    }

    void advance() { cur_ = lexer_.next(); }

    bool accept(Tok kind) {
        if (cur_.kind != kind) return false;
        advance();
        return true;
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (accept(Tok::Plus))
                e = binary(ExprKind::Add, std::move(e), term());
            else if (accept(Tok::Minus))
                e = binary(ExprKind::Sub, std::move(e), term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (accept(Tok::Star))
                e = binary(ExprKind::Mul, std::move(e), factor());
            else if (accept(Tok::Slash))
                e = binary(ExprKind::Div, std::move(e), factor());
            else
                return e;
        }
    }

    ExprPtr factor() {
        if (accept(Tok::Plus)) return factor();
        if (accept(Tok::Minus)) return unary(ExprKind::Neg, factor());
        return power();
    }

    ExprPtr power() {
        ExprPtr e = atom();
        while (accept(Tok::Caret)) {
            Token t = cur_;
            if (t.kind == Tok::Ident) {
                int idx = param_index(t.text);
                if (idx < 0)
                    throw ParseError("unknown identifier '" + t.text + "'", t.pos);
                throw ParseError("exponent must be a non-negative integer literal", t.pos);
            }
            if (t.kind != Tok::Number)
                throw ParseError("exponent must be a non-negative integer literal", t.pos);
            if (t.text.find('.') != std::string::npos ||
                t.text.find('e') != std::string::npos ||
                t.text.find('E') != std::string::npos)
                throw ParseError("exponent must be a non-negative integer literal", t.pos);
            int exponent = 0;
            auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), exponent);
            if (ec != std::errc() || p != t.text.data() + t.text.size())
                throw ParseError("exponent out of range", t.pos);
            advance();
            ExprPtr n = unary(ExprKind::PowInt, std::move(e));
            n->exponent = exponent;
            e = std::move(n);
        }
        return e;
    }

    ExprPtr atom() {
        Token t = cur_;
        if (accept(Tok::Number)) {
            ExprPtr n = node(ExprKind::Constant);
            n->value = t.number;
            return n;
        }
        if (accept(Tok::LParen)) {
            ExprPtr e = expr();
            if (!accept(Tok::RParen)) throw ParseError("expected ')'", cur_.pos);
            return e;
        }
        if (accept(Tok::Ident)) {
            if (t.text == "x") return node(ExprKind::VarX);
            if (t.text == "y") return node(ExprKind::VarY);
            ExprKind fn;
            if (is_function(t.text, fn)) {
                if (!accept(Tok::LParen))
                    throw ParseError("expected '(' after '" + t.text + "'", cur_.pos);
                ExprPtr arg = expr();
                if (!accept(Tok::RParen)) throw ParseError("expected ')'", cur_.pos);
                return unary(fn, std::move(arg));
            }
            int idx = param_index(t.text);
            if (idx < 0) throw ParseError("unknown identifier '" + t.text + "'", t.pos);
            ExprPtr n = node(ExprKind::Param);
            n->param_index = idx;
            return n;
        }
        throw ParseError(cur_.kind == Tok::End
                             ? std::string("unexpected end of expression")
                             : "unexpected token '" + cur_.text + "'",
                         cur_.pos);
    }

    static bool is_function(const std::string& name, ExprKind& kind) {
        if (name == "sin") kind = ExprKind::Sin;
        else if (name == "cos") kind = ExprKind::Cos;
        else if (name == "exp") kind = ExprKind::Exp;
        else if (name == "sqrt") kind = ExprKind::Sqrt;
        else return false;
        return true;
    }

    int param_index(const std::string& name) const {
        for (std::size_t i = 0; i < params_.size(); ++i)
            if (params_[i] == name) return int(i);
        return -1;
    }

    Lexer lexer_;
    std::vector<std::string> params_;
    Token cur_;
};

}  // namespace

ExprPtr parse_expression(const std::string& src,
                         const std::vector<std::string>& param_names,
                         std::size_t position_offset) {
    static const std::vector<std::string> reserved = {"x", "y", "sin", "cos", "exp", "sqrt"};
    for (const auto& name : param_names)
        for (const auto& r : reserved)
            if (name == r) throw Error("parameter name '" + name + "' is reserved");
    Parser parser(src, param_names, position_offset);
    ExprPtr e = parser.parse();
    expr_validate(*e, param_names.size());
    return e;
}

}  // namespace planar
