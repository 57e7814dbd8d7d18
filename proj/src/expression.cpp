#include "pxlap/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace pxlap {

namespace {

[[noreturn]] void fail(std::size_t pos, const std::string& what) {
    throw std::invalid_argument("expression error at position " +
                                std::to_string(pos) + ": " + what);
}

}  // namespace

class ExprParser {
public:
    explicit ExprParser(std::string_view s) : s_(s) {}

    Expression run() {
        Expression e;
        e.text_.assign(s_);
        int root = parse_expr(e.nodes_);
        skip_ws();
        if (pos_ != s_.size()) fail(pos_, "unexpected trailing input");
        if (root + 1 != static_cast<int>(e.nodes_.size()))
            e.nodes_.push_back(e.nodes_[root]);
        return e;
    }

private:
    using Op = Expression::Op;
    using Node = Expression::Node;
    using Nodes = std::vector<Node>;

    static int push(Nodes& n, Op op, double v = 0.0, int a = -1, int b = -1) {
        n.push_back({op, v, a, b});
        return static_cast<int>(n.size()) - 1;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    int parse_expr(Nodes& n) {
        int lhs = parse_term(n);
        for (;;) {
            char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            int rhs = parse_term(n);
            lhs = push(n, c == '+' ? Op::add : Op::sub, 0.0, lhs, rhs);
        }
    }

    int parse_term(Nodes& n) {
        int lhs = parse_unary(n);
        for (;;) {
            char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            int rhs = parse_unary(n);
            lhs = push(n, c == '*' ? Op::mul : Op::div, 0.0, lhs, rhs);
        }
    }

    int parse_unary(Nodes& n) {
        if (eat('-')) return push(n, Op::neg, 0.0, parse_unary(n));
        return parse_power(n);
    }

    int parse_power(Nodes& n) {
        int base = parse_atom(n);
        if (eat('^')) {
            int exp = parse_unary(n);
            return push(n, Op::pow, 0.0, base, exp);
        }
        return base;
    }

    int parse_atom(Nodes& n) {
        skip_ws();
        if (pos_ >= s_.size()) fail(pos_, "unexpected end of input");
        char c = s_[pos_];

        if (c == '(') {
            ++pos_;
            int inner = parse_expr(n);
            if (!eat(')')) fail(pos_, "expected ')'");
            return inner;
        }

        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = 0.0;
            const char* begin = s_.data() + pos_;
            const char* end = s_.data() + s_.size();
            auto [ptr, ec] = std::from_chars(begin, end, v);
            if (ec != std::errc()) fail(pos_, "malformed number");
            pos_ += static_cast<std::size_t>(ptr - begin);
            return push(n, Op::constant, v);
        }

        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string_view name = s_.substr(start, pos_ - start);
            if (name == "x") return push(n, Op::var_x);
            if (name == "y") return push(n, Op::var_y);

            Op fn;
            if (name == "sin") fn = Op::sin;
            else if (name == "cos") fn = Op::cos;
            else if (name == "exp") fn = Op::exp;
            else if (name == "abs") fn = Op::abs;
            else fail(start, "unknown identifier '" + std::string(name) + "'");

            if (!eat('(')) fail(pos_, "expected '(' after function name");
            int arg = parse_expr(n);
            if (!eat(')')) fail(pos_, "expected ')'");
            return push(n, fn, 0.0, arg);
        }

        fail(pos_, std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

Expression Expression::parse(std::string_view text) {
    return ExprParser(text).run();
}

double Expression::eval(int node, double x, double y) const {
    const Node& n = nodes_[static_cast<std::size_t>(node)];
    switch (n.op) {
        case Op::constant: return n.value;
        case Op::var_x: return x;
        case Op::var_y: return y;
        case Op::add: return eval(n.a, x, y) + eval(n.b, x, y);
        case Op::sub: return eval(n.a, x, y) - eval(n.b, x, y);
        case Op::mul: return eval(n.a, x, y) * eval(n.b, x, y);
        case Op::div: return eval(n.a, x, y) / eval(n.b, x, y);
        case Op::pow: return std::pow(eval(n.a, x, y), eval(n.b, x, y));
        case Op::neg: return -eval(n.a, x, y);
        case Op::sin: return std::sin(eval(n.a, x, y));
        case Op::cos: return std::cos(eval(n.a, x, y));
        case Op::exp: return std::exp(eval(n.a, x, y));
        case Op::abs: return std::abs(eval(n.a, x, y));
    }
    return 0.0;
}

double Expression::operator()(double x, double y) const {
    return eval(static_cast<int>(nodes_.size()) - 1, x, y);
}

}  // namespace pxlap
