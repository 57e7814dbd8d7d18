#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pxlap {

// Arithmetic expression in the spatial variables x and y.
//
// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?          right-associative
//   atom   := number | 'x' | 'y' | func '(' expr ')' | '(' expr ')'
//   func   := 'sin' | 'cos' | 'exp' | 'abs'
//
// Parse errors throw std::invalid_argument with the character position.
// An Expression is immutable after parsing and cheap to copy.
class Expression {
public:
    static Expression parse(std::string_view text);

    double operator()(double x, double y = 0.0) const;

    const std::string& text() const { return text_; }

private:
    enum class Op : unsigned char {
        constant, var_x, var_y,
        add, sub, mul, div, pow, neg,
        sin, cos, exp, abs,
    };
    struct Node {
        Op op;
        double value;   // constant
        int a, b;       // child indices into nodes_
    };

    double eval(int node, double x, double y) const;

    std::vector<Node> nodes_;   // root is nodes_.back()
    std::string text_;

    friend class ExprParser;
};

}  // namespace pxlap
