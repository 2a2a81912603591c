// expr.hpp — tiny arithmetic-expression grammar for catalog coefficients:
// +, -, *, /, ^, sin, cos, exp, numeric constants, pi, named variables.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "plb/core.hpp"

namespace plb {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
public:
    enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Exp };

    static ExprPtr constant(double v);
    static ExprPtr variable(int index);
    static ExprPtr make(Kind k, ExprPtr a, ExprPtr b = nullptr);

    double eval(const Vec& x) const;
    // Partial derivative with respect to variable `axis`, as a new tree.
    ExprPtr derivative(int axis) const;
    std::string to_string(const std::vector<std::string>& names) const;

    Kind kind() const { return kind_; }
    double value() const { return value_; }

private:
    Kind kind_;
    double value_ = 0.0;  // Constant
    int index_ = -1;      // Variable
    ExprPtr a_, b_;
};

// Parses `text` over the given variable names. Throws ConfigError with a
// character position on malformed input.
ExprPtr parse_expression(const std::string& text, const std::vector<std::string>& variables);

// Convenience: variables x1..xd.
std::vector<std::string> chart_variable_names(int dim);

}  // namespace plb
