#include "plb/expr.hpp"

#include <cctype>
#include <cmath>

namespace plb {

ExprPtr Expr::constant(double v) {
    auto e = std::make_shared<Expr>();
    e->kind_ = Kind::Constant;
    e->value_ = v;
    return e;
}

ExprPtr Expr::variable(int index) {
    auto e = std::make_shared<Expr>();
    e->kind_ = Kind::Variable;
    e->index_ = index;
    return e;
}

ExprPtr Expr::make(Kind k, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind_ = k;
    e->a_ = std::move(a);
    e->b_ = std::move(b);
    return e;
}

double Expr::eval(const Vec& x) const {
    switch (kind_) {
        case Kind::Constant: return value_;
        case Kind::Variable:
            if (index_ >= x.size()) throw DomainError("expression variable out of range");
            return x[index_];
        case Kind::Add: return a_->eval(x) + b_->eval(x);
        case Kind::Sub: return a_->eval(x) - b_->eval(x);
        case Kind::Mul: return a_->eval(x) * b_->eval(x);
        case Kind::Div: return a_->eval(x) / b_->eval(x);
        case Kind::Pow: return std::pow(a_->eval(x), b_->eval(x));
        case Kind::Neg: return -a_->eval(x);
        case Kind::Sin: return std::sin(a_->eval(x));
        case Kind::Cos: return std::cos(a_->eval(x));
        case Kind::Exp: return std::exp(a_->eval(x));
    }
    return 0.0;
}

namespace {
bool is_zero(const ExprPtr& e) {
    return e->kind() == Expr::Kind::Constant && e->value() == 0.0;
}
bool is_one(const ExprPtr& e) {
    return e->kind() == Expr::Kind::Constant && e->value() == 1.0;
}
ExprPtr simplified_add(ExprPtr a, ExprPtr b) {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    return Expr::make(Expr::Kind::Add, a, b);
}
ExprPtr simplified_mul(ExprPtr a, ExprPtr b) {
    if (is_zero(a) || is_zero(b)) return Expr::constant(0.0);
    if (is_one(a)) return b;
    if (is_one(b)) return a;
    return Expr::make(Expr::Kind::Mul, a, b);
}
}  // namespace

ExprPtr Expr::derivative(int axis) const {
    using K = Kind;
    switch (kind_) {
        case K::Constant: return constant(0.0);
        case K::Variable: return constant(index_ == axis ? 1.0 : 0.0);
        case K::Add: return simplified_add(a_->derivative(axis), b_->derivative(axis));
        case K::Sub: {
            auto db = b_->derivative(axis);
            if (is_zero(db)) return a_->derivative(axis);
            return make(K::Sub, a_->derivative(axis), db);
        }
        case K::Mul:
            return simplified_add(simplified_mul(a_->derivative(axis), b_),
                                  simplified_mul(a_, b_->derivative(axis)));
        case K::Div: {
            // (a'b - ab') / b^2
            auto num = make(K::Sub, simplified_mul(a_->derivative(axis), b_),
                            simplified_mul(a_, b_->derivative(axis)));
            return make(K::Div, num, simplified_mul(b_, b_));
        }
        case K::Pow: {
            if (b_->kind() == K::Constant) {
                // c * a^(c-1) * a'
                double c = b_->value();
                if (c == 0.0) return constant(0.0);
                auto power = make(K::Pow, a_, constant(c - 1.0));
                return simplified_mul(constant(c), simplified_mul(power, a_->derivative(axis)));
            }
            // a^b * (b' ln a + b a'/a) — general case via exp(b ln a); ln is not
            // in the grammar, so restrict to constant exponents.
            throw ConfigError("derivative of a^b requires a constant exponent");
        }
        case K::Neg: return make(K::Neg, a_->derivative(axis), nullptr);
        case K::Sin: return simplified_mul(make(K::Cos, a_, nullptr), a_->derivative(axis));
        case K::Cos:
            return simplified_mul(make(K::Neg, make(K::Sin, a_, nullptr), nullptr),
                                  a_->derivative(axis));
        case K::Exp:
            return simplified_mul(make(K::Exp, a_, nullptr), a_->derivative(axis));
    }
    return constant(0.0);
}

std::string Expr::to_string(const std::vector<std::string>& names) const {
    using K = Kind;
    auto wrap = [&](const ExprPtr& e) { return "(" + e->to_string(names) + ")"; };
    switch (kind_) {
        case K::Constant: {
            char buf[32];
            snprintf(buf, sizeof(buf), "%g", value_);
            return buf;
        }
        case K::Variable:
            return index_ < static_cast<int>(names.size()) ? names[index_]
                                                           : "x" + std::to_string(index_ + 1);
        case K::Add: return wrap(a_) + "+" + wrap(b_);
        case K::Sub: return wrap(a_) + "-" + wrap(b_);
        case K::Mul: return wrap(a_) + "*" + wrap(b_);
        case K::Div: return wrap(a_) + "/" + wrap(b_);
        case K::Pow: return wrap(a_) + "^" + wrap(b_);
        case K::Neg: return "-" + wrap(a_);
        case K::Sin: return "sin" + wrap(a_);
        case K::Cos: return "cos" + wrap(a_);
        case K::Exp: return "exp" + wrap(a_);
    }
    return "?";
}

namespace {

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars)
        : text_(text), vars_(vars) {}

    ExprPtr parse() {
        ExprPtr e = expression();
        skip_ws();
        if (pos_ != text_.size())
            throw ConfigError("unexpected trailing input in expression at position " +
                              std::to_string(pos_));
        return e;
    }

private:
    const std::string& text_;
    const std::vector<std::string>& vars_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    bool consume(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr expression() {
        ExprPtr e = term();
        for (;;) {
            if (consume('+'))
                e = Expr::make(Expr::Kind::Add, e, term());
            else if (consume('-'))
                e = Expr::make(Expr::Kind::Sub, e, term());
            else
                return e;
        }
    }
    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                e = Expr::make(Expr::Kind::Mul, e, factor());
            } else if (c == '/') {
                ++pos_;
                e = Expr::make(Expr::Kind::Div, e, factor());
            } else {
                return e;
            }
        }
    }
    ExprPtr factor() {
        // '^' binds tighter than unary minus and associates right.
        if (consume('-')) return Expr::make(Expr::Kind::Neg, factor(), nullptr);
        ExprPtr base = primary();
        if (consume('^')) return Expr::make(Expr::Kind::Pow, base, factor());
        return base;
    }
    ExprPtr primary() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ConfigError("unexpected end of expression");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            ExprPtr e = expression();
            if (!consume(')')) throw ConfigError("missing ')' in expression");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        throw ConfigError("unexpected character '" + std::string(1, c) +
                          "' in expression at position " + std::to_string(pos_));
    }
    ExprPtr number() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                text_[pos_] == 'e' || text_[pos_] == 'E' ||
                ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > start &&
                 (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
            ++pos_;
        try {
            return Expr::constant(std::stod(text_.substr(start, pos_ - start)));
        } catch (const std::exception&) {
            throw ConfigError("malformed number in expression at position " +
                              std::to_string(start));
        }
    }
    ExprPtr identifier() {
        size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_'))
            ++pos_;
        std::string name = text_.substr(start, pos_ - start);
        if (name == "pi") return Expr::constant(M_PI);
        if (name == "sin" || name == "cos" || name == "exp") {
            if (!consume('(')) throw ConfigError(name + " requires parentheses");
            ExprPtr arg = expression();
            if (!consume(')')) throw ConfigError("missing ')' after " + name);
            Expr::Kind k = name == "sin"   ? Expr::Kind::Sin
                           : name == "cos" ? Expr::Kind::Cos
                                           : Expr::Kind::Exp;
            return Expr::make(k, arg, nullptr);
        }
        for (size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return Expr::variable(static_cast<int>(i));
        throw ConfigError("unknown identifier '" + name + "' in expression");
    }
};

}  // namespace

ExprPtr parse_expression(const std::string& text, const std::vector<std::string>& variables) {
    return Parser(text, variables).parse();
}

std::vector<std::string> chart_variable_names(int dim) {
    std::vector<std::string> names;
    for (int i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i + 1));
    return names;
}

}  // namespace plb
