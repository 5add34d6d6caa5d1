#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ebr/arith.hpp"

namespace ebr {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arithmetic expression tree: integers, identifiers, + - * / and integer
// powers. Identifiers may contain letters, digits, '_' and '\''.
struct Expr {
    enum class Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow };
    Kind kind = Kind::Num;
    Integer num;
    std::string name;
    long exponent = 0;
    std::vector<std::shared_ptr<const Expr>> args;
};

using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parse_expr(std::string_view text);
std::vector<std::string> expr_variables(const Expr& e);

// Splits "(f, g)" style text at top-level commas after stripping one pair of
// enclosing parentheses if present.
std::vector<std::string> split_top_level(std::string_view text, char sep = ',');

template <class T>
T eval_expr(const Expr& e, const std::function<T(const std::string&)>& var,
            const std::function<T(const Integer&)>& num) {
    switch (e.kind) {
        case Expr::Kind::Num: return num(e.num);
        case Expr::Kind::Var: return var(e.name);
        case Expr::Kind::Neg: return -eval_expr<T>(*e.args[0], var, num);
        case Expr::Kind::Add:
            return eval_expr<T>(*e.args[0], var, num) + eval_expr<T>(*e.args[1], var, num);
        case Expr::Kind::Sub:
            return eval_expr<T>(*e.args[0], var, num) - eval_expr<T>(*e.args[1], var, num);
        case Expr::Kind::Mul:
            return eval_expr<T>(*e.args[0], var, num) * eval_expr<T>(*e.args[1], var, num);
        case Expr::Kind::Div:
            return eval_expr<T>(*e.args[0], var, num) / eval_expr<T>(*e.args[1], var, num);
        case Expr::Kind::Pow: {
            T base = eval_expr<T>(*e.args[0], var, num);
            long n = e.exponent;
            T one = num(Integer(1));
            if (n < 0) {
                base = one / base;
                n = -n;
            }
            T out = one;
            for (long i = 0; i < n; ++i) out = out * base;
            return out;
        }
    }
    throw std::logic_error("eval_expr: bad node");
}

}  // namespace ebr
