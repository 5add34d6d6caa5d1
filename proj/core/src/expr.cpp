#include "ebr/expr.hpp"

#include <cctype>
#include <set>

namespace ebr {

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    ExprPtr parse() {
        ExprPtr e = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) +
                         "\"");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static ExprPtr node(Expr::Kind k, ExprPtr a, ExprPtr b = nullptr) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->args.push_back(std::move(a));
        if (b) e->args.push_back(std::move(b));
        return e;
    }

    ExprPtr sum() {
        ExprPtr lhs = product();
        for (;;) {
            if (eat('+'))
                lhs = node(Expr::Kind::Add, lhs, product());
            else if (eat('-'))
                lhs = node(Expr::Kind::Sub, lhs, product());
            else
                return lhs;
        }
    }

    ExprPtr product() {
        ExprPtr lhs = unary();
        for (;;) {
            if (eat('*'))
                lhs = node(Expr::Kind::Mul, lhs, unary());
            else if (eat('/'))
                lhs = node(Expr::Kind::Div, lhs, unary());
            else
                return lhs;
        }
    }

    ExprPtr unary() {
        if (eat('-')) return node(Expr::Kind::Neg, unary());
        if (eat('+')) return unary();
        return power();
    }

    ExprPtr power() {
        ExprPtr base = primary();
        if (!eat('^')) return base;
        skip();
        bool neg = eat('-');
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Pow;
        e->exponent = std::stol(std::string(s_.substr(start, pos_ - start)));
        if (neg) e->exponent = -e->exponent;
        e->args.push_back(std::move(base));
        return e;
    }

    ExprPtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        auto e = std::make_shared<Expr>();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            e->kind = Expr::Kind::Num;
            e->num = Integer(std::string(s_.substr(start, pos_ - start)));
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                    s_[pos_] == '\''))
                ++pos_;
            e->kind = Expr::Kind::Var;
            e->name = std::string(s_.substr(start, pos_ - start));
            return e;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

void collect(const Expr& e, std::set<std::string>& out) {
    if (e.kind == Expr::Kind::Var) out.insert(e.name);
    for (const auto& a : e.args) collect(*a, out);
}

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::vector<std::string> expr_variables(const Expr& e) {
    std::set<std::string> names;
    collect(e, names);
    return {names.begin(), names.end()};
}

std::vector<std::string> split_top_level(std::string_view text, char sep) {
    std::string s(text);
    auto trim = [](std::string& x) {
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.front()))) x.erase(0, 1);
        while (!x.empty() && std::isspace(static_cast<unsigned char>(x.back()))) x.pop_back();
    };
    trim(s);
    // strip one enclosing pair only when it spans the whole string
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        int depth = 0;
        bool spans = true;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')') --depth;
            if (depth == 0 && i + 1 < s.size()) {
                spans = false;
                break;
            }
        }
        if (spans) s = s.substr(1, s.size() - 2);
    }
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth < 0) throw ParseError("unbalanced parentheses in \"" + std::string(text) + "\"");
        if (c == sep && depth == 0) {
            trim(cur);
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (depth != 0) throw ParseError("unbalanced parentheses in \"" + std::string(text) + "\"");
    trim(cur);
    parts.push_back(cur);
    return parts;
}

}  // namespace ebr
