#include "reflectode/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

namespace reflectode {
namespace {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Call };
enum class Fn { Cos, Sin, Cosh, Sinh, Exp, Ln, Abs, Arctan, Bump, Step };

struct Node {
    Op op = Op::Const;
    double value = 0.0;           // Const
    int arg0 = -1, arg1 = -1;     // children
    Fn fn = Fn::Cos;              // Call
    std::size_t offset = 0;       // source position, for diagnostics
};

} // namespace

struct ForcingExpr::Impl {
    std::string source;
    std::vector<Node> nodes;
    int root = -1;
    std::vector<double> breakpoints;
    std::vector<double> singular_points;

    double eval(int idx, double t) const {
        const Node& nd = nodes[static_cast<std::size_t>(idx)];
        switch (nd.op) {
        case Op::Const: return nd.value;
        case Op::Var: return t;
        case Op::Add: return eval(nd.arg0, t) + eval(nd.arg1, t);
        case Op::Sub: return eval(nd.arg0, t) - eval(nd.arg1, t);
        case Op::Mul: return eval(nd.arg0, t) * eval(nd.arg1, t);
        case Op::Div: return eval(nd.arg0, t) / eval(nd.arg1, t);
        case Op::Pow: return std::pow(eval(nd.arg0, t), eval(nd.arg1, t));
        case Op::Neg: return -eval(nd.arg0, t);
        case Op::Call: {
            switch (nd.fn) {
            case Fn::Cos: return std::cos(eval(nd.arg0, t));
            case Fn::Sin: return std::sin(eval(nd.arg0, t));
            case Fn::Cosh: return std::cosh(eval(nd.arg0, t));
            case Fn::Sinh: return std::sinh(eval(nd.arg0, t));
            case Fn::Exp: return std::exp(eval(nd.arg0, t));
            case Fn::Ln: return std::log(eval(nd.arg0, t));
            case Fn::Abs: return std::abs(eval(nd.arg0, t));
            case Fn::Arctan: return std::atan(eval(nd.arg0, t));
            case Fn::Bump: {
                const double eps = nodes[static_cast<std::size_t>(nd.arg0)].value;
                if (t < 0.0 || t > eps) return 0.0;
                return 12.0 * t * (eps - t);
            }
            case Fn::Step: {
                const double lo = nodes[static_cast<std::size_t>(nd.arg0)].value;
                const double hi = nodes[static_cast<std::size_t>(nd.arg1)].value;
                return (t >= lo && t <= hi) ? 1.0 : 0.0;
            }
            }
            return 0.0;
        }
        }
        return 0.0;
    }
};

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::shared_ptr<ForcingExpr::Impl> run() {
        auto impl = std::make_shared<ForcingExpr::Impl>();
        impl_ = impl.get();
        impl->source.assign(text_.begin(), text_.end());
        impl->root = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        extract_metadata(impl->root);
        tidy(impl->breakpoints);
        tidy(impl->singular_points);
        return impl;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    ForcingExpr::Impl* impl_ = nullptr;

    static void tidy(std::vector<double>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
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

    int add(Node nd) {
        impl_->nodes.push_back(nd);
        return static_cast<int>(impl_->nodes.size()) - 1;
    }

    int parse_expr() {
        int lhs = parse_term();
        for (;;) {
            const std::size_t at = pos_;
            if (eat('+'))
                lhs = add({Op::Add, 0.0, lhs, parse_term(), Fn::Cos, at});
            else if (eat('-'))
                lhs = add({Op::Sub, 0.0, lhs, parse_term(), Fn::Cos, at});
            else
                return lhs;
        }
    }

    int parse_term() {
        int lhs = parse_factor();
        for (;;) {
            const std::size_t at = pos_;
            if (eat('*'))
                lhs = add({Op::Mul, 0.0, lhs, parse_factor(), Fn::Cos, at});
            else if (eat('/'))
                lhs = add({Op::Div, 0.0, lhs, parse_factor(), Fn::Cos, at});
            else
                return lhs;
        }
    }

    int parse_factor() {
        const std::size_t at = pos_;
        if (eat('-')) return add({Op::Neg, 0.0, parse_factor(), -1, Fn::Cos, at});
        return parse_power();
    }

    int parse_power() {
        int base = parse_atom();
        const std::size_t at = pos_;
        if (eat('^')) {
            const int expo = parse_factor(); // right-associative, signed exponents
            return add({Op::Pow, 0.0, base, expo, Fn::Cos, at});
        }
        return base;
    }

    int parse_atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        const std::size_t at = pos_;
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            const int inner = parse_expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            const std::string_view name = text_.substr(pos_, end - pos_);
            pos_ = end;
            if (name == "t") return add({Op::Var, 0.0, -1, -1, Fn::Cos, at});
            return parse_call(name, at);
        }
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    int parse_number() {
        const std::size_t at = pos_;
        double value = 0.0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{}) throw ParseError("malformed number", at);
        pos_ += static_cast<std::size_t>(ptr - begin);
        return add({Op::Const, value, -1, -1, Fn::Cos, at});
    }

    int parse_call(std::string_view name, std::size_t at) {
        Fn fn;
        int arity = 1;
        if (name == "cos") fn = Fn::Cos;
        else if (name == "sin") fn = Fn::Sin;
        else if (name == "cosh") fn = Fn::Cosh;
        else if (name == "sinh") fn = Fn::Sinh;
        else if (name == "exp") fn = Fn::Exp;
        else if (name == "ln") fn = Fn::Ln;
        else if (name == "abs") fn = Fn::Abs;
        else if (name == "arctan") fn = Fn::Arctan;
        else if (name == "bump") fn = Fn::Bump;
        else if (name == "step") { fn = Fn::Step; arity = 2; }
        else
            throw ParseError("unknown identifier '" + std::string(name) + "'", at);

        if (!eat('(')) throw ParseError("expected '(' after function name", pos_);
        int a0 = parse_expr();
        int a1 = -1;
        if (arity == 2) {
            if (!eat(',')) throw ParseError("expected ',' in two-argument call", pos_);
            a1 = parse_expr();
        }
        if (!eat(')')) throw ParseError("expected ')'", pos_);

        if (fn == Fn::Bump) {
            const double eps = const_value(a0, at, "bump argument");
            if (!(eps > 0.0)) throw ParseError("bump width must be positive", at);
            a0 = add({Op::Const, eps, -1, -1, Fn::Cos, at});
            impl_->breakpoints.push_back(0.0);
            impl_->breakpoints.push_back(eps);
        } else if (fn == Fn::Step) {
            double lo = const_value(a0, at, "step edge");
            double hi = const_value(a1, at, "step edge");
            if (lo > hi) std::swap(lo, hi);
            a0 = add({Op::Const, lo, -1, -1, Fn::Cos, at});
            a1 = add({Op::Const, hi, -1, -1, Fn::Cos, at});
            impl_->breakpoints.push_back(lo);
            impl_->breakpoints.push_back(hi);
        }
        return add({Op::Call, 0.0, a0, a1, fn, at});
    }

    bool has_var(int idx) const {
        const Node& nd = impl_->nodes[static_cast<std::size_t>(idx)];
        if (nd.op == Op::Var) return true;
        if (nd.arg0 >= 0 && has_var(nd.arg0)) return true;
        if (nd.arg1 >= 0 && has_var(nd.arg1)) return true;
        return false;
    }

    double const_value(int idx, std::size_t at, const char* what) {
        if (has_var(idx))
            throw ParseError(std::string(what) + " must be constant", at);
        return impl_->eval(idx, 0.0);
    }

    // Affine-in-t detection: returns (alpha, beta) with subtree == alpha*t + beta.
    std::optional<std::pair<double, double>> affine(int idx) const {
        const Node& nd = impl_->nodes[static_cast<std::size_t>(idx)];
        switch (nd.op) {
        case Op::Const: return std::make_pair(0.0, nd.value);
        case Op::Var: return std::make_pair(1.0, 0.0);
        case Op::Neg: {
            auto a = affine(nd.arg0);
            if (!a) return std::nullopt;
            return std::make_pair(-a->first, -a->second);
        }
        case Op::Add: {
            auto a = affine(nd.arg0), b = affine(nd.arg1);
            if (!a || !b) return std::nullopt;
            return std::make_pair(a->first + b->first, a->second + b->second);
        }
        case Op::Sub: {
            auto a = affine(nd.arg0), b = affine(nd.arg1);
            if (!a || !b) return std::nullopt;
            return std::make_pair(a->first - b->first, a->second - b->second);
        }
        case Op::Mul: {
            auto a = affine(nd.arg0), b = affine(nd.arg1);
            if (!a || !b) return std::nullopt;
            if (a->first == 0.0) return std::make_pair(a->second * b->first, a->second * b->second);
            if (b->first == 0.0) return std::make_pair(b->second * a->first, b->second * a->second);
            return std::nullopt;
        }
        case Op::Div: {
            auto a = affine(nd.arg0), b = affine(nd.arg1);
            if (!a || !b || b->first != 0.0 || b->second == 0.0) return std::nullopt;
            return std::make_pair(a->first / b->second, a->second / b->second);
        }
        default: return std::nullopt;
        }
    }

    void extract_metadata(int idx) {
        const Node& nd = impl_->nodes[static_cast<std::size_t>(idx)];
        if (nd.arg0 >= 0) extract_metadata(nd.arg0);
        if (nd.arg1 >= 0) extract_metadata(nd.arg1);

        if (nd.op == Op::Call && nd.fn == Fn::Abs) {
            if (auto af = affine(nd.arg0); af && af->first != 0.0)
                impl_->breakpoints.push_back(-af->second / af->first);
        }
        if (nd.op == Op::Pow && !has_var(nd.arg1)) {
            const double e = impl_->eval(nd.arg1, 0.0);
            if (e < 0.0) {
                const Node& base = impl_->nodes[static_cast<std::size_t>(nd.arg0)];
                if (base.op == Op::Call && base.fn == Fn::Abs) {
                    if (auto af = affine(base.arg0); af && af->first != 0.0) {
                        if (e <= -1.0)
                            throw ParseError("non-integrable singularity: abs(...)^p with p <= -1",
                                             nd.offset);
                        impl_->singular_points.push_back(-af->second / af->first);
                    }
                }
            }
        }
    }
};

} // namespace

double ForcingExpr::operator()(double t) const { return impl_->eval(impl_->root, t); }

const std::string& ForcingExpr::source() const { return impl_->source; }

const std::vector<double>& ForcingExpr::breakpoints() const { return impl_->breakpoints; }

const std::vector<double>& ForcingExpr::singular_points() const {
    return impl_->singular_points;
}

Forcing ForcingExpr::forcing() const {
    Forcing f;
    auto impl = impl_;
    f.h = [impl](double t) { return impl->eval(impl->root, t); };
    f.breakpoints = impl->breakpoints;
    f.singular_points = impl->singular_points;
    return f;
}

ForcingExpr parse_forcing(std::string_view text) {
    Parser parser(text);
    ForcingExpr out;
    out.impl_ = parser.run();
    return out;
}

} // namespace reflectode
