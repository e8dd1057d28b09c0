#pragma once

#include <array>
#include <cctype>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "jet.hpp"

namespace subriem {

/// Immutable closed-form scalar expression in x, y, z with complex-rational constants.
class Expr {
public:
    enum class Op { constant, variable, add, sub, mul, div, neg, exp, sin, cos, log, pow };

    Expr() : Expr(constant(0)) {}
    Expr(int v) : Expr(constant(Rational(v))) {}
    Expr(const Rational& v) : Expr(constant(v)) {}

    static Expr constant(const Rational& re, const Rational& im = 0) {
        auto n = std::make_shared<Node>();
        n->op = Op::constant;
        n->re = re;
        n->im = im;
        return Expr(std::move(n));
    }
    static Expr imaginary_unit() { return constant(0, 1); }
    static Expr variable(int v) {
        auto n = std::make_shared<Node>();
        n->op = Op::variable;
        n->index = v;
        return Expr(std::move(n));
    }
    static Expr x() { return variable(0); }
    static Expr y() { return variable(1); }
    static Expr z() { return variable(2); }

    Op op() const { return node_->op; }
    bool is_constant() const { return node_->op == Op::constant; }
    bool is_zero() const { return is_constant() && node_->re == 0 && node_->im == 0; }
    bool is_one() const { return is_constant() && node_->re == 1 && node_->im == 0; }
    const Rational& real_part() const { return node_->re; }
    const Rational& imag_part() const { return node_->im; }
    int index() const { return node_->index; }
    const std::vector<Expr>& args() const { return node_->args; }

    friend Expr operator+(const Expr& a, const Expr& b) {
        if (a.is_constant() && b.is_constant())
            return constant(a.node_->re + b.node_->re, a.node_->im + b.node_->im);
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        return make(Op::add, {a, b});
    }
    friend Expr operator-(const Expr& a, const Expr& b) {
        if (a.is_constant() && b.is_constant())
            return constant(a.node_->re - b.node_->re, a.node_->im - b.node_->im);
        if (b.is_zero()) return a;
        if (a.is_zero()) return -b;
        return make(Op::sub, {a, b});
    }
    friend Expr operator*(const Expr& a, const Expr& b) {
        if (a.is_constant() && b.is_constant()) {
            const auto &p = *a.node_, &q = *b.node_;
            return constant(p.re * q.re - p.im * q.im, p.re * q.im + p.im * q.re);
        }
        if (a.is_zero() || b.is_zero()) return constant(0);
        if (a.is_one()) return b;
        if (b.is_one()) return a;
        return make(Op::mul, {a, b});
    }
    friend Expr operator/(const Expr& a, const Expr& b) {
        if (b.is_zero()) throw DomainViolation("division by the zero expression");
        if (a.is_constant() && b.is_constant()) {
            const auto &p = *a.node_, &q = *b.node_;
            Rational den = q.re * q.re + q.im * q.im;
            return constant((p.re * q.re + p.im * q.im) / den, (p.im * q.re - p.re * q.im) / den);
        }
        if (a.is_zero()) return constant(0);
        if (b.is_one()) return a;
        return make(Op::div, {a, b});
    }
    Expr operator-() const {
        if (is_constant()) return constant(-node_->re, -node_->im);
        if (node_->op == Op::neg) return node_->args[0];
        return make(Op::neg, {*this});
    }
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }

    friend Expr exp(const Expr& a) {
        if (a.is_zero()) return constant(1);
        return make(Op::exp, {a});
    }
    friend Expr sin(const Expr& a) {
        if (a.is_zero()) return constant(0);
        return make(Op::sin, {a});
    }
    friend Expr cos(const Expr& a) {
        if (a.is_zero()) return constant(1);
        return make(Op::cos, {a});
    }
    friend Expr log(const Expr& a) {
        if (a.is_one()) return constant(0);
        return make(Op::log, {a});
    }
    friend Expr pow(const Expr& a, int n) {
        if (n == 0) return constant(1);
        if (n == 1) return a;
        if (a.is_constant() && a.node_->im == 0 && n > 0)
        {
            Rational r = 1;
            for (int k = 0; k < n; ++k) r *= a.node_->re;
            return constant(r);
        }
        auto e = make(Op::pow, {a});
        std::const_pointer_cast<Node>(e.node_)->index = n;
        return e;
    }

    /// Symbolic partial derivative with respect to variable v.
    Expr diff(int v) const {
        const Node& n = *node_;
        switch (n.op) {
            case Op::constant: return constant(0);
            case Op::variable: return constant(n.index == v ? 1 : 0);
            case Op::add: return n.args[0].diff(v) + n.args[1].diff(v);
            case Op::sub: return n.args[0].diff(v) - n.args[1].diff(v);
            case Op::mul: return n.args[0].diff(v) * n.args[1] + n.args[0] * n.args[1].diff(v);
            case Op::div: {
                const Expr &a = n.args[0], &b = n.args[1];
                return (a.diff(v) * b - a * b.diff(v)) / pow(b, 2);
            }
            case Op::neg: return -n.args[0].diff(v);
            case Op::exp: return *this * n.args[0].diff(v);
            case Op::sin: return cos(n.args[0]) * n.args[0].diff(v);
            case Op::cos: return -(sin(n.args[0]) * n.args[0].diff(v));
            case Op::log: return n.args[0].diff(v) / n.args[0];
            case Op::pow:
                return Expr(Rational(n.index)) * pow(n.args[0], n.index - 1) * n.args[0].diff(v);
        }
        return constant(0);
    }

    template <class T>
    Jet<T> jet(const std::array<T, 3>& p, int order) const {
        std::unordered_map<const Node*, Jet<T>> memo;
        return eval<T>(p, order, memo);
    }

    template <class T>
    T value(const std::array<T, 3>& p) const {
        return jet<T>(p, 0).value();
    }

    /// Prefix text form, e.g. "(* (exp y) (cos z))".
    std::string str() const {
        std::ostringstream os;
        print(os);
        return os.str();
    }

    static Expr parse(std::string_view text);

private:
    struct Node {
        Op op = Op::constant;
        Rational re = 0, im = 0;
        int index = 0;
        std::vector<Expr> args;
    };
    std::shared_ptr<const Node> node_;

    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static Expr make(Op op, std::vector<Expr> args) {
        auto n = std::make_shared<Node>();
        n->op = op;
        n->args = std::move(args);
        return Expr(std::move(n));
    }

    template <class T>
    Jet<T> eval(const std::array<T, 3>& p, int order, std::unordered_map<const Node*, Jet<T>>& memo) const {
        if (auto it = memo.find(node_.get()); it != memo.end()) return it->second;
        const Node& n = *node_;
        Jet<T> r;
        auto arg = [&](int k) { return n.args[k].template eval<T>(p, order, memo); };
        switch (n.op) {
            case Op::constant: r = Jet<T>(order, from_complex_rational<T>(n.re, n.im)); break;
            case Op::variable: r = Jet<T>::variable(n.index, p[n.index], order); break;
            case Op::add: r = arg(0) + arg(1); break;
            case Op::sub: r = arg(0) - arg(1); break;
            case Op::mul: r = arg(0) * arg(1); break;
            case Op::div: r = arg(0) / arg(1); break;
            case Op::neg: r = -arg(0); break;
            case Op::exp: r = subriem::exp(arg(0)); break;
            case Op::sin: r = subriem::sin(arg(0)); break;
            case Op::cos: r = subriem::cos(arg(0)); break;
            case Op::log: r = subriem::log(arg(0)); break;
            case Op::pow: r = subriem::pow(arg(0), n.index); break;
        }
        memo.emplace(node_.get(), r);
        return r;
    }

    static void print_rational(std::ostream& os, const Rational& q) { os << q.str(); }

    void print(std::ostream& os) const {
        const Node& n = *node_;
        auto unary = [&](const char* name) {
            os << '(' << name << ' ';
            n.args[0].print(os);
            os << ')';
        };
        auto binary = [&](const char* name) {
            os << '(' << name << ' ';
            n.args[0].print(os);
            os << ' ';
            n.args[1].print(os);
            os << ')';
        };
        switch (n.op) {
            case Op::constant:
                if (n.im == 0) {
                    print_rational(os, n.re);
                } else {
                    if (n.re != 0) {
                        os << "(+ ";
                        print_rational(os, n.re);
                        os << ' ';
                    }
                    if (n.im == 1) {
                        os << 'i';
                    } else {
                        os << "(* ";
                        print_rational(os, n.im);
                        os << " i)";
                    }
                    if (n.re != 0) os << ')';
                }
                break;
            case Op::variable: os << "xyz"[n.index]; break;
            case Op::add: binary("+"); break;
            case Op::sub: binary("-"); break;
            case Op::mul: binary("*"); break;
            case Op::div: binary("/"); break;
            case Op::neg: unary("neg"); break;
            case Op::exp: unary("exp"); break;
            case Op::sin: unary("sin"); break;
            case Op::cos: unary("cos"); break;
            case Op::log: unary("log"); break;
            case Op::pow:
                os << "(pow ";
                n.args[0].print(os);
                os << ' ' << n.index << ')';
                break;
        }
    }
};

inline Expr operator+(const Expr& a, int b) { return a + Expr(b); }
inline Expr operator+(int a, const Expr& b) { return Expr(a) + b; }
inline Expr operator-(const Expr& a, int b) { return a - Expr(b); }
inline Expr operator-(int a, const Expr& b) { return Expr(a) - b; }
inline Expr operator*(const Expr& a, int b) { return a * Expr(b); }
inline Expr operator*(int a, const Expr& b) { return Expr(a) * b; }
inline Expr operator*(const Rational& a, const Expr& b) { return Expr(a) * b; }
inline Expr operator/(const Expr& a, int b) { return a / Expr(b); }

namespace detail {

class PrefixParser {
public:
    explicit PrefixParser(std::string_view s) : s_(s) {}

    Expr parse_all() {
        Expr e = parse_expr();
        skip_space();
        if (pos_ != s_.size()) fail("trailing input");
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("expression: " + what + " at offset " + std::to_string(pos_));
    }

    void skip_space() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string atom() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != '(' && s_[pos_] != ')' &&
               !std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_) fail("expected a token");
        return std::string(s_.substr(start, pos_ - start));
    }

    Expr parse_expr() {
        skip_space();
        if (pos_ >= s_.size()) fail("unexpected end");
        if (s_[pos_] == ')') fail("unexpected ')'");
        if (s_[pos_] != '(') return leaf(atom());
        ++pos_;
        std::string head = atom();
        std::vector<Expr> args;
        std::vector<std::string> raw;
        for (;;) {
            skip_space();
            if (pos_ >= s_.size()) fail("missing ')'");
            if (s_[pos_] == ')') {
                ++pos_;
                break;
            }
            if (head == "pow" && args.size() == 1) {
                raw.push_back(atom());
                continue;
            }
            args.push_back(parse_expr());
        }
        return build(head, args, raw);
    }

    Expr leaf(const std::string& t) {
        if (t == "x") return Expr::x();
        if (t == "y") return Expr::y();
        if (t == "z") return Expr::z();
        if (t == "i") return Expr::imaginary_unit();
        return Expr(parse_rational(t));
    }

    Expr build(const std::string& head, const std::vector<Expr>& a, const std::vector<std::string>& raw) {
        auto need = [&](std::size_t n) {
            if (a.size() != n) fail("'" + head + "' expects " + std::to_string(n) + " argument(s)");
        };
        if (head == "+" || head == "*") {
            if (a.empty()) fail("'" + head + "' needs arguments");
            Expr r = a[0];
            for (std::size_t k = 1; k < a.size(); ++k) r = head == "+" ? r + a[k] : r * a[k];
            return r;
        }
        if (head == "-") {
            if (a.empty()) fail("'-' needs arguments");
            if (a.size() == 1) return -a[0];
            Expr r = a[0];
            for (std::size_t k = 1; k < a.size(); ++k) r = r - a[k];
            return r;
        }
        if (head == "/") { need(2); return a[0] / a[1]; }
        if (head == "neg") { need(1); return -a[0]; }
        if (head == "exp") { need(1); return exp(a[0]); }
        if (head == "sin") { need(1); return sin(a[0]); }
        if (head == "cos") { need(1); return cos(a[0]); }
        if (head == "log") { need(1); return log(a[0]); }
        if (head == "pow") {
            if (a.size() != 1 || raw.size() != 1) fail("'pow' expects a base and an integer exponent");
            std::size_t used = 0;
            int n = 0;
            try {
                n = std::stoi(raw[0], &used);
            } catch (const std::exception&) {
                fail("non-integer exponent");
            }
            if (used != raw[0].size()) fail("non-integer exponent");
            return pow(a[0], n);
        }
        fail("unknown operator '" + head + "'");
    }
};

}  // namespace detail

inline Expr Expr::parse(std::string_view text) { return detail::PrefixParser(text).parse_all(); }

}  // namespace subriem
