#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace subriem {

inline constexpr int kMaxJetOrder = 10;
inline constexpr int kDefaultJetOrder = 6;

namespace detail {

struct MonomialTable {
    std::vector<std::array<int, 3>> exps;
    std::vector<int> degree;
    std::array<int, kMaxJetOrder + 2> count{};  // count[n]: monomials of degree < n
    int index[kMaxJetOrder + 1][kMaxJetOrder + 1][kMaxJetOrder + 1];
    struct Pair { int i, j, k; };
    std::vector<Pair> pairs;                      // sorted by total degree
    std::array<int, kMaxJetOrder + 2> pair_count{};  // pairs with degree sum < n

    MonomialTable() {
        for (auto& a : index)
            for (auto& b : a)
                for (int& c : b) c = -1;
        for (int d = 0; d <= kMaxJetOrder; ++d) {
            count[d] = static_cast<int>(exps.size());
            for (int a = d; a >= 0; --a)
                for (int b = d - a; b >= 0; --b) {
                    int c = d - a - b;
                    index[a][b][c] = static_cast<int>(exps.size());
                    exps.push_back({a, b, c});
                    degree.push_back(d);
                }
        }
        count[kMaxJetOrder + 1] = static_cast<int>(exps.size());
        for (int s = 0; s <= kMaxJetOrder; ++s) {
            pair_count[s] = static_cast<int>(pairs.size());
            for (int i = 0; i < static_cast<int>(exps.size()); ++i)
                for (int j = 0; j < static_cast<int>(exps.size()); ++j) {
                    if (degree[i] + degree[j] != s) continue;
                    const auto& e = exps[i];
                    const auto& f = exps[j];
                    pairs.push_back({i, j, index[e[0] + f[0]][e[1] + f[1]][e[2] + f[2]]});
                }
        }
        pair_count[kMaxJetOrder + 1] = static_cast<int>(pairs.size());
    }
};

inline const MonomialTable& monomials() {
    static const MonomialTable table;
    return table;
}

inline int monomial_count(int order) { return monomials().count[order + 1]; }

}  // namespace detail

/// Truncated Taylor expansion in three variables about a base point.
/// Coefficient k multiplies (x-p)^a (y-p)^b (z-p)^c for the k-th exponent triple.
template <class T>
class Jet {
public:
    using scalar_type = T;

    Jet() : order_(kMaxJetOrder), c_(detail::monomial_count(kMaxJetOrder), T(0)) {}

    explicit Jet(int order, const T& value = T(0)) : order_(order) {
        check_order(order);
        c_.assign(detail::monomial_count(order), T(0));
        c_[0] = value;
    }

    static Jet variable(int var, const T& at, int order) {
        Jet j(order, at);
        if (order >= 1) j.c_[1 + var] = T(1);
        return j;
    }

    int order() const { return order_; }
    int size() const { return static_cast<int>(c_.size()); }
    const T& operator[](int k) const { return c_[k]; }
    T& operator[](int k) { return c_[k]; }
    const T& value() const { return c_[0]; }

    T coeff(int a, int b, int c) const {
        if (a < 0 || b < 0 || c < 0 || a + b + c > order_) throw OrderExhausted("coefficient beyond jet order");
        return c_[detail::monomials().index[a][b][c]];
    }

    /// Partial derivative with respect to (a,b,c) multi-index at the base point.
    T partial(int a, int b, int c) const {
        T f = coeff(a, b, c);
        for (int k = 2; k <= a; ++k) f *= T(k);
        for (int k = 2; k <= b; ++k) f *= T(k);
        for (int k = 2; k <= c; ++k) f *= T(k);
        return f;
    }

    Jet truncated(int order) const {
        if (order > order_) throw OrderExhausted("cannot raise jet order by truncation");
        Jet r;
        r.order_ = order;
        r.c_.assign(c_.begin(), c_.begin() + detail::monomial_count(order));
        return r;
    }

    Jet derivative(int var) const {
        if (order_ == 0) throw OrderExhausted("derivative of an order-0 jet");
        const auto& t = detail::monomials();
        Jet r(order_ - 1);
        for (int k = 0; k < r.size(); ++k) {
            auto e = t.exps[k];
            int factor = e[var] + 1;
            e[var] += 1;
            r.c_[k] = c_[t.index[e[0]][e[1]][e[2]]] * T(factor);
        }
        return r;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& v : c_) m = std::max(m, magnitude(v));
        return m;
    }

    bool is_zero(double tol) const {
        for (const auto& v : c_)
            if (!subriem::is_zero(v, tol)) return false;
        return true;
    }

    Jet& operator+=(const Jet& o) { return combine(o, T(1)); }
    Jet& operator-=(const Jet& o) { return combine(o, T(-1)); }
    Jet& operator+=(const T& s) { c_[0] += s; return *this; }
    Jet& operator-=(const T& s) { c_[0] -= s; return *this; }
    Jet& operator*=(const T& s) {
        for (auto& v : c_) v *= s;
        return *this;
    }
    Jet& operator/=(const T& s) {
        for (auto& v : c_) v /= s;
        return *this;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this * reciprocal(o); }

    Jet operator-() const {
        Jet r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, const T& s) { return a += s; }
    friend Jet operator+(const T& s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, const T& s) { return a -= s; }
    friend Jet operator-(const T& s, const Jet& a) { return -a + s; }
    friend Jet operator*(Jet a, const T& s) { return a *= s; }
    friend Jet operator*(const T& s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, const T& s) { return a /= s; }
    friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
    friend Jet operator/(const T& s, const Jet& b) { return reciprocal(b) * s; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        const auto& t = detail::monomials();
        int order = std::min(a.order_, b.order_);
        Jet r(order);
        int n = t.pair_count[order + 1];
        for (int p = 0; p < n; ++p) {
            const auto& q = t.pairs[p];
            r.c_[q.k] += a.c_[q.i] * b.c_[q.j];
        }
        return r;
    }

    /// Sum_k d[k]/k! (u - u(p))^k, where d[k] is the k-th derivative of a scalar function at u(p).
    static Jet compose(const Jet& u, const std::vector<T>& d) {
        Jet v = u;
        v.c_[0] = T(0);
        Jet result(u.order_, d[0]);
        Jet power(u.order_, T(1));
        T factorial(1);
        for (int k = 1; k <= u.order_; ++k) {
            power = power * v;
            factorial *= T(k);
            result += power * (d[k] / factorial);
        }
        return result;
    }

private:
    int order_;
    std::vector<T> c_;

    static void check_order(int order) {
        if (order < 0 || order > kMaxJetOrder) throw OrderExhausted("jet order out of range");
    }

    Jet& combine(const Jet& o, const T& sign) {
        if (o.order_ < order_) *this = truncated(o.order_);
        for (int k = 0; k < size(); ++k) c_[k] += sign * o.c_[k];
        return *this;
    }
};

template <class T>
struct scalar_of<Jet<T>> {
    using type = T;
};

template <class T>
Jet<T> reciprocal(const Jet<T>& u) {
    const T u0 = u.value();
    if (is_zero(u0, 0.0)) throw DomainViolation("reciprocal of a jet with zero constant term");
    std::vector<T> d(u.order() + 1);
    T inv = T(1) / u0, acc = inv;
    for (int k = 0; k <= u.order(); ++k) {
        d[k] = acc;
        acc = acc * inv * T(-(k + 1));
    }
    return Jet<T>::compose(u, d);
}

template <class T>
Jet<T> pow(const Jet<T>& u, int n) {
    if (n < 0) return pow(reciprocal(u), -n);
    Jet<T> r(u.order(), T(1)), base = u;
    while (n) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return r;
}

template <class T>
Jet<T> sqrt(const Jet<T>& u) {
    const T u0 = u.value();
    if (is_zero(u0, 0.0)) throw DomainViolation("square root of a jet with zero constant term");
    std::vector<T> d(u.order() + 1);
    T s = scalar_sqrt(u0), inv = T(1) / u0;
    T acc = s;
    T e = T(1) / T(2);
    for (int k = 0; k <= u.order(); ++k) {
        d[k] = acc;
        acc = acc * (e - T(k)) * inv;
    }
    return Jet<T>::compose(u, d);
}

template <class T>
Jet<T> exp(const Jet<T>& u) {
    if constexpr (is_exact_v<T>) {
        if (u.value() != 0) throw NotExact("exp of a rational jet with nonzero value");
        return Jet<T>::compose(u, std::vector<T>(u.order() + 1, T(1)));
    } else {
        using std::exp;
        return Jet<T>::compose(u, std::vector<T>(u.order() + 1, exp(u.value())));
    }
}

template <class T>
Jet<T> log(const Jet<T>& u) {
    if constexpr (is_exact_v<T>) {
        throw NotExact("log of a rational jet");
    } else {
        using std::log;
        const T u0 = u.value();
        if (is_zero(u0, 0.0)) throw DomainViolation("log of a jet with zero constant term");
        std::vector<T> d(u.order() + 1);
        d[0] = log(u0);
        T inv = T(1) / u0, acc = inv;
        for (int k = 1; k <= u.order(); ++k) {
            d[k] = acc;
            acc = acc * inv * T(-k);
        }
        return Jet<T>::compose(u, d);
    }
}

template <class T>
Jet<T> sin(const Jet<T>& u) {
    if constexpr (is_exact_v<T>) {
        throw NotExact("sin of a rational jet");
    } else {
        using std::cos;
        using std::sin;
        const T s = sin(u.value()), c = cos(u.value());
        std::vector<T> d(u.order() + 1);
        const T cycle[4] = {s, c, -s, -c};
        for (int k = 0; k <= u.order(); ++k) d[k] = cycle[k % 4];
        return Jet<T>::compose(u, d);
    }
}

template <class T>
Jet<T> cos(const Jet<T>& u) {
    if constexpr (is_exact_v<T>) {
        throw NotExact("cos of a rational jet");
    } else {
        using std::cos;
        using std::sin;
        const T s = sin(u.value()), c = cos(u.value());
        std::vector<T> d(u.order() + 1);
        const T cycle[4] = {c, -s, -c, s};
        for (int k = 0; k <= u.order(); ++k) d[k] = cycle[k % 4];
        return Jet<T>::compose(u, d);
    }
}

/// u^a for a non-integer exponent, principal branch.
template <class T>
Jet<T> pow(const Jet<T>& u, const T& a) {
    return exp(log(u) * a);
}

}  // namespace subriem
