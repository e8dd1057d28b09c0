#pragma once

#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "rational.hpp"

namespace subriem {

using Monomial = std::array<int, 3>;

/// Polynomial in (x, y, z) with exact rational coefficients; zero terms are never stored.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c) { add(Monomial{0, 0, 0}, c); }
    Poly(int c) : Poly(Rational(c)) {}

    static Poly monomial(const Monomial& m, const Rational& c = 1) {
        Poly p;
        p.add(m, c);
        return p;
    }
    static Poly x() { return monomial({1, 0, 0}); }
    static Poly y() { return monomial({0, 1, 0}); }
    static Poly z() { return monomial({0, 0, 1}); }

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Poly diff(int var) const {
        Poly r;
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial e = m;
            e[var] -= 1;
            r.add(e, c * m[var]);
        }
        return r;
    }

    /// Largest weighted degree with weights (1, 1, 2); -1 for the zero polynomial.
    int weighted_degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m[0] + m[1] + 2 * m[2]);
        return d;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }
    Poly operator-() const {
        Poly r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [m, c] : a.terms_)
            for (const auto& [n, d] : b.terms_) r.add({m[0] + n[0], m[1] + n[1], m[2] + n[2]}, c * d);
        return r;
    }
    friend Poly operator*(const Rational& s, const Poly& p) { return Poly(s) * p; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            Rational a = c;
            if (first) {
                if (a < 0) os << "-";
            } else {
                os << (a < 0 ? " - " : " + ");
            }
            if (a < 0) a = -a;
            const bool constant = m[0] == 0 && m[1] == 0 && m[2] == 0;
            if (a != 1 || constant) os << a.str() << (constant ? "" : "*");
            bool sep = false;
            const char* names = "xyz";
            for (int k = 0; k < 3; ++k) {
                if (m[k] == 0) continue;
                if (sep) os << "*";
                os << names[k];
                if (m[k] > 1) os << "^" << m[k];
                sep = true;
            }
            first = false;
        }
        return os.str();
    }

private:
    std::map<Monomial, Rational> terms_;
};

/// Monomials of weighted degree at most d, weights (1, 1, 2).
inline std::vector<Monomial> weighted_monomials(int d) {
    std::vector<Monomial> out;
    for (int c = 0; 2 * c <= d; ++c)
        for (int a = 0; a + 2 * c <= d; ++a)
            for (int b = 0; a + b + 2 * c <= d; ++b) out.push_back({a, b, c});
    return out;
}

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<int> row_reduce(RationalMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        const Rational inv = 1 / m[r][c];
        for (int k = c; k < cols; ++k) m[r][k] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (int k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(RationalMatrix m) { return static_cast<int>(row_reduce(m).size()); }

/// Basis of {v : m v = 0}.
inline std::vector<std::vector<Rational>> nullspace(RationalMatrix m, int cols) {
    if (m.empty()) m.push_back(std::vector<Rational>(cols, Rational(0)));
    const auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Gaussian-rational complex number.
struct QComplex {
    Rational re, im;

    QComplex(const Rational& r = 0, const Rational& i = 0) : re(r), im(i) {}
    QComplex(int r) : re(r), im(0) {}

    QComplex conj() const { return {re, -im}; }
    friend QComplex operator+(const QComplex& a, const QComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend QComplex operator-(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend QComplex operator*(const QComplex& a, const QComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    QComplex& operator+=(const QComplex& o) { return *this = *this + o; }
    friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
};

inline const QComplex kI{0, 1};

using QMatrix = std::array<std::array<QComplex, 3>, 3>;

inline QMatrix unit_matrix(int i, int j, const QComplex& c = 1) {
    QMatrix m{};
    m[i][j] = c;
    return m;
}

inline QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    QMatrix r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

inline QMatrix operator-(const QMatrix& a, const QMatrix& b) {
    QMatrix r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

inline QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    QMatrix r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

inline QMatrix operator*(const QComplex& s, const QMatrix& a) {
    QMatrix r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = s * a[i][j];
    return r;
}

inline QMatrix adjoint(const QMatrix& a) {
    QMatrix r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[j][i].conj();
    return r;
}

inline QComplex trace(const QMatrix& a) { return a[0][0] + a[1][1] + a[2][2]; }

inline bool is_zero(const QMatrix& a) {
    for (const auto& row : a)
        for (const auto& v : row)
            if (!(v == QComplex{})) return false;
    return true;
}

/// Real coordinates (re, im) of the nine entries.
inline std::vector<Rational> flatten(const QMatrix& a) {
    std::vector<Rational> v;
    for (const auto& row : a)
        for (const auto& e : row) {
            v.push_back(e.re);
            v.push_back(e.im);
        }
    return v;
}

}  // namespace subriem
