#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace subriem::heisenberg {

/// Polynomial vector field c[0] d/dx + c[1] d/dy + c[2] d/dz.
struct PolyVectorField {
    std::array<Poly, 3> c;

    Poly apply(const Poly& f) const { return c[0] * f.diff(0) + c[1] * f.diff(1) + c[2] * f.diff(2); }

    friend PolyVectorField operator+(const PolyVectorField& a, const PolyVectorField& b) {
        return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]}};
    }
    friend PolyVectorField operator-(const PolyVectorField& a, const PolyVectorField& b) {
        return {{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2]}};
    }
    friend PolyVectorField operator*(const Rational& s, const PolyVectorField& a) {
        return {{s * a.c[0], s * a.c[1], s * a.c[2]}};
    }
    friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) { return a.c == b.c; }

    bool is_zero() const { return c[0].is_zero() && c[1].is_zero() && c[2].is_zero(); }
};

/// [X, Y] = XY - YX on functions.
inline PolyVectorField bracket(const PolyVectorField& X, const PolyVectorField& Y) {
    PolyVectorField r;
    for (int k = 0; k < 3; ++k) r.c[k] = X.apply(Y.c[k]) - Y.apply(X.c[k]);
    return r;
}

inline const Rational kHalf = make_rational(1, 2);

/// f0 = dz, f1 = dy + (x/2) dz, f2 = dx - (y/2) dz.
inline PolyVectorField frame_field(int i) {
    switch (i) {
        case 0: return {{Poly(), Poly(), Poly(1)}};
        case 1: return {{Poly(), Poly(1), kHalf * Poly::x()}};
        case 2: return {{Poly(1), Poly(), -(kHalf * Poly::y())}};
    }
    throw Error("frame index out of range");
}

inline Poly f(int i, const Poly& u) { return frame_field(i).apply(u); }

struct FrameDecomposition {
    Poly a0, a1, a2;
};

inline FrameDecomposition to_frame_components(const PolyVectorField& X) {
    FrameDecomposition d;
    d.a2 = X.c[0];
    d.a1 = X.c[1];
    d.a0 = X.c[2] - kHalf * Poly::x() * d.a1 + kHalf * Poly::y() * d.a2;
    return d;
}

inline PolyVectorField reconstruct(const FrameDecomposition& d) {
    return {{d.a2, d.a1, d.a0 + kHalf * Poly::x() * d.a1 - kHalf * Poly::y() * d.a2}};
}

struct ConformalResiduals {
    std::optional<Poly> eta, omega;
    /// f1(a0) - a2, f2(a0) + a1, f1(a1) + eta, f2(a2) + eta, f2(a1) - omega, f1(a2) + omega,
    /// with eta and omega taken as the averages of their two defining expressions.
    std::array<Poly, 6> residuals;

    bool conformal() const {
        for (const auto& r : residuals)
            if (!r.is_zero()) return false;
        return true;
    }
};

inline ConformalResiduals conformal_residuals(const PolyVectorField& X) {
    const auto d = to_frame_components(X);
    const Poly f1a1 = f(1, d.a1), f2a2 = f(2, d.a2), f2a1 = f(2, d.a1), f1a2 = f(1, d.a2);
    const Poly eta = -(kHalf * (f1a1 + f2a2));
    const Poly omega = kHalf * (f2a1 - f1a2);
    ConformalResiduals out;
    out.residuals = {f(1, d.a0) - d.a2, f(2, d.a0) + d.a1, f1a1 + eta, f2a2 + eta, f2a1 - omega, f1a2 + omega};
    if (out.residuals[2].is_zero()) out.eta = eta;
    if (out.residuals[4].is_zero()) out.omega = omega;
    return out;
}

/// The integrability system for eta: f0 f1, f0 f2, f1 f1, f2 f2 and f1 f2 + f2 f1 applied to eta.
inline std::array<Poly, 5> eta_conditions(const Poly& eta) {
    return {f(0, f(1, eta)), f(0, f(2, eta)), f(1, f(1, eta)), f(2, f(2, eta)), f(1, f(2, eta)) + f(2, f(1, eta))};
}

inline bool eta_admissible(const Poly& eta) {
    for (const auto& c : eta_conditions(eta))
        if (!c.is_zero()) return false;
    return true;
}

inline bool is_affine(const Poly& p) {
    for (const auto& [m, c] : p.terms())
        if (m[0] + m[1] + m[2] > 1) return false;
    return true;
}

/// F1 ... F8, index 0 ... 7.
inline std::array<PolyVectorField, 8> generators() {
    const Poly x = Poly::x(), y = Poly::y(), z = Poly::z();
    const Rational q = make_rational(1, 4), s = make_rational(1, 16);
    const Poly xx = x * x, yy = y * y;
    return {{
        {{Poly(), Poly(), Poly(1)}},
        {{Poly(1), Poly(), kHalf * y}},
        {{Poly(), Poly(1), -(kHalf * x)}},
        {{-y, x, Poly()}},
        {{-x, -y, Rational(-2) * z}},
        {{kHalf * (Rational(3) * yy - xx), Rational(2) * (z - x * y), -(x * z) - q * xx * y - q * yy * y}},
        {{Rational(-2) * (z + x * y), kHalf * (Rational(3) * xx - yy), -(y * z) + q * xx * x + q * x * yy}},
        {{-(x * z) - q * xx * y - q * yy * y, -(y * z) + q * x * yy + q * xx * x,
          -(z * z) + s * (xx + yy) * (xx + yy)}},
    }};
}

/// Euler field x dx + y dy + 2 z dz.
inline PolyVectorField euler_field() { return {{Poly::x(), Poly::y(), Rational(2) * Poly::z()}}; }

/// w with [E, X] = w X for the Euler field E, if X is homogeneous.
inline std::optional<int> weight(const PolyVectorField& X) {
    const auto b = bracket(euler_field(), X);
    for (int w = -4; w <= 4; ++w)
        if (b == Rational(w) * X) return w;
    return std::nullopt;
}

using Labels = std::array<std::string, 8>;

inline const Labels kTableLabels = {"f0", "f1", "f2", "L0_1", "L0_2", "L1_1", "L1_2", "L"};
inline const std::array<int, 8> kTableWeights = {-2, -1, -1, 0, 0, 1, 1, 2};

/// Structure constants c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.
struct GradedTable {
    Labels labels;
    std::array<std::array<std::array<Rational, 8>, 8>, 8> c{};
    std::array<int, 8> weights{};

    std::array<Rational, 8> bracket(const std::array<Rational, 8>& u, const std::array<Rational, 8>& v) const {
        std::array<Rational, 8> r{};
        for (int i = 0; i < 8; ++i) {
            if (u[i] == 0) continue;
            for (int j = 0; j < 8; ++j) {
                if (v[j] == 0) continue;
                for (int k = 0; k < 8; ++k) r[k] += u[i] * v[j] * c[i][j][k];
            }
        }
        return r;
    }

    static std::array<Rational, 8> basis(int i) {
        std::array<Rational, 8> e{};
        e[i] = 1;
        return e;
    }

    bool antisymmetric() const {
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                for (int k = 0; k < 8; ++k)
                    if (c[i][j][k] != -c[j][i][k]) return false;
        return true;
    }

    /// Number of basis triples violating the Jacobi identity.
    int jacobi_failures() const {
        int bad = 0;
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j)
                for (int k = j + 1; k < 8; ++k) {
                    const auto a = basis(i), b = basis(j), d = basis(k);
                    auto s = bracket(bracket(a, b), d);
                    const auto t = bracket(bracket(b, d), a), u = bracket(bracket(d, a), b);
                    bool ok = true;
                    for (int m = 0; m < 8; ++m) ok = ok && s[m] + t[m] + u[m] == 0;
                    if (!ok) ++bad;
                }
        return bad;
    }

    /// Whether [e_i, e_j] lies in the layer of weight w_i + w_j.
    bool respects_grading() const {
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                for (int k = 0; k < 8; ++k)
                    if (c[i][j][k] != 0 && weights[k] != weights[i] + weights[j]) return false;
        return true;
    }
};

/// The abstract graded algebra h^-2 + h^-1 + h^0 + h^1 + h^2.
inline GradedTable tanaka_table() {
    enum { f0, f1, f2, L01, L02, L11, L12, L };
    GradedTable t;
    t.labels = kTableLabels;
    t.weights = kTableWeights;
    auto set = [&](int i, int j, int k, int v) {
        t.c[i][j][k] = v;
        t.c[j][i][k] = -v;
    };
    set(f2, f1, f0, 1);
    set(L01, f2, f2, 1);
    set(L01, f1, f1, 1);
    set(L01, f0, f0, 2);
    set(L02, f2, f1, 1);
    set(L02, f1, f2, -1);
    set(L11, f2, L01, 1);
    set(L11, f1, L02, 3);
    set(L11, f0, f1, -2);
    set(L12, f2, L02, -3);
    set(L12, f1, L01, 1);
    set(L12, f0, f2, 2);
    set(L, f1, L11, -1);
    set(L, f0, L01, 2);
    set(L, f2, L12, 1);
    set(L11, L01, L11, 1);
    set(L11, L02, L12, -1);
    set(L12, L01, L12, 1);
    set(L12, L02, L11, 1);
    set(L11, L12, L, 2);
    set(L, L01, L, 2);
    if (t.jacobi_failures() != 0) throw NotClosed("graded table violates the Jacobi identity");
    return t;
}

/// Coordinates of the generators in the abstract table basis: F1 -> f0, F2 -> f2, F3 -> -f1, F4 -> L0_2,
/// F5 -> L0_1, F6 -> -L1_1, F7 -> L1_2, F8 -> -L/2.
inline std::array<std::array<Rational, 8>, 8> correspondence() {
    std::array<std::array<Rational, 8>, 8> m{};
    m[0][0] = 1;
    m[1][2] = 1;
    m[2][1] = -1;
    m[3][4] = 1;
    m[4][3] = 1;
    m[5][5] = -1;
    m[6][6] = 1;
    m[7][7] = -kHalf;
    return m;
}

/// Coordinates of V in span{fields}; throws NotClosed when V lies outside.
inline std::vector<Rational> span_coordinates(const std::vector<PolyVectorField>& fields, const PolyVectorField& V) {
    std::map<std::pair<int, Monomial>, int> row_of;
    auto row = [&](int comp, const Monomial& m) {
        auto [it, inserted] = row_of.emplace(std::make_pair(comp, m), static_cast<int>(row_of.size()));
        return it->second;
    };
    for (const auto& F : fields)
        for (int k = 0; k < 3; ++k)
            for (const auto& [m, c] : F.c[k].terms()) row(k, m);
    for (int k = 0; k < 3; ++k)
        for (const auto& [m, c] : V.c[k].terms()) row(k, m);
    const int n = static_cast<int>(fields.size());
    RationalMatrix A(row_of.size(), std::vector<Rational>(n + 1, Rational(0)));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < 3; ++k)
            for (const auto& [m, c] : fields[j].c[k].terms()) A[row(k, m)][j] = c;
    for (int k = 0; k < 3; ++k)
        for (const auto& [m, c] : V.c[k].terms()) A[row(k, m)][n] = c;
    const auto pivots = row_reduce(A);
    if (!pivots.empty() && pivots.back() == n) throw NotClosed("vector field lies outside the span");
    if (static_cast<int>(pivots.size()) != n) throw NotClosed("spanning fields are linearly dependent");
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = A[r][n];
    return x;
}

struct BracketReport {
    GradedTable table;  // structure constants in the basis of the given fields
    int dimension = 0;
    bool closed = false;
    /// Transported constants agree with the abstract table on every pair.
    bool table_match = false;
    /// +1 when the correspondence is a homomorphism, -1 for an anti-homomorphism, 0 otherwise.
    int orientation = 0;
    int mismatched_pairs = 0;
    std::array<std::optional<int>, 8> weights{};
    bool weights_match = false;
};

inline BracketReport bracket_table(const std::array<PolyVectorField, 8>& fields) {
    const std::vector<PolyVectorField> span(fields.begin(), fields.end());
    BracketReport rep;
    rep.table.labels = {"F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8"};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            const auto x = span_coordinates(span, bracket(fields[i], fields[j]));
            for (int k = 0; k < 8; ++k) rep.table.c[i][j][k] = x[k];
        }
    rep.dimension = 8;
    rep.closed = true;

    rep.weights_match = true;
    for (int i = 0; i < 8; ++i) {
        rep.weights[i] = weight(fields[i]);
        if (rep.weights[i]) rep.table.weights[i] = *rep.weights[i];
        int image = 0;
        for (int k = 0; k < 8; ++k)
            if (correspondence()[i][k] != 0) image = k;
        rep.weights_match = rep.weights_match && rep.weights[i] == kTableWeights[image];
    }

    const auto T = tanaka_table();
    const auto P = correspondence();
    int hom = 0, anti = 0;
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j) {
            std::array<Rational, 8> image{};
            for (int k = 0; k < 8; ++k)
                for (int m = 0; m < 8; ++m) image[m] += rep.table.c[i][j][k] * P[k][m];
            const auto target = T.bracket(P[i], P[j]);
            bool same = true, opposite = true;
            for (int m = 0; m < 8; ++m) {
                same = same && image[m] == target[m];
                opposite = opposite && image[m] == -target[m];
            }
            if (same) ++hom;
            if (opposite) ++anti;
            if (!same) ++rep.mismatched_pairs;
        }
    rep.table_match = rep.mismatched_pairs == 0;
    rep.orientation = hom == 28 ? 1 : anti == 28 ? -1 : 0;
    return rep;
}

struct Su21Report {
    std::array<QMatrix, 8> images;
    bool commutators_match = false;
    bool traceless = false;
    bool independent = false;
    QMatrix J{};
    int J_solution_dimension = 0;
    int positive = 0, negative = 0, zero = 0;
    bool signature_21 = false;
    bool invariant = false;
};

namespace detail {

/// Sign changes in a coefficient sequence, zeros skipped.
inline int sign_changes(const std::vector<Rational>& coeffs) {
    int changes = 0, last = 0;
    for (const auto& c : coeffs) {
        const int s = c > 0 ? 1 : c < 0 ? -1 : 0;
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace detail

/// Matrices of the table basis in sl(3, C), and the invariant Hermitian form.
inline Su21Report su21_realization() {
    Su21Report rep;
    auto E = [](int i, int j, const QComplex& c = 1) { return unit_matrix(i - 1, j - 1, c); };
    const QComplex i = kI, third = QComplex(make_rational(1, 3));
    rep.images = {
        E(1, 3, QComplex(0, 2)),
        E(1, 2, QComplex(0, -1)) + E(2, 3, i),
        E(1, 2) + E(2, 3),
        E(1, 1) - E(3, 3),
        third * (E(1, 1, QComplex(0, -1)) + E(2, 2, QComplex(0, 2)) + E(3, 3, QComplex(0, -1))),
        QComplex(-1) * (E(2, 1) + E(3, 2)),
        E(2, 1, QComplex(0, -1)) + E(3, 2, i),
        E(3, 1, i),
    };

    const auto T = tanaka_table();
    rep.commutators_match = true;
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            QMatrix expected{};
            for (int k = 0; k < 8; ++k)
                if (T.c[a][b][k] != 0) expected = expected + QComplex(T.c[a][b][k]) * rep.images[k];
            const QMatrix comm = rep.images[a] * rep.images[b] - rep.images[b] * rep.images[a];
            if (!is_zero(comm - expected)) rep.commutators_match = false;
        }

    rep.traceless = true;
    for (const auto& M : rep.images) rep.traceless = rep.traceless && trace(M) == QComplex{};

    RationalMatrix flat;
    for (const auto& M : rep.images) flat.push_back(flatten(M));
    rep.independent = rank(flat) == 8;

    // Hermitian J parametrized by 9 reals: three diagonal entries, then (re, im) of J01, J02, J12.
    auto hermitian = [](const std::vector<Rational>& p) {
        QMatrix J{};
        J[0][0] = p[0];
        J[1][1] = p[1];
        J[2][2] = p[2];
        const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
        for (int k = 0; k < 3; ++k) {
            const auto [r, c] = pairs[k];
            J[r][c] = QComplex(p[3 + 2 * k], p[4 + 2 * k]);
            J[c][r] = J[r][c].conj();
        }
        return J;
    };
    RationalMatrix system;
    std::vector<std::vector<Rational>> columns;
    for (int k = 0; k < 9; ++k) {
        std::vector<Rational> p(9, Rational(0));
        p[k] = 1;
        const QMatrix Jk = hermitian(p);
        std::vector<Rational> col;
        for (const auto& M : rep.images) {
            const auto v = flatten(adjoint(M) * Jk + Jk * M);
            col.insert(col.end(), v.begin(), v.end());
        }
        columns.push_back(std::move(col));
    }
    system.assign(columns[0].size(), std::vector<Rational>(9, Rational(0)));
    for (int k = 0; k < 9; ++k)
        for (std::size_t r = 0; r < columns[k].size(); ++r) system[r][k] = columns[k][r];
    const auto sol = nullspace(system, 9);
    rep.J_solution_dimension = static_cast<int>(sol.size());
    if (sol.empty()) return rep;
    rep.J = hermitian(sol[0]);

    rep.invariant = true;
    for (const auto& M : rep.images) rep.invariant = rep.invariant && is_zero(adjoint(M) * rep.J + rep.J * M);

    // det(t - J) = t^3 - e1 t^2 + e2 t - e3 with real coefficients for Hermitian J.
    const auto& J = rep.J;
    const Rational e1 = J[0][0].re + J[1][1].re + J[2][2].re;
    auto minor = [&](int a, int b) { return (J[a][a] * J[b][b] - J[a][b] * J[b][a]).re; };
    const Rational e2 = minor(0, 1) + minor(0, 2) + minor(1, 2);
    const QComplex det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                         J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                         J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    const Rational e3 = det.re;
    // all roots are real, so Descartes' rule counts them exactly
    rep.positive = detail::sign_changes({1, -e1, e2, -e3});
    rep.negative = detail::sign_changes({-1, -e1, -e2, -e3});
    rep.zero = 3 - rep.positive - rep.negative;
    rep.signature_21 = rep.zero == 0 && ((rep.positive == 2 && rep.negative == 1) ||
                                         (rep.positive == 1 && rep.negative == 2));
    return rep;
}

struct ConformalSolution {
    int max_weighted_degree = 0;
    std::vector<PolyVectorField> basis;
};

/// All conformal fields whose frame component a0 has weighted degree at most d, by exact linear algebra.
/// With isometries_only the extra condition eta = 0 is imposed.
inline ConformalSolution solve_conformal_fields(int max_weighted_degree, bool isometries_only = false) {
    const int d = max_weighted_degree;
    const auto m0 = weighted_monomials(d), m1 = weighted_monomials(d - 1);
    const int n0 = static_cast<int>(m0.size()), n1 = static_cast<int>(m1.size());
    const int unknowns = n0 + 2 * n1;

    auto unknown_field = [&](int u) {
        FrameDecomposition a;
        if (u < n0)
            a.a0 = Poly::monomial(m0[u]);
        else if (u < n0 + n1)
            a.a1 = Poly::monomial(m1[u - n0]);
        else
            a.a2 = Poly::monomial(m1[u - n0 - n1]);
        return a;
    };
    const int n_cond = isometries_only ? 5 : 4;
    auto conditions = [](const FrameDecomposition& a) {
        return std::array<Poly, 5>{f(1, a.a0) - a.a2, f(2, a.a0) + a.a1, f(1, a.a1) - f(2, a.a2),
                                   f(2, a.a1) + f(1, a.a2), f(1, a.a1)};
    };

    std::map<std::pair<int, Monomial>, int> row_of;
    std::vector<std::array<Poly, 5>> images;
    for (int u = 0; u < unknowns; ++u) {
        images.push_back(conditions(unknown_field(u)));
        for (int e = 0; e < n_cond; ++e)
            for (const auto& [m, c] : images.back()[e].terms())
                row_of.emplace(std::make_pair(e, m), static_cast<int>(row_of.size()));
    }
    RationalMatrix A(row_of.size(), std::vector<Rational>(unknowns, Rational(0)));
    for (int u = 0; u < unknowns; ++u)
        for (int e = 0; e < n_cond; ++e)
            for (const auto& [m, c] : images[u][e].terms()) A[row_of.at({e, m})][u] = c;

    ConformalSolution out;
    out.max_weighted_degree = d;
    for (const auto& v : nullspace(std::move(A), unknowns)) {
        FrameDecomposition a;
        for (int u = 0; u < unknowns; ++u) {
            if (v[u] == 0) continue;
            const auto one = unknown_field(u);
            a.a0 += v[u] * one.a0;
            a.a1 += v[u] * one.a1;
            a.a2 += v[u] * one.a2;
        }
        out.basis.push_back(reconstruct(a));
    }
    return out;
}

/// Dimension of span(a) + span(b) compared with each; equal spans give (n, n, n).
inline std::array<int, 3> span_ranks(const std::vector<PolyVectorField>& a, const std::vector<PolyVectorField>& b) {
    std::map<std::pair<int, Monomial>, int> col_of;
    auto collect = [&](const std::vector<PolyVectorField>& fs) {
        for (const auto& F : fs)
            for (int k = 0; k < 3; ++k)
                for (const auto& [m, c] : F.c[k].terms())
                    col_of.emplace(std::make_pair(k, m), static_cast<int>(col_of.size()));
    };
    collect(a);
    collect(b);
    auto rows = [&](const std::vector<PolyVectorField>& fs) {
        RationalMatrix M;
        for (const auto& F : fs) {
            std::vector<Rational> r(col_of.size(), Rational(0));
            for (int k = 0; k < 3; ++k)
                for (const auto& [m, c] : F.c[k].terms()) r[col_of.at({k, m})] = c;
            M.push_back(std::move(r));
        }
        return M;
    };
    RationalMatrix A = rows(a), B = rows(b), U = A;
    U.insert(U.end(), B.begin(), B.end());
    return {rank(A), rank(B), rank(U)};
}

struct Certificate {
    int dimension = 0;
    bool table_match = false;
    int orientation = 0;
    bool tanaka_jacobi = false;
    bool grading = false;
    bool generators_conformal = false;
    bool eta_types = false;
    bool isometry_kernel = false;
    bool su21_signature = false;
    std::array<int, 3> su21_inertia{};  // positive, negative, zero eigenvalue counts of the invariant form
    bool su21_commutators = false;
    bool su21_traceless = false;
    int oracle_dimension = 0;
    bool oracle_span = false;

    bool passed() const {
        return dimension == 8 && table_match && tanaka_jacobi && grading && generators_conformal && eta_types &&
               isometry_kernel && su21_signature && su21_commutators && su21_traceless && oracle_dimension == 8 &&
               oracle_span;
    }
};

/// Expected eta of F1 ... F8: zero for the isometries, then 1, x, y, z.
inline std::array<Poly, 8> expected_eta() {
    return {Poly(), Poly(), Poly(), Poly(), Poly(1), Poly::x(), Poly::y(), Poly::z()};
}

/// Full verification of the conformal algebra of the Heisenberg group.
inline Certificate verify(int oracle_degree = 4) {
    Certificate cert;
    const auto F = generators();
    const auto eta = expected_eta();
    cert.generators_conformal = cert.eta_types = true;
    for (int k = 0; k < 8; ++k) {
        const auto r = conformal_residuals(F[k]);
        cert.generators_conformal = cert.generators_conformal && r.conformal();
        cert.eta_types = cert.eta_types && r.eta && *r.eta == eta[k] && eta_admissible(*r.eta);
    }
    try {
        const auto rep = bracket_table(F);
        cert.dimension = rep.dimension;
        cert.table_match = rep.table_match;
        cert.orientation = rep.orientation;
        cert.grading = rep.weights_match;
    } catch (const NotClosed&) {
        cert.dimension = 0;
    }
    const auto T = tanaka_table();
    cert.tanaka_jacobi = T.antisymmetric() && T.jacobi_failures() == 0 && T.respects_grading();

    const auto su = su21_realization();
    cert.su21_signature = su.signature_21 && su.invariant && su.J_solution_dimension == 1;
    cert.su21_inertia = {su.positive, su.negative, su.zero};
    cert.su21_commutators = su.commutators_match && su.independent;
    cert.su21_traceless = su.traceless;

    const auto sol = solve_conformal_fields(oracle_degree);
    cert.oracle_dimension = static_cast<int>(sol.basis.size());
    const auto ranks = span_ranks(sol.basis, std::vector<PolyVectorField>(F.begin(), F.end()));
    cert.oracle_span = ranks[0] == 8 && ranks[1] == 8 && ranks[2] == 8;

    const auto kernel = solve_conformal_fields(oracle_degree, true);
    const auto r = span_ranks(kernel.basis, {F[0], F[1], F[2], F[3]});
    cert.isometry_kernel = r[0] == 4 && r[1] == 4 && r[2] == 4;
    return cert;
}

}  // namespace subriem::heisenberg
