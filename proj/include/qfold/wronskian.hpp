#pragma once

#include <stdexcept>
#include <vector>

#include "alphabet.hpp"
#include "partition.hpp"
#include "qexpr.hpp"

namespace qfold {

/// Casoratian block determinant data: sets B in the bosonic block, F in the
/// fermionic one, integer exponent sets R, S, overall shift xi.
struct WronskianSpec {
    IndexSet B, F;
    std::vector<int> R, S;
    HalfInt xi{};
};

inline std::vector<int> int_range(int a, int b) {  // <a,b> = {a..b}, empty if b < a
    std::vector<int> out;
    for (int k = a; k <= b; ++k) out.push_back(k);
    return out;
}

namespace detail {

/// Determinant of a matrix of single-term entries (empty matrix gives 1).
inline QExpr term_det(const std::vector<std::vector<QExpr>>& m) {
    int n = (int)m.size();
    QExpr det;
    std::vector<int> cols(n);
    for (int i = 0; i < n; ++i) cols[i] = i;
    auto rec = [&](auto&& self, int row, int sign, const QExpr& acc) -> void {
        if (acc.is_zero()) return;
        if (row == n) {
            det += Rational(sign) * acc;
            return;
        }
        for (int c = row; c < n; ++c) {
            std::swap(cols[row], cols[c]);
            self(self, row + 1, c == row ? sign : -sign, acc * m[row][cols[row]]);
            std::swap(cols[row], cols[c]);
        }
    };
    rec(rec, 0, 1, QExpr::one());
    return det;
}

}  // namespace detail

/// The sparse block determinant Delta^{B,R,[xi]}_{F,S}.
inline QExpr wronskian_delta(const WronskianSpec& spec) {
    if (spec.B.size() + spec.R.size() != spec.F.size() + spec.S.size())
        throw std::invalid_argument("wronskian_delta needs |B|+|R| = |F|+|S|");
    int n = (int)(spec.B.size() + spec.R.size());
    std::vector<std::vector<QExpr>> m(n, std::vector<QExpr>(n));
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            bool top = row < (int)spec.B.size();
            bool left = col < (int)spec.F.size();
            Term t;
            if (top && left) {
                int b = spec.B[row], f = spec.F[col];
                t.mul_q(QSymbol({b, f}, Shift(spec.xi, 0)));
                auto [d, sign] = z_diff(b, f);
                t.mul_s(d, -1);
                t.coeff *= sign;
            } else if (top && !left) {
                int b = spec.B[row];
                int j = spec.S[col - spec.F.size()];
                t.mul_z(b, HalfInt::whole(j - 1));
                t.mul_q(QSymbol({b}, Shift(spec.xi + HalfInt::whole(2 * j - 1), 0)));
            } else if (!top && left) {
                int i = spec.R[row - spec.B.size()];
                int f = spec.F[col];
                t.coeff = Rational((i - 1) % 2 ? -1 : 1);
                t.mul_z(f, HalfInt::whole(i - 1));
                t.mul_q(QSymbol({f}, Shift(spec.xi - HalfInt::whole(2 * i - 1), 0)));
            } else {
                m[row][col] = QExpr::zero();
                continue;
            }
            m[row][col] = QExpr(t);
        }
    }
    return detail::term_det(m);
}

/// Supercharacter denominator D(B|F) as a single term of scalar factors.
inline Term denominator_term(const IndexSet& B, const IndexSet& F) {
    Term t;
    for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = i + 1; j < B.size(); ++j) {
            auto [d, sign] = z_diff(B[i], B[j]);
            t.mul_s(d);
            t.coeff *= sign;
        }
    for (std::size_t i = 0; i < F.size(); ++i)
        for (std::size_t j = i + 1; j < F.size(); ++j) {
            auto [d, sign] = z_diff(F[j], F[i]);
            t.mul_s(d);
            t.coeff *= sign;
        }
    for (int b : B)
        for (int f : F) {
            auto [d, sign] = z_diff(b, f);
            t.mul_s(d, -1);
            t.coeff *= sign;
        }
    return t;
}

namespace detail {

struct XiData {
    int xi;                   // (mm,nn)-index of mu
    std::vector<int> rset;    // r_k, k = 1..nn-mm+xi-1
    std::vector<int> sset;    // s_l, l = 1..xi-1
};

inline XiData xi_data(int mm, int nn, const Partition& mu) {
    XiData d;
    d.xi = xi_index(mm, nn, mu);
    Partition muc = mu.conjugate();
    for (int k = 1; k <= nn - mm + d.xi - 1; ++k) d.rset.push_back(muc.part(nn - mm + d.xi - k) + k - d.xi + 1);
    for (int l = 1; l <= d.xi - 1; ++l) d.sset.push_back(mu.part(d.xi - l) + mm - nn - d.xi + l + 1);
    return d;
}

}  // namespace detail

/// Normalization Psi^{(mm,nn)}_mu of the Wronskian T-function.
inline Term psi_norm(int mm, int nn, const Partition& mu) {
    auto d = detail::xi_data(mm, nn, mu);
    int mu1 = mu.width();
    int mu1c = mu.conjugate().width();
    int base = -mm + nn - mu1 + mu1c;
    Term t;
    t.mul_q(QSymbol({}, Shift::of(mm - nn + mu1 - mu1c)));
    t.mul_q(QSymbol({}, Shift::of(base)), 1 + (-mm - 1 + d.xi));
    for (int i = 1; i <= (int)d.rset.size(); ++i)
        t.mul_q(QSymbol({}, Shift::of(base - 2 * d.rset[i - 1] + 2)), -1);
    for (int j = 1; j <= (int)d.sset.size(); ++j)
        t.mul_q(QSymbol({}, Shift::of(base + 2 * d.sset[j - 1] - 2)), -1);
    return t;
}

/// Phi_mu / Phi_rectangle ratio (only Q_empty factors survive).
inline Term phi_ratio(int mm, int nn, const Partition& mu) {
    int mu1 = mu.width();
    int mu1c = mu.conjugate().width();
    Term t;
    t.mul_q(QSymbol({}, Shift::of(-mu1 - mu1c + 2 * mu.part(mu1c) + mm - nn)));
    t.mul_q(QSymbol({}, Shift::of(mu1 - mu1c + mm - nn)), -1);
    for (int j = 1; j <= mu1c - 1; ++j)
        if (mu.part(j) - mu.part(j + 1) > 0)
            t.mul_q(QSymbol({}, Shift::of(-mu1 + mu1c - 2 * j + 2 * mu.part(j) + mm - nn)));
    return t;
}

/// Wronskian-type T-function sfT_mu^{B,F} for a nonempty partition
/// (Young-diagram labelled Weyl-type determinant formula).
inline QExpr wronskian_T(const IndexSet& B, const IndexSet& F, const Partition& mu) {
    int mm = (int)B.size(), nn = (int)F.size();
    auto d = detail::xi_data(mm, nn, mu);
    int mu1 = mu.width();
    int mu1c = mu.conjugate().width();

    long sgn_exp = (long)(mm + nn + 1) * (d.xi + 1) + (long)(mm - nn) * (mm + nn - 1) / 2;
    Rational sign((sgn_exp % 2 + 2) % 2 ? -1 : 1);

    WronskianSpec ws;
    ws.B = B;
    ws.F = F;
    ws.R = d.rset;
    ws.S = d.sset;
    ws.xi = HalfInt::whole(-mm + nn + mu1c - mu1);

    Term pre = phi_ratio(mm, nn, mu) * psi_norm(mm, nn, mu) * denominator_term(B, F).inverse();
    pre.coeff *= sign;
    return pre * wronskian_delta(ws);
}

/// sfT_empty^{B,F} via the determinant (equals Q_{B,F} Q_empty^{[mm-nn]}).
inline QExpr wronskian_T_empty(const IndexSet& B, const IndexSet& F) {
    return wronskian_T(B, F, Partition{});
}

/// Rectangular dispatcher sfT_{a,m} including the degenerate border cases.
inline QExpr wronskian_T_rect(const IndexSet& B, const IndexSet& F, int a, int m) {
    int mm = (int)B.size(), nn = (int)F.size();
    if (a >= 1 && m >= 1) return wronskian_T(B, F, Partition::rectangle(a, m));
    if (a >= 0 && m == 0) {
        Term t;
        t.mul_q(QSymbol({}, Shift::of(mm - nn - a)));
        t.mul_q(QSymbol({}, Shift::of(mm - nn + a)), -1);
        return t * wronskian_T_empty(B, F).shifted(Shift::of(a));
    }
    if (a == 0) {
        Term t;
        t.mul_q(QSymbol({}, Shift::of(mm - nn + m)));
        t.mul_q(QSymbol({}, Shift::of(mm - nn - m)), -1);
        return t * wronskian_T_empty(B, F).shifted(Shift::of(-m));
    }
    return QExpr::zero();
}

/// Laplace-expanded forms of the rectangular T-function. `a` may be a
/// half-integer parameter for the analytically continued family; the z
/// exponents then live in (1/2)Z, which the twist monomials support.
inline QExpr laplace_T_row(const IndexSet& B, const IndexSet& F, HalfInt a, int m) {
    // valid regime: a >= m + mm - nn
    int mm = (int)B.size(), nn = (int)F.size();
    QExpr out;
    std::vector<int> idx(F.size());
    for (std::size_t i = 0; i < F.size(); ++i) idx[i] = (int)i;
    std::vector<int> choose(m >= 0 ? m : 0);
    auto rec = [&](auto&& self, int start, int k) -> void {
        if (k == m) {
            IndexSet J;
            for (int c = 0; c < m; ++c) J.push_back(F[choose[c]]);
            IndexSet Frest;
            for (int f : F)
                if (std::find(J.begin(), J.end(), f) == J.end()) Frest.push_back(f);
            Term t;
            HalfInt pw = a - HalfInt::whole(m + mm - nn);
            for (int j : J) {
                if (!pw.is_integer()) throw std::domain_error("half power of -z needs integer exponent");
                t.coeff *= Rational(pw.as_integer() % 2 ? -1 : 1);
                t.mul_z(j, pw);
            }
            for (int b : B)
                for (int j : J) {
                    auto [df, sign] = z_diff(b, j);
                    t.mul_s(df);
                    t.coeff *= sign;
                }
            for (int i : Frest)
                for (int j : J) {
                    auto [df, sign] = z_diff(i, j);
                    t.mul_s(df, -1);
                    t.coeff *= sign;
                }
            IndexSet BFrest = B;
            for (int f : Frest) BFrest.push_back(f);
            t.mul_q(QSymbol(sorted_set(BFrest), Shift(a, 0)));
            t.mul_q(QSymbol(J, Shift(-a + HalfInt::whole(mm - nn), 0)));
            out += QExpr(t);
            return;
        }
        for (int c = start; c <= (int)F.size() - (m - k); ++c) {
            choose[k] = c;
            self(self, c + 1, k + 1);
        }
    };
    if (m < 0 || m > (int)F.size()) return QExpr::zero();
    rec(rec, 0, 0);
    return out;
}

inline QExpr laplace_T_col(const IndexSet& B, const IndexSet& F, int a, HalfInt m) {
    // valid regime: a <= m + mm - nn
    int mm = (int)B.size(), nn = (int)F.size();
    QExpr out;
    if (a < 0 || a > (int)B.size()) return QExpr::zero();
    std::vector<int> choose(a);
    auto rec = [&](auto&& self, int start, int k) -> void {
        if (k == a) {
            IndexSet I;
            for (int c = 0; c < a; ++c) I.push_back(B[choose[c]]);
            IndexSet Brest;
            for (int b : B)
                if (std::find(I.begin(), I.end(), b) == I.end()) Brest.push_back(b);
            Term t;
            HalfInt pw = m - HalfInt::whole(a - mm + nn);
            for (int i : I) t.mul_z(i, pw);
            for (int i : I)
                for (int f : F) {
                    auto [df, sign] = z_diff(i, f);
                    t.mul_s(df);
                    t.coeff *= sign;
                }
            for (int i : I)
                for (int j : Brest) {
                    auto [df, sign] = z_diff(i, j);
                    t.mul_s(df, -1);
                    t.coeff *= sign;
                }
            IndexSet BFrest = Brest;
            for (int f : F) BFrest.push_back(f);
            t.mul_q(QSymbol(I, Shift(m + HalfInt::whole(mm - nn), 0)));
            t.mul_q(QSymbol(sorted_set(BFrest), Shift(-m, 0)));
            out += QExpr(t);
            return;
        }
        for (int c = start; c <= (int)B.size() - (a - k); ++c) {
            choose[k] = c;
            self(self, c + 1, k + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

/// Asymptotic/typical layer: the shifted identity and its limit form.
/// typ_sh_lhs shifts the enlarged diagram mu + (nn^c); typ_sh_rhs is the
/// factorized right-hand side. Both are plain expressions to compare.
inline QExpr typ_sh_lhs(const IndexSet& B, const IndexSet& F, const Partition& mu, int c) {
    std::vector<int> parts;
    int nn = (int)F.size();
    Partition muc = mu.conjugate();
    int rows = muc.width();
    for (int i = 1; i <= rows; ++i) parts.push_back(mu.part(i) + nn);
    for (int i = rows; i < c; ++i) parts.push_back(nn);
    return wronskian_T(B, F, Partition(parts)).shifted(Shift::of(rows - c));
}

inline QExpr typ_sh_rhs(const IndexSet& B, const IndexSet& F, const Partition& mu, int c) {
    int mm = (int)B.size();
    int mu1 = mu.width();
    int mu1c = mu.conjugate().width();
    Term t;
    for (int f : F) {
        t.coeff *= Rational((c - mm) % 2 ? -1 : 1);
        t.mul_z(f, HalfInt::whole(c - mm));
    }
    for (int b : B)
        for (int f : F) {
            auto [d, sign] = z_diff(b, f);
            t.mul_s(d);
            t.coeff *= sign;
        }
    t.mul_q(QSymbol({}, Shift::of(mm - mu1 - mu1c + 2 * mu.part(mu1c))), -1);
    t.mul_q(QSymbol(F, Shift::of(mm - (int)F.size() - mu1 + mu1c - 2 * c)));
    return t * wronskian_T(B, {}, mu);
}

/// Spinorial prefactor: prod_b (z_b^{1/2} + z_b^{-1/2}) (z_b - z_f)(1 - (z_b z_f)^{-1}).
inline Term spinorial_prefactor(int r, int s) {
    Term t;
    for (int b = 1; b <= r; ++b) t.mul_s(z_half_sum(b));
    for (int b = 1; b <= r; ++b)
        for (int f = 2 * r + 1; f <= 2 * r + s; ++f) {
            auto [d, sign] = z_diff(b, f);
            t.mul_s(d);
            t.coeff *= sign;
            t.mul_s(z_prod_m1(b, f));
            t.mul_z(b, HalfInt::whole(-1));
            t.mul_z(f, HalfInt::whole(-1));
        }
    return t;
}

/// Spinorial building block S_mu (the c -> infinity limit of the shifted
/// family, in its factorized form).
inline QExpr spinorial_S(int r, int s, const Partition& mu) {
    IndexSet B;
    for (int b = 1; b <= 2 * r; ++b) B.push_back(b);
    QExpr T = mu.empty() ? wronskian_T_empty(B, {}) : wronskian_T(B, {}, mu);
    return spinorial_prefactor(r, s) * T;
}

}  // namespace qfold
