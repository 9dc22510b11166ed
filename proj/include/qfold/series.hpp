#pragma once

#include <stdexcept>
#include <vector>

#include "qexpr.hpp"
#include "tfunc.hpp"

namespace qfold {

/// Truncated series in the shift operator X, with X f = f^{[2]} X. The
/// coefficient of X^k sits in coeff[k].
class SeriesInX {
public:
    explicit SeriesInX(int order) : coeff_(order + 1) {}

    static SeriesInX one(int order) {
        SeriesInX s(order);
        s.coeff_[0] = QExpr::one();
        return s;
    }

    int order() const { return (int)coeff_.size() - 1; }
    const QExpr& coeff(int k) const { return coeff_.at(k); }
    QExpr& coeff(int k) { return coeff_.at(k); }

    friend SeriesInX operator*(const SeriesInX& a, const SeriesInX& b) {
        int n = std::min(a.order(), b.order());
        SeriesInX out(n);
        for (int j = 0; j <= n; ++j) {
            if (a.coeff_[j].is_zero()) continue;
            for (int k = 0; j + k <= n; ++k) {
                if (b.coeff_[k].is_zero()) continue;
                out.coeff_[j + k] += a.coeff_[j] * b.coeff_[k].shifted(Shift::of(2 * j));
            }
        }
        return out;
    }

    friend SeriesInX operator+(const SeriesInX& a, const SeriesInX& b) {
        int n = std::min(a.order(), b.order());
        SeriesInX out(n);
        for (int k = 0; k <= n; ++k) out.coeff_[k] = a.coeff_[k] + b.coeff_[k];
        return out;
    }
    friend SeriesInX operator-(const SeriesInX& a, const SeriesInX& b) {
        int n = std::min(a.order(), b.order());
        SeriesInX out(n);
        for (int k = 0; k <= n; ++k) out.coeff_[k] = a.coeff_[k] - b.coeff_[k];
        return out;
    }

    /// (1 - f X)^{+1} or its geometric inverse, truncated.
    static SeriesInX linear_factor(int order, const QExpr& f, int expo) {
        SeriesInX out(order);
        out.coeff_[0] = QExpr::one();
        if (expo == 1) {
            if (order >= 1) out.coeff_[1] = Rational(-1) * f;
        } else if (expo == -1) {
            QExpr acc = QExpr::one();
            for (int k = 1; k <= order; ++k) {
                acc = acc * f.shifted(Shift::of(2 * (k - 1)));
                out.coeff_[k] = acc;  // f f^{[2]} ... f^{[2(k-1)]}
            }
        } else {
            throw std::invalid_argument("factor exponent must be +-1");
        }
        return out;
    }

private:
    std::vector<QExpr> coeff_;
};

enum class GenDirection { W, Winv, Wprime, WprimeInv };

/// Ordered products of (1 - X_{I_k} X)^{-+ p_{i_k}} over the first K tuple
/// positions, truncated at `order`. W generates one-row T-functions, Winv
/// the one-column ones; the primed versions reverse the operator ordering
/// (coefficients then multiply negative powers of X, stored at index k).
inline SeriesInX genfun_series(const XFamily& fam, int K, GenDirection dir, int order) {
    const auto& al = fam.alphabet();
    SeriesInX acc = SeriesInX::one(order);
    auto factor = [&](int k, int expo) {
        return SeriesInX::linear_factor(order, x_function(fam, k), expo);
    };
    switch (dir) {
        case GenDirection::W:
            for (int k = K; k >= 1; --k) acc = acc * factor(k, -al.parity(fam.path.at(k)));
            return acc;
        case GenDirection::Winv:
            for (int k = 1; k <= K; ++k) acc = acc * factor(k, al.parity(fam.path.at(k)));
            return acc;
        case GenDirection::Wprime:
        case GenDirection::WprimeInv:
            break;
    }
    // primed versions: X^{-1} f = f^{[-2]} X^{-1}; implement by running the
    // same algebra with the opposite internal shift.
    SeriesInX out = SeriesInX::one(order);
    auto mul_neg = [&](SeriesInX a, const SeriesInX& b) {
        int n = std::min(a.order(), b.order());
        SeriesInX r(n);
        for (int j = 0; j <= n; ++j)
            for (int k = 0; j + k <= n; ++k)
                r.coeff(j + k) += a.coeff(j) * b.coeff(k).shifted(Shift::of(-2 * j));
        return r;
    };
    auto factor_neg = [&](int k, int expo) {
        SeriesInX f(order);
        f.coeff(0) = QExpr::one();
        QExpr x = x_function(fam, k);
        if (expo == 1) {
            if (order >= 1) f.coeff(1) = Rational(-1) * x;
        } else {
            QExpr accx = QExpr::one();
            for (int j = 1; j <= order; ++j) {
                accx = accx * x.shifted(Shift::of(-2 * (j - 1)));
                f.coeff(j) = accx;
            }
        }
        return f;
    };
    if (dir == GenDirection::Wprime) {
        for (int k = 1; k <= K; ++k) out = mul_neg(out, factor_neg(k, -al.parity(fam.path.at(k))));
    } else {
        for (int k = K; k >= 1; --k) out = mul_neg(out, factor_neg(k, al.parity(fam.path.at(k))));
    }
    return out;
}

/// Expected coefficient per the generating-function identities:
/// [X^a] W = calF_{(a)}^{[a-1-mm+nn+M-N]},  [X^a] W^{-1} = (-1)^a calF_{(1^a)}^{[...]}.
inline QExpr genfun_expected_coeff(const XFamily& fam, int K, GenDirection dir, int a) {
    if (a == 0) return QExpr::one();
    const auto& al = fam.alphabet();
    int mm = count_bosons(fam.path, K);
    int nn = K - mm;
    int sh = a - 1 - mm + nn + (al.M() - al.N());
    if (dir == GenDirection::Wprime || dir == GenDirection::WprimeInv) sh = -a + 1 - mm + nn + (al.M() - al.N());
    SkewDiagram shape = (dir == GenDirection::W || dir == GenDirection::Wprime)
                            ? SkewDiagram(Partition{a})
                            : SkewDiagram(Partition(std::vector<int>(a, 1)));
    QExpr F = tableau_T(fam, K, shape).shifted(Shift::of(sh));
    if (dir == GenDirection::Winv || dir == GenDirection::WprimeInv) F = Rational(a % 2 ? -1 : 1) * F;
    return F;
}

/// Discrete zero-curvature condition for the swap of tuple slots a, a+1:
/// both sides as truncated series (the swapped path must stay admissible
/// for the family, e.g. stay symmetric for reduced families).
inline std::pair<SeriesInX, SeriesInX> zcc_sides(const XFamily& fam, const XFamily& swapped, int a,
                                                 int order) {
    const auto& al = fam.alphabet();
    auto fac = [&](const XFamily& f, int k, int expo) {
        return SeriesInX::linear_factor(order, x_function(f, k), expo);
    };
    int pa = al.parity(fam.path.at(a));
    int pb = al.parity(fam.path.at(a + 1));
    SeriesInX lhs = fac(fam, a, pa) * fac(fam, a + 1, pb);
    SeriesInX rhs = fac(swapped, a, pb) * fac(swapped, a + 1, pa);
    return {lhs, rhs};
}

/// The two-term kernel identity behind the Baxter equations: for the border
/// position the combination  frakQ - X_{I_1} frakQ^{[2]}  (p_{i_1} = -1 case)
/// vanishes identically once the exponential prefactor is stripped; we keep
/// z^{-a}-bookkeeping explicit instead of the prefactor.
inline QExpr baxter_kernel_term(const XFamily& fam, int a_pos, bool primed) {
    // frakQ_{I_a} with the e^{-u/2 log z} prefactor dropped; the caller adds
    // z_{i_a}^{-k} per application of X (primed: z^{+k} per X^{-1}).
    const auto& P = fam.path;
    const auto& al = fam.alphabet();
    int MN = al.M() - al.N();
    int p = al.parity(P.at(a_pos));
    auto psum = [&](int k) {
        int s = 0;
        for (int b = 1; b <= k; ++b) s += al.parity(P.at(b));
        return s;
    };
    Term t;
    if (!primed) {
        t.mul_q(QSymbol(P.prefix(a_pos - 1), Shift::of(MN - psum(a_pos - 1) - p - 1)), p);
        t.mul_q(QSymbol(P.prefix(a_pos), Shift::of(MN - psum(a_pos) + p - 1)), -p);
    } else {
        t.mul_q(QSymbol(P.prefix(a_pos), Shift::of(MN - psum(a_pos) + p + 1)), p);
        t.mul_q(QSymbol(P.prefix(a_pos - 1), Shift::of(MN - psum(a_pos - 1) - p + 1)), -p);
    }
    QExpr e{t};
    if (fam.reduction) e = apply_reduction(e, *fam.reduction);
    return e;
}

/// Truncated Baxter residual: sum_{k<=n} [X^k](W-like series) z^{-k} frakQ^{[2k]}
/// minus the telescoped remainder, which must vanish identically.
/// which = W  uses the full W and the kernel at position 1 (p_{i_1} = -1);
/// which = Winv uses W^{-1} and the kernel at position K (p_{i_K} = +1).
inline QExpr baxter_residual(const XFamily& fam, int K, GenDirection which, int order) {
    const auto& al = fam.alphabet();
    int pos = (which == GenDirection::W) ? 1 : K;
    int need = (which == GenDirection::W) ? -1 : 1;
    if (al.parity(fam.path.at(pos)) != need)
        throw std::invalid_argument("kernel parity precondition violated");

    SeriesInX W = genfun_series(fam, K, which, order);
    QExpr frak = baxter_kernel_term(fam, pos, false);
    int zi = fam.path.at(pos);
    QExpr sum;
    for (int k = 0; k <= order; ++k) {
        Term zf;
        zf.mul_z(zi, HalfInt::whole(-k));
        sum += W.coeff(k) * (zf * frak.shifted(Shift::of(2 * k)));
    }
    // Remainder: the partial product without the boundary factor, order n.
    SeriesInX rest = SeriesInX::one(order);
    if (which == GenDirection::W) {
        for (int k = K; k >= 2; --k)
            rest = rest * SeriesInX::linear_factor(order, x_function(fam, k), -al.parity(fam.path.at(k)));
    } else {
        for (int k = 1; k <= K - 1; ++k)
            rest = rest * SeriesInX::linear_factor(order, x_function(fam, k), al.parity(fam.path.at(k)));
    }
    Term zf;
    zf.mul_z(zi, HalfInt::whole(-order));
    QExpr remainder = rest.coeff(order) * (zf * frak.shifted(Shift::of(2 * order)));
    return sum - remainder;
}

}  // namespace qfold
