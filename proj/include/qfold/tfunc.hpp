#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "alphabet.hpp"
#include "partition.hpp"
#include "qexpr.hpp"
#include "reduction.hpp"

namespace qfold {

/// A family of X-functions: a nesting path, optionally folded by a
/// reduction. The catalog covers tuple positions 1..M+N.
struct XFamily {
    NestingPath path;
    std::optional<ReductionSpec> reduction;

    static XFamily generic(const NestingPath& p) { return XFamily{p, std::nullopt}; }
    static XFamily reduced(const ReductionSpec& spec) { return XFamily{spec.path, spec}; }

    const GradedAlphabet& alphabet() const { return path.alphabet(); }
    int positions() const { return path.size(); }
};

/// The building block of the fundamental transfer-matrix eigenvalue:
/// X_{I_a} = z_{i_a} Q_{I_{a-1}}^{[M-N-sum p -2p]} Q_{I_a}^{[M-N-sum p +2p]}
///           / (Q_{I_{a-1}}^{[M-N-sum p]} Q_{I_a}^{[M-N-sum p]}).
inline QExpr x_function(const XFamily& fam, int a) {
    const auto& P = fam.path;
    const auto& al = fam.alphabet();
    if (a < 1 || a > P.size()) throw std::out_of_range("X position");
    int MN = al.M() - al.N();
    int ia = P.at(a);
    int p = al.parity(ia);
    auto psum = [&](int k) {
        int s = 0;
        for (int b = 1; b <= k; ++b) s += al.parity(P.at(b));
        return s;
    };
    Term t;
    t.mul_z(ia, HalfInt::whole(1));
    t.mul_q(QSymbol(P.prefix(a - 1), Shift::of(MN - psum(a - 1) - 2 * p)));
    t.mul_q(QSymbol(P.prefix(a), Shift::of(MN - psum(a) + 2 * p)));
    t.mul_q(QSymbol(P.prefix(a - 1), Shift::of(MN - psum(a - 1))), -1);
    t.mul_q(QSymbol(P.prefix(a), Shift::of(MN - psum(a))), -1);
    QExpr e{t};
    if (fam.reduction) e = apply_reduction(e, *fam.reduction);
    return e;
}

/// Admissible tableaux on a skew shape for the first K tuple entries.
/// Yields each filling (row-major cell order) to the sink; entries weakly
/// decrease right/down, strictly right when a fermionic letter is involved,
/// strictly down when a bosonic one is.
inline void admissible_tableaux(const NestingPath& path, int K, const SkewDiagram& shape,
                                const std::function<void(const std::vector<int>&)>& sink) {
    const auto& al = path.alphabet();
    auto cells = shape.cells();
    std::vector<int> fill(cells.size());
    auto cell_at = [&](int i, int j) -> int {
        for (std::size_t c = 0; c < cells.size(); ++c)
            if (cells[c].first == i && cells[c].second == j) return (int)c;
        return -1;
    };
    auto rec = [&](auto&& self, std::size_t c) -> void {
        if (c == cells.size()) {
            sink(fill);
            return;
        }
        auto [i, j] = cells[c];
        int up = cell_at(i - 1, j);
        int left = cell_at(i, j - 1);
        for (int t = K; t >= 1; --t) {
            if (up >= 0) {
                int tu = fill[up];
                if (tu < t) continue;
                bool strict = al.is_boson(path.at(tu)) || al.is_boson(path.at(t));
                if (strict && tu == t) continue;
            }
            if (left >= 0) {
                int tl = fill[left];
                if (tl < t) continue;
                bool strict = al.is_fermion(path.at(tl)) || al.is_fermion(path.at(t));
                if (strict && tl == t) continue;
            }
            fill[c] = t;
            self(self, c + 1);
        }
    };
    rec(rec, 0);
}

inline long count_admissible_tableaux(const NestingPath& path, int K, const SkewDiagram& shape) {
    long n = 0;
    admissible_tableaux(path, K, shape, [&](const std::vector<int>&) { ++n; });
    return n;
}

inline int count_bosons(const NestingPath& path, int K) {
    int m = 0;
    for (int a = 1; a <= K; ++a)
        if (path.alphabet().is_boson(path.at(a))) ++m;
    return m;
}

/// Tableau-sum T-function  calF_{lambda subset mu}^{I_K}  (the unnormalized
/// eigenvalue; calF_empty = 1 and calF over an empty alphabet vanishes).
inline QExpr tableau_T(const XFamily& fam, int K, const SkewDiagram& shape) {
    auto cells = shape.cells();
    if (cells.empty()) return QExpr::one();
    if (K == 0) return QExpr::zero();
    const auto& al = fam.alphabet();
    int mm = count_bosons(fam.path, K);
    int nn = K - mm;
    int mu1 = shape.outer.width();
    int mu1c = shape.outer.conjugate().width();
    int base = -mu1 + mu1c + mm - nn - (al.M() - al.N());

    std::vector<QExpr> xcache(fam.positions() + 1);
    std::vector<bool> have(fam.positions() + 1, false);
    auto X = [&](int a) -> const QExpr& {
        if (!have[a]) {
            xcache[a] = x_function(fam, a);
            have[a] = true;
        }
        return xcache[a];
    };

    QExpr sum;
    admissible_tableaux(fam.path, K, shape, [&](const std::vector<int>& fill) {
        QExpr prod = QExpr::one();
        for (std::size_t c = 0; c < cells.size(); ++c) {
            auto [j, k] = cells[c];
            int t = fill[c];
            int sign = al.parity(fam.path.at(t));
            QExpr x = X(t).shifted(Shift::of(base - 2 * j + 2 * k));
            prod = prod * (Rational(sign) * x);
        }
        sum += prod;
    });
    return sum;
}

/// Overall pole-cancelling factor Phi_{lambda subset mu}^{I_K}; reduces to
/// Q_empty^{[mm-nn+mu1-mu1']} Q_{I_K}^{[-mu1+mu1']} on rectangles.
inline QExpr phi_factor(const XFamily& fam, int K, const SkewDiagram& shape) {
    const auto& al = fam.alphabet();
    int mm = count_bosons(fam.path, K);
    int nn = K - mm;
    const Partition& mu = shape.outer;
    const Partition& la = shape.inner;
    Partition muc = mu.conjugate();
    Partition lac = la.conjugate();
    int mu1 = mu.width(), mu1c = muc.width();

    Term t;
    t.mul_q(QSymbol({}, Shift::of(-mu1 - mu1c + 2 * mu.part(mu1c) + mm - nn)));
    t.mul_q(QSymbol(fam.path.prefix(K), Shift::of(-mu1 + mu1c + 2 * la.part(1))));
    for (int j = 1; j <= mu1c - 1; ++j) {
        bool on = (mu.part(j) - mu.part(j + 1)) * (mu.part(j) - la.part(j)) > 0;
        if (on) t.mul_q(QSymbol({}, Shift::of(-mu1 + mu1c - 2 * j + 2 * mu.part(j) + mm - nn)));
    }
    for (int j = 2; j <= std::min(lac.width() + 1, mu1c); ++j) {
        bool on = (la.part(j - 1) - la.part(j)) * (mu.part(j) - la.part(j)) > 0;
        if (on) t.mul_q(QSymbol(fam.path.prefix(K), Shift::of(-mu1 + mu1c - 2 * j + 2 * la.part(j) + 2)));
    }
    QExpr e{t};
    if (fam.reduction) e = apply_reduction(e, *fam.reduction);
    return e;
}

/// Normalized T-function  sfF = Phi * calF.
inline QExpr normalized_T(const XFamily& fam, int K, const SkewDiagram& shape) {
    return phi_factor(fam, K, shape) * tableau_T(fam, K, shape);
}

/// Fundamental T-function sfF_{(1)} = Q_empty^{[M-N]} Q_J sum p_a X_a.
inline QExpr fundamental_T(const XFamily& fam) {
    const auto& al = fam.alphabet();
    Term pre;
    pre.mul_q(QSymbol({}, Shift::of(al.M() - al.N())));
    pre.mul_q(QSymbol(fam.path.prefix(fam.positions()), Shift{}));
    QExpr prefac{pre};
    if (fam.reduction) prefac = apply_reduction(prefac, *fam.reduction);
    QExpr sum;
    for (int a = 1; a <= fam.positions(); ++a)
        sum += Rational(al.parity(fam.path.at(a))) * x_function(fam, a);
    return prefac * sum;
}

enum class CbrAxis { Rows, Columns };

/// Quantum Jacobi-Trudi determinant built from one-column (Rows axis) or
/// one-row (Columns axis) tableau T-functions, expanded by permutations.
inline QExpr cbr_T(const XFamily& fam, int K, const SkewDiagram& shape, CbrAxis axis) {
    const Partition& mu = shape.outer;
    const Partition& la = shape.inner;
    Partition muc = mu.conjugate();
    Partition lac = la.conjugate();
    int mu1 = mu.width(), mu1c = muc.width();
    int n = axis == CbrAxis::Rows ? mu1 : mu1c;
    if (n == 0) return QExpr::one();

    std::map<std::pair<int, int>, QExpr> cache;  // (size, shift) -> F
    auto entry = [&](int i, int j) -> QExpr {
        int size, shift;
        if (axis == CbrAxis::Rows) {
            size = muc.part(i) - lac.part(j) - i + j;
            shift = -mu1 + mu1c - muc.part(i) - lac.part(j) + i + j - 1;
        } else {
            size = mu.part(i) - la.part(j) - i + j;
            shift = -mu1 + mu1c + mu.part(i) + la.part(j) - i - j + 1;
        }
        if (size < 0) return QExpr::zero();
        if (size == 0) return QExpr::one();
        auto key = std::make_pair(axis == CbrAxis::Rows ? size : -size, shift);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        SkewDiagram sh = axis == CbrAxis::Rows ? SkewDiagram(Partition(std::vector<int>(size, 1)))
                                               : SkewDiagram(Partition{size});
        QExpr F = tableau_T(fam, K, sh).shifted(Shift::of(shift));
        cache[key] = F;
        return F;
    };

    // permutation expansion with signs
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    QExpr det;
    auto rec = [&](auto&& self, int row, int sign, QExpr acc) -> void {
        if (acc.is_zero()) return;
        if (row == n) {
            det += Rational(sign) * acc;
            return;
        }
        for (int col = row; col < n; ++col) {
            std::swap(perm[row], perm[col]);
            QExpr cell = entry(row + 1, perm[row] + 1);
            self(self, row + 1, col == row ? sign : -sign, acc * cell);
            std::swap(perm[row], perm[col]);
        }
    };
    rec(rec, 0, 1, QExpr::one());
    return det;
}

}  // namespace qfold
