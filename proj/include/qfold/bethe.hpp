#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "eval.hpp"
#include "rootform.hpp"
#include "tfunc.hpp"

namespace qfold {

using Cx = std::complex<double>;

/// Forward-mode dual number over complex scalars (value + gradient).
struct Dual {
    Cx v{};
    std::vector<Cx> g;

    Dual() = default;
    explicit Dual(Cx value, int nvars = 0) : v(value), g(nvars) {}
    static Dual var(Cx value, int nvars, int index) {
        Dual d(value, nvars);
        d.g[index] = 1.0;
        return d;
    }

    friend Dual operator+(const Dual& a, const Dual& b) {
        Dual out = a;
        out.v += b.v;
        if (out.g.size() < b.g.size()) out.g.resize(b.g.size());
        for (std::size_t i = 0; i < b.g.size(); ++i) out.g[i] += b.g[i];
        return out;
    }
    friend Dual operator-(const Dual& a, const Dual& b) {
        Dual out = a;
        out.v -= b.v;
        if (out.g.size() < b.g.size()) out.g.resize(b.g.size());
        for (std::size_t i = 0; i < b.g.size(); ++i) out.g[i] -= b.g[i];
        return out;
    }
    friend Dual operator*(const Dual& a, const Dual& b) {
        Dual out;
        out.v = a.v * b.v;
        out.g.resize(std::max(a.g.size(), b.g.size()));
        for (std::size_t i = 0; i < out.g.size(); ++i) {
            Cx da = i < a.g.size() ? a.g[i] : Cx{};
            Cx db = i < b.g.size() ? b.g[i] : Cx{};
            out.g[i] = da * b.v + a.v * db;
        }
        return out;
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        Dual out;
        out.v = a.v / b.v;
        out.g.resize(std::max(a.g.size(), b.g.size()));
        for (std::size_t i = 0; i < out.g.size(); ++i) {
            Cx da = i < a.g.size() ? a.g[i] : Cx{};
            Cx db = i < b.g.size() ? b.g[i] : Cx{};
            out.g[i] = (da * b.v - a.v * db) / (b.v * b.v);
        }
        return out;
    }
};

/// One Bethe level: the Q-label carrying the unknown roots.
struct BAELevel {
    SymbolKey key;
    int count = 0;
};

/// A Bethe system: levels with unknown root multisets, the F_a functions
/// whose value -1 at the roots is the Bethe equation, and fixed data
/// (vacuum polynomials, twists, the shift unit).
class BAESystem {
public:
    std::vector<BAELevel> levels;
    std::vector<QExpr> F;                        // F_a per level (single terms)
    std::map<SymbolKey, std::vector<Cx>> fixed;  // known polynomials in t
    std::map<int, Cx> zsqrt;                     // sqrt of twist values
    double sq = 1.13;                            // sqrt of kappa
    std::string name;

    int unknown_count() const {
        int n = 0;
        for (const auto& l : levels) n += l.count;
        return n;
    }

    int level_of(const SymbolKey& key) const {
        for (std::size_t a = 0; a < levels.size(); ++a)
            if (levels[a].key == key) return (int)a;
        return -1;
    }

    /// Q-value (dual) of a symbol at the effective point te.
    Dual q_value(const SymbolKey& key, const Dual& te, const std::vector<Dual>& x,
                 const std::vector<std::pair<int, int>>& layout) const {
        auto it = fixed.find(key);
        int nv = (int)x.empty() ? 0 : (int)x[0].g.size();
        if (it != fixed.end()) {
            Dual acc(Cx(0), nv), p(Cx(1), nv);
            for (const auto& ck : it->second) {
                acc = acc + Dual(ck, nv) * p;
                p = p * te;
            }
            return acc;
        }
        int lvl = level_of(key);
        if (lvl < 0) throw std::runtime_error("no numeric data for symbol");
        Dual acc(Cx(1), nv);
        for (std::size_t u = 0; u < layout.size(); ++u) {
            if (layout[u].first != lvl) continue;
            acc = acc * (Dual(Cx(1), nv) - te * x[u]);
        }
        return acc;
    }

    Cx z_pow(int index, HalfInt e) const {
        auto it = zsqrt.find(index);
        if (it == zsqrt.end()) throw std::runtime_error("missing twist");
        return std::pow(it->second, (double)e.twice);
    }

    Dual term_value(const Term& term, const Dual& t0, const std::vector<Dual>& x,
                    const std::vector<std::pair<int, int>>& layout) const {
        int nv = x.empty() ? 0 : (int)x[0].g.size();
        Cx scalar((double)term.coeff.get_num().get_d());
        scalar /= term.coeff.get_den().get_d();
        for (const auto& [idx, e] : term.zexp) scalar *= z_pow(idx, e);
        for (const auto& [f, k] : term.sfac) {
            Cx fv = 0;
            for (const auto& [mono, c] : f.monomials()) {
                Cx m(c.get_d());
                for (const auto& [idx, e] : mono) m *= z_pow(idx, e);
                fv += m;
            }
            scalar *= std::pow(fv, (double)k);
        }
        Dual acc(scalar, nv);
        for (const auto& [q, k] : term.qfac) {
            Dual te = t0;
            te.v *= std::pow(sq, (double)-q.shift.offset.twice);
            for (auto& gg : te.g) gg *= std::pow(sq, (double)-q.shift.offset.twice);
            if (q.shift.eta) throw std::runtime_error("eta shifts are not supported numerically");
            Dual qv = q_value(SymbolKey{q.base, q.folded}, te, x, layout);
            if (k >= 0)
                for (int rep = 0; rep < k; ++rep) acc = acc * qv;
            else
                for (int rep = 0; rep < -k; ++rep) acc = acc / qv;
        }
        return acc;
    }

    Dual expr_value(const QExpr& e, const Dual& t0, const std::vector<Dual>& x,
                    const std::vector<std::pair<int, int>>& layout) const {
        int nv = x.empty() ? 0 : (int)x[0].g.size();
        Dual acc(Cx(0), nv);
        for (const auto& t : e.terms()) acc = acc + term_value(t, t0, x, layout);
        return acc;
    }

    /// Flattened layout of unknowns: (level, index within level).
    std::vector<std::pair<int, int>> layout() const {
        std::vector<std::pair<int, int>> out;
        for (std::size_t a = 0; a < levels.size(); ++a)
            for (int k = 0; k < levels[a].count; ++k) out.push_back({(int)a, k});
        return out;
    }

    /// Residuals F_a(u_k) + 1 for the flattened unknowns x (values of q^{2u}).
    std::vector<Dual> residuals(const std::vector<Dual>& x) const {
        auto lay = layout();
        int nv = (int)x.size();
        std::vector<Dual> out;
        for (std::size_t u = 0; u < lay.size(); ++u) {
            int a = lay[u].first;
            Dual t0 = Dual(Cx(1), nv) / x[u];  // t = q^{-2u} at the root
            Dual r = expr_value(F[a], t0, x, lay) + Dual(Cx(1), nv);
            out.push_back(r);
        }
        return out;
    }
};

namespace bethe_detail {

inline bool lu_solve(std::vector<std::vector<Cx>> A, std::vector<Cx>& b) {
    int n = (int)A.size();
    std::vector<int> piv(n);
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int c = 0; c < n; ++c) {
        int best = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(A[r][c]) > std::abs(A[best][c])) best = r;
        if (std::abs(A[best][c]) < 1e-14) return false;
        std::swap(A[best], A[c]);
        std::swap(b[best], b[c]);
        for (int r = c + 1; r < n; ++r) {
            Cx f = A[r][c] / A[c][c];
            for (int k = c; k < n; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    for (int c = n - 1; c >= 0; --c) {
        for (int k = c + 1; k < n; ++k) b[c] -= A[c][k] * b[k];
        b[c] /= A[c][c];
    }
    return true;
}

}  // namespace bethe_detail

struct BAESolution {
    std::vector<std::vector<Cx>> roots;  // per level, values of q^{2u}
    double residual = 1e9;
};

/// Multi-start Newton solver with analytic Jacobians; solutions deduplicated
/// up to permutations within each level. Deterministic for a fixed seed.
inline std::vector<BAESolution> solve_bae(const BAESystem& sys, int seeds = 64, double tol = 1e-10,
                                          std::uint64_t seed = 1) {
    int n = sys.unknown_count();
    std::vector<BAESolution> found;
    if (n == 0) return {BAESolution{{}, 0.0}};
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> ang(0.0, 2 * 3.14159265358979);
    std::uniform_real_distribution<double> rad(0.4, 2.2);
    auto lay = sys.layout();
    for (int s = 0; s < seeds; ++s) {
        std::vector<Dual> x;
        for (int u = 0; u < n; ++u) {
            double a = ang(eng), r = rad(eng);
            x.push_back(Dual::var(Cx(r * std::cos(a), r * std::sin(a)), n, u));
        }
        bool ok = true;
        double res = 1e9;
        auto residual_norm = [&](const std::vector<Dual>& pt, bool& valid) {
            valid = true;
            double out = 0;
            try {
                auto R = sys.residuals(pt);
                for (const auto& r : R) out = std::max(out, std::abs(r.v));
            } catch (...) {
                valid = false;
                return 1e30;
            }
            if (!std::isfinite(out)) valid = false;
            return out;
        };
        for (int iter = 0; iter < 80; ++iter) {
            std::vector<Dual> R;
            try {
                R = sys.residuals(x);
            } catch (...) {
                ok = false;
                break;
            }
            res = 0;
            for (const auto& r : R) res = std::max(res, std::abs(r.v));
            if (!std::isfinite(res)) { ok = false; break; }
            if (res < tol) break;
            std::vector<std::vector<Cx>> J(n, std::vector<Cx>(n));
            std::vector<Cx> b(n);
            for (int i = 0; i < n; ++i) {
                b[i] = -R[i].v;
                for (int j = 0; j < n; ++j) J[i][j] = R[i].g[j];
            }
            if (!bethe_detail::lu_solve(J, b)) { ok = false; break; }
            // damped update: cap the step and backtrack while it worsens
            double lambda = 1.0;
            for (int u = 0; u < n; ++u) {
                double cap = 2.0 * (1.0 + std::abs(x[u].v));
                if (std::abs(b[u]) > cap) lambda = std::min(lambda, cap / std::abs(b[u]));
            }
            std::vector<Dual> trial = x;
            double next = 1e30;
            for (int bt = 0; bt < 8; ++bt) {
                for (int u = 0; u < n; ++u) trial[u].v = x[u].v + lambda * b[u];
                bool valid = false;
                next = residual_norm(trial, valid);
                if (valid && next < res * 0.999) break;
                lambda *= 0.5;
            }
            if (next >= res * 0.999 && res > tol) { ok = false; break; }
            x = trial;
        }
        if (!ok || res >= tol) continue;
        // degenerate roots inside a level are rejected (Q would have a double zero)
        BAESolution sol;
        sol.roots.resize(sys.levels.size());
        for (int u = 0; u < n; ++u) sol.roots[lay[u].first].push_back(x[u].v);
        bool degenerate = false;
        for (auto& lvl : sol.roots) {
            std::sort(lvl.begin(), lvl.end(), [](Cx a, Cx b) {
                if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
                return a.imag() < b.imag();
            });
            for (std::size_t i = 0; i + 1 < lvl.size(); ++i)
                if (std::abs(lvl[i] - lvl[i + 1]) < 1e-7) degenerate = true;
            for (const auto& root : lvl)
                if (std::abs(root) < 1e-9) degenerate = true;
        }
        if (degenerate) continue;
        sol.residual = res;
        bool dup = false;
        for (const auto& f : found) {
            double d = 0;
            for (std::size_t a = 0; a < f.roots.size(); ++a)
                for (std::size_t k = 0; k < f.roots[a].size(); ++k)
                    d = std::max(d, std::abs(f.roots[a][k] - sol.roots[a][k]));
            if (d < 1e-6) dup = true;
        }
        if (!dup) found.push_back(std::move(sol));
    }
    return found;
}

/// F_a for the un-reduced gl(M|N) chain: the ratio whose value -1 at the
/// level-a roots is the Bethe equation. Levels are counted from the tail:
/// Qc_a = Q_{I_{M+N-a}}.
inline QExpr f_function_gl(const NestingPath& P, int a) {
    const auto& al = P.alphabet();
    int n = P.size();
    if (a < 1 || a > n - 1) throw std::out_of_range("level");
    auto eps = [&](int k) { return eps_unit(n, k); };
    EpsVector alpha_a = eps_sub(eps(P.at(n + 1 - a)), eps(P.at(n - a)));
    int p_alpha = al.parity(P.at(n + 1 - a)) * al.parity(P.at(n - a));
    Term t{Rational(p_alpha)};
    t.mul_z(P.at(n + 1 - a), HalfInt::whole(-1));
    t.mul_z(P.at(n - a), HalfInt::whole(1));
    // vacuum factors P_a^{[-d_a]} / P_a^{[d_a]}
    HalfInt da = is_zero(eps_form(al, alpha_a, alpha_a))
                     ? HalfInt::whole(a == 1 ? al.parity(P.at(n)) : al.parity(P.at(1)))
                     : HalfInt(twice_int(eps_form(al, alpha_a, alpha_a) / 2));
    if (a == 1) {
        t.mul_q(QSymbol(P.prefix(n), Shift(-da, 0)));
        t.mul_q(QSymbol(P.prefix(n), Shift(da, 0)), -1);
    }
    if (a == n - 1) {
        t.mul_q(QSymbol({}, Shift(-da, 0)));
        t.mul_q(QSymbol({}, Shift(da, 0)), -1);
    }
    for (int b = 1; b <= n - 1; ++b) {
        EpsVector alpha_b = eps_sub(eps(P.at(n + 1 - b)), eps(P.at(n - b)));
        Rational ab = eps_form(al, alpha_a, alpha_b);
        if (is_zero(ab)) continue;
        HalfInt sh(twice_int(ab));
        t.mul_q(QSymbol(P.prefix(n - b), Shift(sh, 0)));
        t.mul_q(QSymbol(P.prefix(n - b), Shift(-sh, 0)), -1);
    }
    return QExpr(t);
}

/// F_a for a reduced family on its orthosymplectic root system; the
/// black-dot level carries the two-step self-coupling.
inline QExpr f_function_reduced(const RootFormData& data, int a) {
    const auto& rs = data.rs;
    Term t{Rational(rs.root_parity(a))};
    t = t * data.exp_minus_root(a);
    Rational vp = data.vacuum_pairing(a);
    bool rank1B = rs.family == RootFamily::B && rs.rank() == 1 && data.spec.s == 0;
    if (rank1B) {
        // split vacuum phi = Q^{[-1/2]} Q^{[1/2]}: psi-/psi+ = phi(u-d)/phi(u+d)
        Rational bb = rs.form(a, a);
        HalfInt d(twice_int(bb / 2));
        t.mul_q(QSymbol({}, Shift(HalfInt::half(-1) - d, 0)));
        t.mul_q(QSymbol({}, Shift(HalfInt::half(1) - d, 0)));
        t.mul_q(QSymbol({}, Shift(HalfInt::half(-1) + d, 0)), -1);
        t.mul_q(QSymbol({}, Shift(HalfInt::half(1) + d, 0)), -1);
    } else if (!is_zero(vp)) {
        HalfInt sh(twice_int(vp));
        t.mul_q(QSymbol({}, Shift(-sh, 0)));
        t.mul_q(QSymbol({}, Shift(sh, 0)), -1);
    }
    for (int b = 1; b <= rs.rank(); ++b) {
        if (b == a) continue;
        Rational ab = rs.form(a, b);
        if (is_zero(ab)) continue;
        HalfInt sh(twice_int(ab));
        const auto& lv = data.level(b);
        t.mul_q(QSymbol(lv.Qc.base, Shift(sh, 0), lv.Qc.folded));
        t.mul_q(QSymbol(lv.Qc.base, Shift(-sh, 0), lv.Qc.folded), -1);
    }
    // self couplings per dot type
    auto dot = rs.dot(a);
    Rational bb = rs.form(a, a);
    const auto& lv = data.level(a);
    if (dot == RootSystem::Dot::White) {
        HalfInt sh(twice_int(bb));
        t.mul_q(QSymbol(lv.Qc.base, Shift(sh, 0), lv.Qc.folded));
        t.mul_q(QSymbol(lv.Qc.base, Shift(-sh, 0), lv.Qc.folded), -1);
    } else if (dot == RootSystem::Dot::Black) {
        HalfInt sh1(twice_int(-bb)), sh2(twice_int(2 * bb));
        t.mul_q(QSymbol(lv.Qc.base, Shift(sh1, 0), lv.Qc.folded));
        t.mul_q(QSymbol(lv.Qc.base, Shift(-sh1, 0), lv.Qc.folded), -1);
        t.mul_q(QSymbol(lv.Qc.base, Shift(sh2, 0), lv.Qc.folded));
        t.mul_q(QSymbol(lv.Qc.base, Shift(-sh2, 0), lv.Qc.folded), -1);
    }
    QExpr e = apply_reduction(QExpr(t), data.spec);
    return e;
}

/// Analytic residues of T at the zeros of the level Q-functions: for each
/// denominator factor Q_key^{[xi]} and each root, sum N(t*)/(dD/dt)(t*) over
/// the terms carrying that simple pole. Vacuum labels are excluded.
inline double polefree_check(const QExpr& T, const BAESystem& sys, const BAESolution& sol,
                             double* scale_out = nullptr) {
    auto lay = sys.layout();
    std::vector<Dual> x;
    for (std::size_t a = 0; a < sol.roots.size(); ++a)
        for (auto root : sol.roots[a]) x.push_back(Dual(root, 0));
    // collect pole locations: (level, shift)
    std::set<std::pair<int, Shift>> poles;
    auto shift_less = [](const Shift& s1, const Shift& s2) { return s1 < s2; };
    (void)shift_less;
    for (const auto& term : T.terms())
        for (const auto& [q, k] : term.qfac) {
            if (k >= 0) continue;
            int lvl = sys.level_of(SymbolKey{q.base, q.folded});
            if (lvl < 0) continue;  // vacuum or unknown label: out of scope
            poles.insert({lvl, q.shift});
        }
    double worst = 0, scale = 0;
    for (const auto& [lvl, sh] : poles) {
        const auto& roots = sol.roots[lvl];
        for (auto root : roots) {
            // t* such that Q_lvl(t* kappa^{-sh}) = 0: t* = kappa^{sh} / root
            Cx tstar = std::pow(sys.sq, (double)sh.offset.twice) / root;
            Cx residue = 0;
            double local_scale = 0;
            for (const auto& term : T.terms()) {
                QSymbol polesym(sys.levels[lvl].key.base, sh, sys.levels[lvl].key.folded);
                auto it = term.qfac.find(polesym);
                if (it == term.qfac.end() || it->second >= 0) continue;
                if (it->second < -1) throw std::runtime_error("higher-order pole");
                Term numer = term;
                numer.mul_q(polesym, 1);  // cancel the vanishing factor
                Dual tv(tstar, 0);
                Cx nval = sys.term_value(numer, tv, x, lay).v;
                // d/dt Q(t kappa^{-sh}) at t*: kappa^{-sh} * Q'(tau*), tau* = 1/root
                Cx kpow = std::pow(sys.sq, (double)-sh.offset.twice);
                Cx tau = Cx(1) / root;
                // Q'(tau) = sum_j (-x_j) prod_{k != j} (1 - tau x_k); only the
                // vanishing factor (this root) contributes at tau*
                Cx qprime = -root;
                for (auto other : roots)
                    if (std::abs(other - root) > 1e-12) qprime *= (Cx(1) - tau * other);
                Cx denom_rest = kpow * qprime;
                residue += nval / denom_rest;
                local_scale = std::max(local_scale, std::abs(nval / denom_rest));
            }
            scale = std::max(scale, local_scale);
            worst = std::max(worst, std::abs(residue) / std::max(local_scale, 1.0));
        }
    }
    if (scale_out) *scale_out = scale;
    return worst;
}

/// Plain numeric evaluation of an expression when every label has a fixed
/// polynomial (no unknowns): used for identity checks on completed systems.
inline Cx eval_numeric(const QExpr& e, const std::map<IndexSet, std::vector<Cx>>& polys,
                       const std::map<int, Cx>& zsqrt, double sq, Cx t0) {
    Cx acc = 0;
    for (const auto& term : e.terms()) {
        Cx v(term.coeff.get_num().get_d() / term.coeff.get_den().get_d());
        for (const auto& [idx, ex] : term.zexp) v *= std::pow(zsqrt.at(idx), (double)ex.twice);
        for (const auto& [f, k] : term.sfac) {
            Cx fv = 0;
            for (const auto& [mono, c] : f.monomials()) {
                Cx m(c.get_d());
                for (const auto& [idx, ex] : mono) m *= std::pow(zsqrt.at(idx), (double)ex.twice);
                fv += m;
            }
            v *= std::pow(fv, (double)k);
        }
        for (const auto& [q, k] : term.qfac) {
            if (q.shift.eta) throw std::runtime_error("eta shift in numeric eval");
            if (q.folded) throw std::runtime_error("folded symbol in plain numeric eval");
            Cx te = t0 * std::pow(sq, -(double)q.shift.offset.twice);
            const auto& c = polys.at(q.base);
            Cx qv = 0, p = 1;
            for (auto ck : c) {
                qv += ck * p;
                p *= te;
            }
            v *= std::pow(qv, (double)k);
        }
        acc += v;
    }
    return acc;
}

}  // namespace qfold
