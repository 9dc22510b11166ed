#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eval.hpp"
#include "qexpr.hpp"
#include "reduction.hpp"
#include "root_system.hpp"
#include "wronskian.hpp"

namespace qfold {

/// ---------------------------------------------------------------------
/// Generic three-term QQ-relations on the Hasse diagram of index sets.
/// ---------------------------------------------------------------------

struct QQRelation {
    std::string id;
    QExpr lhs, rhs;
    QExpr diff() const { return lhs - rhs; }
};

/// Bosonic (p_i = p_j) or fermionic (p_i = -p_j) relation for (I, i, j).
inline QQRelation qq_generic(const GradedAlphabet& al, const IndexSet& I, int i, int j) {
    if (i == j) throw std::invalid_argument("qq_generic needs distinct i, j");
    for (int a : I)
        if (a == i || a == j) throw std::invalid_argument("i, j must avoid I");
    int pi = al.parity(i), pj = al.parity(j);
    IndexSet Ii = sorted_set([&] { auto v = I; v.push_back(i); return v; }());
    IndexSet Ij = sorted_set([&] { auto v = I; v.push_back(j); return v; }());
    IndexSet Iij = sorted_set([&] { auto v = Ii; v.push_back(j); return v; }());
    QQRelation rel;
    auto zmono = [&](int idx) {
        Term t;
        t.mul_z(idx, HalfInt::whole(1));
        return t;
    };
    if (pi == pj) {
        rel.id = "QQb";
        rel.lhs = (zmono(i) * (q_of(I) * q_of(Iij))) - (zmono(j) * (q_of(I) * q_of(Iij)));
        rel.rhs = (zmono(i) * (q_of(Ii, Shift::of(pi)) * q_of(Ij, Shift::of(-pi)))) -
                  (zmono(j) * (q_of(Ii, Shift::of(-pi)) * q_of(Ij, Shift::of(pi))));
    } else {
        rel.id = "QQf";
        rel.lhs = (zmono(i) * (q_of(Ii) * q_of(Ij))) - (zmono(j) * (q_of(Ii) * q_of(Ij)));
        rel.rhs = (zmono(i) * (q_of(I, Shift::of(-pi)) * q_of(Iij, Shift::of(pi)))) -
                  (zmono(j) * (q_of(I, Shift::of(pi)) * q_of(Iij, Shift::of(-pi))));
    }
    rel.id += "(";
    for (std::size_t k = 0; k < I.size(); ++k) rel.id += (k ? "," : "") + std::to_string(I[k]);
    rel.id += ";" + std::to_string(i) + "," + std::to_string(j) + ")";
    return rel;
}

/// ---------------------------------------------------------------------
/// Determinant solution of the generic QQ system (T09-style): Q_empty = 1,
/// generic single-index Q's, mixed pairs solved coefficient-wise from the
/// fermionic seed relation, everything else by the Casoratian formulas.
/// ---------------------------------------------------------------------

class DetSolution {
public:
    DetSolution(const GradedAlphabet& al, Rng& rng, int single_degree = 1) : al_(al) {
        for (int attempt = 0;; ++attempt) {
            if (attempt > 64) throw EvalDomainError("could not build a generic determinant solution");
            try {
                build(rng, single_degree);
                return;
            } catch (const EvalDomainError&) {
                continue;
            }
        }
    }

    const GradedAlphabet& alphabet() const { return al_; }

    /// Context bound to this solution's provider; resample t per use if needed.
    EvalContext context(Rng& rng) const {
        EvalContext ctx = base_;
        ctx.t = rng.rational(23);
        ctx.provider = [this](const QSymbol& q, const Rational& te,
                              const EvalContext& c) -> std::optional<Rational> {
            if (q.folded) return std::nullopt;
            return this->value(q.base, te, c);
        };
        return ctx;
    }

    /// Value of Q_base at effective point te (composite labels through the
    /// Casoratian formula).
    Rational value(const IndexSet& base, const Rational& te, const EvalContext& ctx) const {
        IndexSet B, F;
        for (int a : base) (al_.is_boson(a) ? B : F).push_back(a);
        int mm = (int)B.size(), nn = (int)F.size();
        if (base.empty() || (mm + nn == 1) || (mm == 1 && nn == 1))
            return ctx.poly_value(SymbolKey{base, false}, te);
        auto qv = [&](const IndexSet& b, int shift_units) {
            Rational pt = te * ctx.kappa_pow_half(-2 * shift_units);
            return ctx.poly_value(SymbolKey{b, false}, pt);
        };
        auto zv = [&](int a) { return ctx.z_value(a, HalfInt::whole(1)); };
        int n = std::max(mm, nn);
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
        if (mm >= nn) {
            for (int row = 0; row < mm; ++row) {
                int b = B[row];
                for (int col = 0; col < nn; ++col) {
                    int f = F[col];
                    Rational den = zv(b) - zv(f);
                    if (is_zero(den)) throw EvalDomainError("coincident twists in det solution");
                    m[row][col] = qv({b, f}, nn - mm) / den;
                }
                for (int j = 1; j <= mm - nn; ++j)
                    m[row][nn + j - 1] = LaurentPoly::pow_rat(zv(b), j - 1) * qv({b}, nn - mm + 2 * j - 1);
            }
        } else {
            for (int col = 0; col < nn; ++col) {
                int f = F[col];
                for (int row = 0; row < mm; ++row) {
                    int b = B[row];
                    Rational den = zv(b) - zv(f);
                    if (is_zero(den)) throw EvalDomainError("coincident twists in det solution");
                    m[row][col] = qv({b, f}, nn - mm) / den;
                }
                for (int i = 1; i <= nn - mm; ++i)
                    m[mm + i - 1][col] =
                        LaurentPoly::pow_rat(-zv(f), i - 1) * qv({f}, nn - mm - 2 * i + 1);
            }
        }
        Rational det = determinant(m);
        Rational D(1);
        for (int x = 0; x < (int)B.size(); ++x)
            for (int y = x + 1; y < (int)B.size(); ++y) D *= zv(B[x]) - zv(B[y]);
        for (int x = 0; x < (int)F.size(); ++x)
            for (int y = x + 1; y < (int)F.size(); ++y) D *= zv(F[y]) - zv(F[x]);
        for (int b : B)
            for (int f : F) D /= zv(b) - zv(f);
        if (is_zero(D)) throw EvalDomainError("vanishing denominator D(B|F)");
        long e = (long)(mm - nn) * (mm + nn - 1) / 2;
        Rational sign((e % 2 + 2) % 2 ? -1 : 1);
        return sign * det / D;
    }

private:
    void build(Rng& rng, int deg) {
        base_ = EvalContext{};
        base_.nvars = al_.size();
        base_.sq = rng.rational_avoiding({Rational(0), Rational(1), Rational(-1)}, 5);
        base_.eta_sign = 1;
        auto ws = rng.distinct(al_.size(), 19);
        for (int a = 1; a <= al_.size(); ++a) base_.w[a] = ws[a - 1];
        // distinct twists z = w^2 too
        for (int a = 1; a <= al_.size(); ++a)
            for (int b = a + 1; b <= al_.size(); ++b)
                if (base_.w[a] * base_.w[a] == base_.w[b] * base_.w[b])
                    throw EvalDomainError("twist collision");
        base_.assign_coeffs({}, {Rational(1)});
        for (int a = 1; a <= al_.size(); ++a) base_.assign_roots({a}, rng.distinct(deg, 13));
        Rational kappa = base_.sq * base_.sq;
        for (int b = 1; b <= al_.M(); ++b)
            for (int f = al_.M() + 1; f <= al_.size(); ++f) solve_pair(b, f, kappa);
    }

    /// Coefficients of Q_{b,f} from
    ///   (z_b - z_f) Q_b Q_f = z_b Q_{bf}^{[1]} - z_f Q_{bf}^{[-1]},
    /// i.e. c_k (z_b kappa^{-k} - z_f kappa^{k}) = (z_b - z_f) [t^k](Q_b Q_f).
    void solve_pair(int b, int f, const Rational& kappa) {
        const auto& cb = base_.polys.at(SymbolKey{{b}, false});
        const auto& cf = base_.polys.at(SymbolKey{{f}, false});
        std::vector<Rational> prod(cb.size() + cf.size() - 1, Rational(0));
        for (std::size_t x = 0; x < cb.size(); ++x)
            for (std::size_t y = 0; y < cf.size(); ++y) prod[x + y] += cb[x] * cf[y];
        Rational zb = base_.w.at(b) * base_.w.at(b);
        Rational zf = base_.w.at(f) * base_.w.at(f);
        std::vector<Rational> c(prod.size());
        Rational kp(1);
        for (std::size_t k = 0; k < prod.size(); ++k) {
            Rational den = zb / kp - zf * kp;  // z_b kappa^{-k} - z_f kappa^{k}
            if (is_zero(den)) throw EvalDomainError("resonant twists for pair solve");
            c[k] = (zb - zf) * prod[k] / den;
            kp *= kappa;
        }
        base_.assign_coeffs({b, f}, std::move(c));
    }

    static Rational determinant(std::vector<std::vector<Rational>> m) {
        int n = (int)m.size();
        Rational det(1);
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int row = col; row < n; ++row)
                if (!is_zero(m[row][col])) { piv = row; break; }
            if (piv < 0) return Rational(0);
            if (piv != col) {
                std::swap(m[piv], m[col]);
                det = -det;
            }
            det *= m[col][col];
            for (int row = col + 1; row < n; ++row) {
                if (is_zero(m[row][col])) continue;
                Rational fac = m[row][col] / m[col][col];
                for (int k = col; k < n; ++k) m[row][k] -= fac * m[col][k];
            }
        }
        return det;
    }

    GradedAlphabet al_;
    EvalContext base_;
};

/// Verify lhs == rhs exactly at `trials` determinant-solution contexts.
inline bool verify_generic(const QQRelation& rel, const GradedAlphabet& al, Rng& rng, int trials = 3) {
    DetSolution ds(al, rng);
    QExpr d = rel.diff();
    return equal_by_sampling(d, QExpr::zero(), [&](int) { return ds.context(rng); }, trials);
}

/// ---------------------------------------------------------------------
/// Reduced QQ catalog: each relation knows its parent (I; i, j) instance
/// and any non-monomial substitutions its derivation uses.
/// ---------------------------------------------------------------------

struct SumSubst {
    IndexSet target;  // canonical base to substitute (plain symbol)
    QExpr replacement;
};

struct ReducedRelation {
    std::string id;
    QExpr lhs, rhs;
    // derivation data (empty parent marks ansatz / chain entries)
    std::optional<IndexSet> parent_I;
    int parent_i = 0, parent_j = 0;
    std::vector<SumSubst> substitutions;
    std::string mode = "reduction-exact";
    QExpr diff() const { return lhs - rhs; }
};

/// Exact derivation check: fold the parent relation, apply the extra
/// substitutions, clear scalar denominators and compare with the catalog
/// statement up to a single overall term.
inline bool derivation_matches(const ReductionSpec& spec, const ReducedRelation& rel) {
    if (!rel.parent_I) return false;
    QQRelation parent = qq_generic(spec.alphabet(), *rel.parent_I, rel.parent_i, rel.parent_j);
    QExpr A = apply_reduction(parent.diff(), spec);
    for (const auto& sub : rel.substitutions) A = A.substituted(sub.target, false, sub.replacement);
    QExpr B = apply_reduction(rel.diff(), spec);
    A = A.times_scalars(A.scalar_denominators()).expanded_scalars();
    B = B.times_scalars(B.scalar_denominators()).expanded_scalars();
    if (A.is_zero() || B.is_zero()) return A.is_zero() && B.is_zero();
    return A.term_ratio_to(B).has_value();
}

/// Substitute a two-symbol product identity  coeff * Qa Qb = rhs  into an
/// expression: every term holding both factors (at a common relative shift)
/// gets rewritten. Used for the step-by-step derivation chains.
inline QExpr substitute_product(const QExpr& e, const QSymbol& qa, const QSymbol& qb,
                                const Term& coeff, const QExpr& rhs) {
    QExpr out;
    for (const auto& t : e.terms()) {
        // find a shift sigma with both qa^{[sigma]} and qb^{[sigma]} present
        std::optional<Shift> found;
        for (const auto& [q, v] : t.qfac) {
            if (v <= 0) continue;
            if (q.base == qa.base && q.folded == qa.folded) {
                Shift sigma = q.shift + (-qa.shift);
                QSymbol partner = qb.shifted(sigma);
                auto it = t.qfac.find(partner);
                if (it != t.qfac.end() && it->second > 0) {
                    found = sigma;
                    break;
                }
            }
        }
        if (!found) {
            out.add_term(t);
            continue;
        }
        Shift sigma = *found;
        Term rest = t;
        rest.mul_q(qa.shifted(sigma), -1);
        rest.mul_q(qb.shifted(sigma), -1);
        Term invc = coeff.inverse();
        QExpr repl = rhs.shifted(sigma);
        out += (rest * invc) * repl;
    }
    return out;
}

}  // namespace qfold
