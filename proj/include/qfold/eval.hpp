#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qexpr.hpp"
#include "rational.hpp"

namespace qfold {

struct EvalDomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Key for Q-function assignments: the label without its shift.
struct SymbolKey {
    IndexSet base;
    bool folded = false;
    friend bool operator<(const SymbolKey& a, const SymbolKey& b) {
        if (a.folded != b.folded) return a.folded < b.folded;
        return a.base < b.base;
    }
    friend bool operator==(const SymbolKey& a, const SymbolKey& b) {
        return a.folded == b.folded && a.base == b.base;
    }
};

/// Exact sample point. The spectral dependence is carried by t = q^{-2u};
/// a shift u -> u + a*hbar multiplies t by kappa^{-a} with kappa = sq^2, so
/// half-integer shifts stay rational. One eta step multiplies t by eta_sign,
/// which must square to the identity (so it is +-1).
class EvalContext {
public:
    int nvars = 0;
    Rational sq = Rational(2);     // sqrt of kappa_q
    int eta_sign = 1;              // value of one eta step acting on t
    Rational t = Rational(1, 3);   // sample point, value of q^{-2u}

    std::map<SymbolKey, std::vector<Rational>> polys;  // coefficients in t
    std::map<int, Rational> w;                         // z_a = w_a^2

    /// Fallback for labels without a direct polynomial assignment
    /// (determinant solutions, recursively solved labels, ...).
    using Provider = std::function<std::optional<Rational>(const QSymbol&, const Rational& t_eff,
                                                           const EvalContext&)>;
    Provider provider;

    void assign_roots(const IndexSet& base, const std::vector<Rational>& roots, bool folded = false) {
        // Q(t) = prod_j (1 - t * rho_j), expanded to coefficients.
        std::vector<Rational> c{Rational(1)};
        for (const auto& rho : roots) {
            std::vector<Rational> n(c.size() + 1, Rational(0));
            for (std::size_t k = 0; k < c.size(); ++k) {
                n[k] += c[k];
                n[k + 1] -= c[k] * rho;
            }
            c = std::move(n);
        }
        polys[SymbolKey{base, folded}] = std::move(c);
    }

    void assign_coeffs(const IndexSet& base, std::vector<Rational> coeffs, bool folded = false) {
        polys[SymbolKey{base, folded}] = std::move(coeffs);
    }

    bool has(const IndexSet& base, bool folded = false) const {
        return polys.count(SymbolKey{base, folded}) != 0;
    }

    Rational kappa_pow_half(int twice) const {
        // kappa^{twice/2} = sq^{twice}
        return LaurentPoly::pow_rat(sq, twice);
    }

    Rational t_shifted(Shift sh) const {
        Rational te = t * kappa_pow_half(-sh.offset.twice);
        if (sh.eta) te *= eta_sign;
        return te;
    }

    Rational poly_value(const SymbolKey& key, const Rational& te) const {
        const auto& c = polys.at(key);
        Rational acc(0), p(1);
        for (const auto& ck : c) {
            acc += ck * p;
            p *= te;
        }
        return acc;
    }

    Rational symbol_value(const QSymbol& q) const {
        Rational te = t_shifted(q.shift);
        auto it = polys.find(SymbolKey{q.base, q.folded});
        if (it != polys.end()) {
            Rational acc(0), p(1);
            for (const auto& ck : it->second) {
                acc += ck * p;
                p *= te;
            }
            return acc;
        }
        if (provider) {
            auto v = provider(q, te, *this);
            if (v) return *v;
        }
        throw EvalDomainError("no assignment for symbol " + q.str());
    }

    Rational z_value(int index, HalfInt expo) const {
        auto it = w.find(index);
        if (it == w.end()) throw EvalDomainError("no twist for index " + std::to_string(index));
        if (it->second == 0) throw EvalDomainError("zero twist");
        return LaurentPoly::pow_rat(it->second, expo.twice);  // z^e = w^{2e}
    }

    Rational scalar_value(const ScalarFactor& f) const {
        Rational acc(0);
        for (const auto& [mono, c] : f.monomials()) {
            Rational m = c;
            for (const auto& [idx, e] : mono) m *= z_value(idx, e);
            acc += m;
        }
        return acc;
    }
};

inline Rational eval(const Term& t, const EvalContext& ctx) {
    Rational acc = t.coeff;
    for (const auto& [idx, e] : t.zexp) acc *= ctx.z_value(idx, e);
    for (const auto& [f, k] : t.sfac) {
        Rational v = ctx.scalar_value(f);
        if (k < 0 && is_zero(v)) throw EvalDomainError("scalar factor vanishes at sample");
        acc *= LaurentPoly::pow_rat(v, k);
    }
    for (const auto& [q, k] : t.qfac) {
        Rational v = ctx.symbol_value(q);
        if (k < 0 && is_zero(v)) throw EvalDomainError("Q-factor vanishes at sample");
        acc *= LaurentPoly::pow_rat(v, k);
    }
    return acc;
}

inline Rational eval(const QExpr& e, const EvalContext& ctx) {
    Rational acc(0);
    for (const auto& t : e.terms()) acc += eval(t, ctx);
    return acc;
}

/// Exact equality test by evaluation at independently sampled contexts.
/// `make_ctx` builds a fresh context per trial (assigning every symbol that
/// occurs); a context that lands on a singular point may throw and is then
/// resampled (bounded retries).
inline bool equal_by_sampling(const QExpr& lhs, const QExpr& rhs,
                              const std::function<EvalContext(int trial)>& make_ctx, int trials = 3,
                              int retry_cap = 8) {
    for (int trial = 0, done = 0; done < trials; ++trial) {
        if (trial > trials + retry_cap) throw EvalDomainError("sampler kept hitting singular points");
        try {
            EvalContext ctx = make_ctx(trial);
            if (eval(lhs, ctx) != eval(rhs, ctx)) return false;
            ++done;
        } catch (const EvalDomainError&) {
            continue;
        }
    }
    return true;
}

}  // namespace qfold
