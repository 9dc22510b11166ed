#pragma once

#include <memory>
#include <set>

#include "eval.hpp"
#include "qq_catalog.hpp"

namespace qfold {

/// A label defined by a relation solved for it: denom * Q_key = expr, with
/// the expression evaluated shift-covariantly through the same context.
struct SolvedLabel {
    SymbolKey key;
    Term denom;
    QExpr expr;
};

inline EvalContext::Provider solved_provider(std::vector<SolvedLabel> defs,
                                             EvalContext::Provider fallback = nullptr) {
    auto shared = std::make_shared<std::vector<SolvedLabel>>(std::move(defs));
    return [shared, fallback](const QSymbol& q, const Rational& te,
                              const EvalContext& ctx) -> std::optional<Rational> {
        for (const auto& def : *shared) {
            if (!(def.key.base == q.base && def.key.folded == q.folded)) continue;
            Rational num = eval(def.expr.shifted(q.shift), ctx);
            Rational den = eval(QExpr(def.denom.shifted(q.shift)), ctx);
            if (is_zero(den)) throw EvalDomainError("solved label hit a vanishing denominator");
            return num / den;
        }
        if (fallback) return fallback(q, te, ctx);
        return std::nullopt;
    };
}

/// Collect the (base, folded) keys appearing in expressions.
inline std::set<std::pair<IndexSet, bool>> symbol_keys(const std::vector<QExpr>& exprs) {
    std::set<std::pair<IndexSet, bool>> keys;
    for (const auto& e : exprs)
        for (const auto& t : e.terms())
            for (const auto& [q, k] : t.qfac) keys.insert({q.base, q.folded});
    return keys;
}

/// Base context for reduced families: random twists subject to the star
/// pairing (w_{a*} = w_a^{-1}) and the family's fixed values.
inline EvalContext reduced_base_ctx(const ReductionSpec& spec, Rng& rng) {
    EvalContext ctx;
    const auto& al = spec.alphabet();
    ctx.nvars = al.size();
    ctx.sq = rng.rational_avoiding({rat(0), rat(1), rat(-1)}, 5);
    ctx.t = rng.rational(11);
    ctx.eta_sign = spec.eta_active ? -1 : 1;
    for (int a = 1; a <= al.size(); ++a) {
        if (ctx.w.count(a)) continue;
        if (spec.fixed_twists.count(a)) {
            ctx.w[a] = Rational(1);  // fixed slots are substituted before eval
            continue;
        }
        int st = al.star(a);
        Rational wa = rng.rational_avoiding({rat(0), rat(1), rat(-1)}, 13);
        ctx.w[a] = wa;
        if (st != a) ctx.w[st] = 1 / wa;
    }
    return ctx;
}

/// Context with independent generic assignments for every symbol in the
/// given expressions (reduced twist pattern), plus optional solved labels.
inline EvalContext reduced_generic_ctx(const ReductionSpec& spec, const std::vector<QExpr>& exprs,
                                       Rng& rng, std::vector<SolvedLabel> solved = {}, int degree = 1) {
    EvalContext ctx = reduced_base_ctx(spec, rng);
    std::set<std::pair<IndexSet, bool>> skip;
    for (const auto& def : solved) skip.insert({def.key.base, def.key.folded});
    for (const auto& def : solved)
        for (const auto& e : {def.expr})
            for (const auto& t : e.terms())
                for (const auto& [q, k] : t.qfac)
                    if (!skip.count({q.base, q.folded}))
                        if (!ctx.has(q.base, q.folded)) ctx.assign_roots(q.base, rng.distinct(degree, 17), q.folded);
    for (const auto& [base, folded] : symbol_keys(exprs)) {
        if (skip.count({base, folded})) continue;
        if (!ctx.has(base, folded)) ctx.assign_roots(base, rng.distinct(degree, 17), folded);
    }
    if (!solved.empty()) ctx.provider = solved_provider(std::move(solved));
    return ctx;
}

/// Sampler for the black-dot consequence relation of osp(2r+1|2s)
/// (p_{i_{r+s}} = -1): generic Q_{I_{r+s}} and Q_breve; Q_tilde values on
/// the shift lattice from the second-order recurrence that encodes QQb3
/// and QQb7 jointly; the remaining anchor is fixed by QQb6 at the origin.
class OspBMinusNode {
public:
    OspBMinusNode(const ReductionSpec& spec, Rng& rng) : P_(spec.path) {
        int m = spec.r + spec.s;
        Im_ = P_.prefix(m);
        Bm_ = P_.breve(m);
        Tm_ = P_.tilde(m);
        Im1_ = P_.prefix(m - 1);
        zc_ = spec.canonical_z_index(P_.at(m));
        zflip_ = zc_ != P_.at(m);
        ctx_ = reduced_base_ctx(spec, rng);
        ctx_.assign_roots({}, rng.distinct(1, 9));
        ctx_.assign_roots(Im_, rng.distinct(2, 17));
        ctx_.assign_roots(Bm_, rng.distinct(2, 15));
        v0_ = rng.rational(9);
        auto self = std::make_shared<State>();
        self->owner = this;
        ctx_.provider = [self](const QSymbol& q, const Rational&,
                               const EvalContext& c) -> std::optional<Rational> {
            return self->owner->value(q, c);
        };
        // anchor v(2) from QQb6 at the origin
        store_.put({0, 0}, v0_);
        solve_second_anchor();
    }

    const EvalContext& context() const { return ctx_; }

private:
    struct State {
        OspBMinusNode* owner;
    };

    Rational z(const EvalContext& c) const {
        Rational v = c.z_value(zc_, HalfInt::whole(1));
        return zflip_ ? 1 / v : v;
    }
    Rational qm(int tw, const EvalContext& c) const {
        return c.poly_value(SymbolKey{Im_, false}, c.t_shifted(Shift::of_half(tw)));
    }
    Rational qbrv(int tw, const EvalContext& c) const {
        return c.poly_value(SymbolKey{Bm_, false}, c.t_shifted(Shift::of_half(tw)));
    }
    /// product P7(tw) = Q_{m-1} Qt at shift tw from QQb7's right-hand side
    Rational p7(int tw, const EvalContext& c) const {
        Rational zz = z(c);
        Rational rhs = zz * qm(tw - 2, c) * qbrv(tw + 2, c) - (1 / zz) * qm(tw + 2, c) * qbrv(tw - 2, c);
        Rational den = zz - 1 / zz;
        if (is_zero(den)) throw EvalDomainError("degenerate twist");
        return rhs / den;
    }
    /// second-order recurrence from QQb3 with Q_{m-1} = P7 / Qt:
    /// (z+1) P7(s) Qm(s) = v(s) [ z Qm(s-2) v(s+2) + Qm(s+2) v(s-2) ]
    Rational vtilde(int tw, const EvalContext& c) {
        if (auto got = store_.get({tw, 0})) return *got;
        Rational zz = z(c);
        Rational v;
        if (tw > 2) {
            Rational vs = vtilde(tw - 2, c), vm = vtilde(tw - 4, c);
            Rational num = (zz + 1) * p7(tw - 2, c) * qm(tw - 2, c) / vs - qm(tw, c) * vm;
            v = num / (zz * qm(tw - 4, c));
        } else {
            Rational vs = vtilde(tw + 2, c), vp = vtilde(tw + 4, c);
            Rational num = (zz + 1) * p7(tw + 2, c) * qm(tw + 2, c) / vs - zz * qm(tw, c) * vp;
            v = num / qm(tw + 4, c);
        }
        if (is_zero(v)) throw EvalDomainError("tilde value vanished");
        store_.put({tw, 0}, v);
        return v;
    }
    void solve_second_anchor() {
        // QQb6@0: (1/z+1) Qm1(0) Qbrv(0) = (1/z) Qbrv(-2) v(2) + Qbrv(2) v(-2),
        // with Qm1(0) = P7(0)/v(0) and v(-2) affine in v(2) via the recurrence.
        const EvalContext& c = ctx_;
        Rational zz = z(c);
        Rational A = (1 / zz + 1) * p7(0, c) / v0_ * qbrv(0, c);
        // v(-2) = [ (z+1) P7(0) Qm(0) / v(0) - z Qm(-2) v(2) ] / Qm(2)
        Rational base = (zz + 1) * p7(0, c) * qm(0, c) / v0_;
        // A = (1/z) Qbrv(-2) v2 + Qbrv(2) (base - z Qm(-2) v2) / Qm(2)
        Rational coeff = (1 / zz) * qbrv(-2, c) - qbrv(2, c) * zz * qm(-2, c) / qm(2, c);
        Rational constant = qbrv(2, c) * base / qm(2, c);
        if (is_zero(coeff)) throw EvalDomainError("anchor solve degenerate");
        Rational v2 = (A - constant) / coeff;
        if (is_zero(v2)) throw EvalDomainError("anchor vanished");
        store_.put({2, 0}, v2);
    }

    std::optional<Rational> value(const QSymbol& q, const EvalContext& c) {
        if (q.folded) return std::nullopt;
        if (q.shift.eta) throw EvalDomainError("unexpected eta shift");
        int tw = q.shift.offset.twice;
        if (q.base == Tm_) {
            if (tw % 2) throw EvalDomainError("half-integer lattice point");
            return vtilde(tw, c);
        }
        if (q.base == Im1_) {
            if (tw % 2) throw EvalDomainError("half-integer lattice point");
            return p7(tw, c) / vtilde(tw, c);
        }
        return std::nullopt;
    }

    struct Store {
        std::map<std::pair<int, int>, Rational> memo_;
        std::optional<Rational> get(const std::pair<int, int>& k) const {
            auto it = memo_.find(k);
            if (it == memo_.end()) return std::nullopt;
            return it->second;
        }
        void put(const std::pair<int, int>& k, Rational v) { memo_[k] = std::move(v); }
    };

    NestingPath P_;
    IndexSet Im_, Bm_, Tm_, Im1_;
    int zc_ = 0;
    bool zflip_ = false;
    Rational v0_;
    Store store_;
    EvalContext ctx_;
};

}  // namespace qfold
