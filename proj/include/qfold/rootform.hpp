#pragma once

#include "qq_catalog.hpp"
#include "root_system.hpp"

namespace qfold {

/// Identification of the Bethe-level Q-functions Qc_a, their particle-hole
/// partners, and the vacuum factors phi_a for a reduced family on its
/// orthosymplectic (or symplectic) root system.
struct LevelData {
    SymbolKey Qc;
    SymbolKey Qtilde;
};

struct RootFormData {
    ReductionSpec spec;
    RootSystem rs;
    std::vector<LevelData> levels;  // 1-based level a -> levels[a-1]

    const LevelData& level(int a) const { return levels.at(a - 1); }

    /// e^{-beta_a(h)} as a twist monomial (canonicalized for the reduction).
    Term exp_minus_root(int a) const {
        Term t;
        const auto& beta = rs.root(a);
        for (int i = 1; i <= rs.alphabet().size(); ++i) {
            if (is_zero(beta[i - 1])) continue;
            t.mul_z(i, HalfInt(twice_int(-beta[i - 1])));
        }
        QExpr red = apply_reduction(QExpr(t), spec);
        if (red.size() != 1) throw std::logic_error("twist monomial did not stay a monomial");
        return red.terms()[0];
    }

    /// (eps_{i_1^*} | beta_a): the shift entering the vacuum factors.
    Rational vacuum_pairing(int a) const {
        const auto& al = rs.alphabet();
        EpsVector e1 = eps_unit(al.size(), al.star(spec.path.at(1)));
        return eps_form(al, e1, rs.root(a));
    }

    /// phi_a: Q_empty when the first letter pairs with beta_a, else 1.
    /// The rank-one type B algebra carries the split vacuum Q^{[-1/2]}Q^{[1/2]}.
    QExpr phi(int a, HalfInt extra_shift = HalfInt()) const {
        bool rank1B = rs.family == RootFamily::B && rs.rank() == 1 && spec.s == 0;
        Term t;
        if (rank1B) {
            t.mul_q(QSymbol({}, Shift(extra_shift + HalfInt::half(-1), 0)));
            t.mul_q(QSymbol({}, Shift(extra_shift + HalfInt::half(1), 0)));
            return QExpr(t);
        }
        if (is_zero(vacuum_pairing(a))) return QExpr::one();
        t.mul_q(QSymbol({}, Shift(extra_shift, 0)));
        return QExpr(t);
    }
};

inline RootFormData make_rootform(const ReductionSpec& spec) {
    RootFormData data{spec, RootSystem{}, {}};
    const auto& P = spec.path;
    const auto& al = spec.alphabet();
    int r = spec.r, s = spec.s;
    auto plain = [&](const IndexSet& b) { return SymbolKey{b, false}; };
    auto folded = [&](const IndexSet& b) { return SymbolKey{b, true}; };
    switch (spec.family) {
        case ReducedFamily::ospB: {
            data.rs = RootSystem::type_B(r, s, P);
            for (int a = 1; a <= r + s; ++a) {
                LevelData ld{plain(P.prefix(a)), plain(P.tilde(a))};
                if (a == r + s && al.is_boson(P.at(a))) ld.Qtilde = plain(P.breve(a));
                data.levels.push_back(ld);
            }
            return data;
        }
        case ReducedFamily::spC: {
            data.rs = RootSystem::type_CD(r, 0, P, spec.dset);
            for (int a = 1; a <= r - 1; ++a) data.levels.push_back({plain(P.prefix(a)), plain(P.tilde(a))});
            data.levels.push_back({folded(P.prefix(r)), folded(P.breve(r))});
            return data;
        }
        case ReducedFamily::ospD: {
            data.rs = RootSystem::type_CD(r, s, P, spec.dset);
            int m = r + s;
            if (al.is_boson(P.at(m))) {
                for (int a = 1; a <= m - 2; ++a) data.levels.push_back({plain(P.prefix(a)), plain(P.tilde(a))});
                LevelData lm1{folded(P.breve(m)), plain(P.tilde(m - 1))};
                if (al.is_boson(P.at(m - 1))) lm1.Qtilde = folded(acute_set(spec));
                data.levels.push_back(lm1);
                LevelData lm{folded(P.prefix(m)), plain(dot_set(spec))};
                if (al.is_boson(P.at(m - 1))) lm.Qtilde = folded(grave_set(spec));
                data.levels.push_back(lm);
            } else {
                for (int a = 1; a <= m - 1; ++a) {
                    LevelData ld{plain(P.prefix(a)), plain(P.tilde(a))};
                    if (a == m - 1 && al.is_boson(P.at(m - 1))) ld.Qtilde = folded(acute_set(spec));
                    data.levels.push_back(ld);
                }
                data.levels.push_back({folded(P.prefix(m)), folded(P.breve(m))});
            }
            return data;
        }
        default:
            throw std::invalid_argument("root-form data wants an orthosymplectic or symplectic family");
    }
}

inline QExpr key_q(const SymbolKey& k, Shift sh) { return q_of(k.base, sh, k.folded); }

/// The root-system QQ-relations: white (even, parity +), black (even,
/// parity -) and gray (isotropic odd) dots. Returned as lhs/rhs pairs.
inline QQRelation rootform_qq(const RootFormData& data, int a) {
    const auto& rs = data.rs;
    QQRelation rel;
    Rational bb = rs.form(a, a);
    int pb = rs.root_parity(a);
    Term em = data.exp_minus_root(a);
    auto& lv = data.level(a);
    if (!is_zero(bb) && pb == 1) {
        rel.id = "QQrb3@" + std::to_string(a);
        HalfInt d(twice_int(bb / 2));  // d_a = (b|b)/2
        QExpr prod = QExpr::one();
        for (int b = 1; b <= rs.rank(); ++b) {
            if (b == a) continue;
            Rational ab = rs.form(a, b);
            if (is_zero(ab)) continue;
            Rational C = 2 * ab / bb;
            long reps = -(C.get_num().get_si() / C.get_den().get_si());
            for (long k = 0; k < reps; ++k) {
                Rational sh = -ab - (bb / 2) * Rational(1 + 2 * k);
                prod = prod * key_q(data.level(b).Qc, Shift(HalfInt(twice_int(sh)), 0));
            }
        }
        QExpr phi = data.phi(a);
        rel.lhs = (em * (phi * prod)) - (phi * prod);
        rel.rhs = (em * (key_q(lv.Qc, Shift(d, 0)) * key_q(lv.Qtilde, Shift(-d, 0)))) -
                  (key_q(lv.Qc, Shift(-d, 0)) * key_q(lv.Qtilde, Shift(d, 0)));
        return rel;
    }
    if (!is_zero(bb) && pb == -1) {
        rel.id = "QQrbb3@" + std::to_string(a);
        HalfInt twod(twice_int(bb));
        QExpr prod = QExpr::one();
        for (int b = 1; b <= rs.rank(); ++b) {
            if (is_zero(rs.form(a, b))) continue;
            prod = prod * key_q(data.level(b).Qc, Shift{});
        }
        QExpr phi = data.phi(a);
        rel.lhs = (em * (phi * prod)) + (phi * prod);
        rel.rhs = (em * (key_q(lv.Qc, Shift(twod, 0)) * key_q(lv.Qtilde, Shift(-twod, 0)))) +
                  (key_q(lv.Qc, Shift(-twod, 0)) * key_q(lv.Qtilde, Shift(twod, 0)));
        return rel;
    }
    rel.id = "QQrf3@" + std::to_string(a);
    QExpr prod_p = QExpr::one(), prod_m = QExpr::one();
    for (int b = 1; b <= rs.rank(); ++b) {
        if (b == a) continue;
        Rational ab = rs.form(a, b);
        if (is_zero(ab)) continue;
        prod_p = prod_p * key_q(data.level(b).Qc, Shift(HalfInt(twice_int(ab)), 0));
        prod_m = prod_m * key_q(data.level(b).Qc, Shift(HalfInt(twice_int(-ab)), 0));
    }
    Rational vp = data.vacuum_pairing(a);
    HalfInt vsh(twice_int(vp));
    QExpr phim = data.phi(a, -vsh);
    QExpr phip = data.phi(a, vsh);
    rel.lhs = (em * (key_q(lv.Qc, Shift{}) * key_q(lv.Qtilde, Shift{}))) -
              (key_q(lv.Qc, Shift{}) * key_q(lv.Qtilde, Shift{}));
    rel.rhs = (em * (phim * prod_p)) - (phip * prod_m);
    return rel;
}

/// Reflection action on Q-labels: the node's Qc goes to its partner, all
/// other levels stay. The black dot of type B sends Q_{r+s} to the breve
/// label (three underlying reflections compose to it).
inline std::map<SymbolKey, SymbolKey> reflect_q(const RootFormData& data, int a) {
    std::map<SymbolKey, SymbolKey> out;
    const auto& lv = data.level(a);
    SymbolKey target = lv.Qtilde;
    if (data.rs.dot(a) == RootSystem::Dot::Black)
        target = SymbolKey{data.spec.path.breve(data.spec.r + data.spec.s), false};
    out[lv.Qc] = target;
    out[target] = lv.Qc;
    return out;
}

}  // namespace qfold
