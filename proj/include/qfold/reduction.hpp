#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "alphabet.hpp"
#include "qexpr.hpp"
#include "rational.hpp"

namespace qfold {

/// Monomial rewrite Q_target -> prod of factor symbols (shifts are relative
/// to the occurrence's own shift).
struct FactorRule {
    IndexSet target;
    std::vector<QSymbol> factors;
};

enum class ReducedFamily { ospB, glTw1, glTw2, glTw0, spC, ospD };

inline std::string family_name(ReducedFamily f) {
    switch (f) {
        case ReducedFamily::ospB: return "ospB";
        case ReducedFamily::glTw1: return "glTw1";
        case ReducedFamily::glTw2: return "glTw2";
        case ReducedFamily::glTw0: return "glTw0";
        case ReducedFamily::spC: return "spC";
        case ReducedFamily::ospD: return "ospD";
    }
    return "?";
}

/// Data of one gl(M|N)^(2)-type reduction: which indices are identified, the
/// fixed twists, whether the half-period eta is active, and the singular
/// factorization ansatzes (empty for regular reductions).
struct ReductionSpec {
    ReducedFamily family{};
    int r = 0, s = 0;
    NestingPath path;
    IndexSet dset;           // empty iff regular reduction
    bool eta_active = false; // kappa = 2 half-period present
    std::map<int, Rational> fixed_twists;
    std::vector<FactorRule> factorizations;

    const GradedAlphabet& alphabet() const { return path.alphabet(); }

    /// Canonical representative of the sigma-orbit {I, J \ I*}: the smaller
    /// set (size, then lex), so path prefixes I_a with a <= (M+N)/2 win.
    IndexSet canonical_base(const IndexSet& I, bool& flipped) const {
        IndexSet J = alphabet().sigma(I);
        flipped = false;
        if (J.size() < I.size() || (J.size() == I.size() && J < I)) {
            flipped = true;
            return J;
        }
        return I;
    }

    int canonical_z_index(int a) const {
        int st = alphabet().star(a);
        return std::min(a, st);
    }
};

/// (z_idx)^e as a Term in canonical twist variables (fixed slots become
/// numeric values).
inline Term reduced_z_pow(const ReductionSpec& spec, int idx, int e) {
    Term t;
    auto ft = spec.fixed_twists.find(idx);
    if (ft != spec.fixed_twists.end()) {
        t.coeff = LaurentPoly::pow_rat(ft->second, e);
        return t;
    }
    int canon = spec.canonical_z_index(idx);
    t.mul_z(canon, HalfInt::whole(canon == idx ? e : -e));
    return t;
}

/// (z_idx + c), c = +-1, as a single Term: when the canonical variable is
/// the starred partner this is c z_canon^{-1} (z_canon + c).
inline Term reduced_z_plus_c(const ReductionSpec& spec, int idx, int c) {
    if (c != 1 && c != -1) throw std::invalid_argument("reduced_z_plus_c wants c = +-1");
    Term t;
    auto ft = spec.fixed_twists.find(idx);
    if (ft != spec.fixed_twists.end()) {
        t.coeff = ft->second + c;
        return t;
    }
    int canon = spec.canonical_z_index(idx);
    if (canon == idx) {
        t.mul_s(z_shift(canon, c));
    } else {
        t.coeff = Rational(c);
        t.mul_z(canon, HalfInt::whole(-1));
        t.mul_s(z_shift(canon, c));
    }
    return t;
}

namespace reduction_detail {

/// Value of z_idx in the reduction's canonical variables as a Term factor:
/// either a monomial (free canonical index, starred partner, or fixed slot).
inline Term z_value_term(const ReductionSpec& spec, int idx) {
    return reduced_z_pow(spec, idx, 1);
}

/// Renormalizes one scalar factor to canonical twist variables; returns the
/// equal-value Term (products of catalog factors, twist monomials, numbers).
inline Term normalize_scalar(const ReductionSpec& spec, const ScalarFactor& f) {
    auto fixed = [&](int idx) { return spec.fixed_twists.count(idx) != 0; };
    auto fixed_val = [&](int idx) { return spec.fixed_twists.at(idx); };
    auto canon = [&](int idx) { return spec.canonical_z_index(idx); };
    auto flipped = [&](int idx) { return !fixed(idx) && canon(idx) != idx; };
    Term t;
    switch (f.kind) {
        case ScalarFactor::Kind::Diff:
        case ScalarFactor::Kind::Sum: {
            int sgn_j = f.kind == ScalarFactor::Kind::Diff ? -1 : 1;
            // value = z_i + sgn_j z_j
            int i = f.i, j = f.j;
            if (fixed(i) && fixed(j)) {
                t.coeff = fixed_val(i) + Rational(sgn_j) * fixed_val(j);
                return t;
            }
            if (fixed(j) || (fixed(i) && !fixed(j))) {
                // reduce to (z +- const); swap so the free index is first
                int free = fixed(i) ? j : i;
                Rational cval = fixed(i) ? fixed_val(i) : fixed_val(j);
                int csign = fixed(i) ? 1 : sgn_j;      // sign on the constant
                int fsign = fixed(i) ? sgn_j : 1;      // sign on the variable
                // value = fsign z_free + csign cval = fsign (z_free + csign cval / fsign)
                Rational c = Rational(csign) * cval / Rational(fsign);
                if (c != 1 && c != -1) throw std::domain_error("fixed twist is not +-1");
                t = reduced_z_plus_c(spec, free, c == 1 ? 1 : -1);
                t.coeff *= fsign;
                return t;
            }
            bool fi = flipped(i), fj = flipped(j);
            int ci = canon(i), cj = canon(j);
            if (!fi && !fj) {
                if (ci == cj) {
                    // z_i + sgn z_i
                    if (sgn_j == 1) { t.coeff = 2; t.mul_z(ci, HalfInt::whole(1)); }
                    return t;  // Diff(i,i) cannot occur
                }
                auto [d, sign] = z_diff(ci, cj);
                if (sgn_j == -1) { t.mul_s(d); t.coeff *= sign; }
                else t.mul_s(z_sum(ci, cj));
                return t;
            }
            if (fi && fj) {
                if (ci == cj) {
                    if (sgn_j == 1) { t.coeff = 2; t.mul_z(ci, HalfInt::whole(-1)); }
                    return t;
                }
                // z_ci^{-1} + sgn z_cj^{-1} = z_ci^{-1} z_cj^{-1} (z_cj + sgn z_ci)
                t.mul_z(ci, HalfInt::whole(-1));
                t.mul_z(cj, HalfInt::whole(-1));
                if (sgn_j == -1) {
                    auto [d, sign] = z_diff(cj, ci);
                    t.mul_s(d);
                    t.coeff *= sign;
                } else {
                    t.mul_s(z_sum(ci, cj));
                }
                return t;
            }
            // exactly one flipped: z_x^{-1} +- z_y = z_x^{-1}(1 +- z_x z_y)
            int x = fi ? ci : cj;   // the inverted one
            int y = fi ? cj : ci;   // the plain one
            int sign_on_plain = fi ? sgn_j : 1;
            int sign_on_inv = fi ? 1 : sgn_j;
            // value = sign_on_inv z_x^{-1} + sign_on_plain z_y
            //       = sign_on_inv z_x^{-1} (1 + (sign_on_plain/sign_on_inv) z_x z_y)
            t.coeff = sign_on_inv;
            t.mul_z(x, HalfInt::whole(-1));
            if (x == y) {
                // 1 +- z_x^2: breaks into shift factors
                int srel = sign_on_plain * sign_on_inv;
                if (srel == -1) {
                    t.coeff *= -1;
                    t.mul_s(z_shift(x, 1));
                    t.mul_s(z_shift(x, -1));
                } else {
                    throw std::domain_error("1 + z^2 has no rational factor form");
                }
                return t;
            }
            if (sign_on_plain * sign_on_inv == 1) t.mul_s(z_prod_p1(x, y));
            else { t.coeff *= -1; t.mul_s(z_prod_m1(x, y)); }
            return t;
        }
        case ScalarFactor::Kind::ShiftC: {
            int i = f.i, c = f.j;
            if (fixed(i)) {
                t.coeff = fixed_val(i) + c;
                return t;
            }
            return reduced_z_plus_c(spec, i, c);
        }
        case ScalarFactor::Kind::ProdM1:
        case ScalarFactor::Kind::ProdP1: {
            int cc = f.kind == ScalarFactor::Kind::ProdM1 ? -1 : 1;
            int i = f.i, j = f.j;
            // value = z_i z_j + cc
            Term zi = fixed(i) ? Term(fixed_val(i)) : Term();
            if (!fixed(i)) zi = reduced_z_pow(spec, i, 1);
            Term zj = fixed(j) ? Term(fixed_val(j)) : Term();
            if (!fixed(j)) zj = reduced_z_pow(spec, j, 1);
            Term prod = zi * zj;
            // prod is coeff * monomial; classify the monomial
            if (prod.zexp.empty()) {
                t.coeff = prod.coeff + cc;
                return t;
            }
            if (prod.zexp.size() == 1) {
                auto [idx, e] = *prod.zexp.begin();
                if (e == HalfInt::whole(1) || e == HalfInt::whole(-1)) {
                    // k z^{+-1} + cc  with k = +-1
                    Rational k = prod.coeff;
                    if (k != 1 && k != -1) throw std::domain_error("unitless product twist");
                    int inner = (cc * (k == 1 ? 1 : -1));
                    if (e == HalfInt::whole(-1)) t.mul_z(idx, HalfInt::whole(-1));
                    t.coeff = k == 1 ? Rational(1) : Rational(-1);
                    t.mul_s(z_shift(idx, inner));
                    return t;
                }
                if (e == HalfInt::whole(2) && prod.coeff == 1 && cc == -1) {
                    t.mul_s(z_shift(idx, 1));
                    t.mul_s(z_shift(idx, -1));
                    return t;
                }
                if (e == HalfInt::whole(-2) && prod.coeff == 1 && cc == -1) {
                    t.coeff = -1;
                    t.mul_z(idx, HalfInt::whole(-2));
                    t.mul_s(z_shift(idx, 1));
                    t.mul_s(z_shift(idx, -1));
                    return t;
                }
                throw std::domain_error("product twist does not normalize");
            }
            // two distinct canonical indices
            auto it = prod.zexp.begin();
            auto [i1, e1] = *it;
            auto [i2, e2] = *std::next(it);
            if (prod.coeff != 1) throw std::domain_error("signed two-index product twist");
            if (e1 == HalfInt::whole(1) && e2 == HalfInt::whole(1)) {
                t.mul_s(cc == -1 ? z_prod_m1(i1, i2) : z_prod_p1(i1, i2));
                return t;
            }
            if (e1 == HalfInt::whole(-1) && e2 == HalfInt::whole(-1)) {
                // z1^{-1} z2^{-1} + cc = z1^{-1} z2^{-1} (1 + cc z1 z2)
                t.mul_z(i1, HalfInt::whole(-1));
                t.mul_z(i2, HalfInt::whole(-1));
                if (cc == -1) { t.coeff = -1; t.mul_s(z_prod_m1(i1, i2)); }
                else t.mul_s(z_prod_p1(i1, i2));
                return t;
            }
            // mixed: z1^{+1} z2^{-1} + cc = z2^{-1}(z1 + cc z2)
            int up = e1 == HalfInt::whole(1) ? i1 : i2;
            int dn = e1 == HalfInt::whole(1) ? i2 : i1;
            t.mul_z(dn, HalfInt::whole(-1));
            if (cc == -1) {
                auto [d, sign] = z_diff(up, dn);
                t.mul_s(d);
                t.coeff *= sign;
            } else {
                t.mul_s(z_sum(up, dn));
            }
            return t;
        }
        case ScalarFactor::Kind::HalfSum: {
            int i = f.i;
            if (fixed(i)) throw std::domain_error("half power of a fixed twist");
            int c = canon(i);
            t.mul_s(z_half_sum(c));  // invariant under z -> z^{-1}
            return t;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace reduction_detail

/// Rewrites an expression to the reduction's canonical form: sigma-orbit
/// representatives (absorbing eta shifts), factorization ansatzes, fixed
/// twist values, and star-paired twist variables. Idempotent.
inline QExpr apply_reduction(const QExpr& e, const ReductionSpec& spec) {
    QExpr out;
    for (const auto& term : e.terms()) {
        QExpr acc = QExpr::one();
        Term scalar;
        scalar.coeff = term.coeff;
        for (const auto& [f, power] : term.sfac) {
            Term nf = reduction_detail::normalize_scalar(spec, f);
            if (nf.zexp.empty() && nf.sfac.empty()) {
                // pure number
                scalar.coeff *= LaurentPoly::pow_rat(nf.coeff, power);
                continue;
            }
            Term fac = power >= 0 ? nf : nf.inverse();
            for (int rep = 0; rep < std::abs(power); ++rep) scalar = scalar * fac;
        }
        // twist monomial: fixed values substituted, star pairs canonicalized
        for (const auto& [idx, expo] : term.zexp) {
            auto ft = spec.fixed_twists.find(idx);
            if (ft != spec.fixed_twists.end()) {
                if (!expo.is_integer()) throw std::domain_error("half power of a fixed twist");
                scalar.coeff *= LaurentPoly::pow_rat(ft->second, expo.as_integer());
                continue;
            }
            int canon = spec.canonical_z_index(idx);
            scalar.mul_z(canon, canon == idx ? expo : -expo);
        }
        acc = scalar * acc;
        for (const auto& [q, power] : term.qfac) {
            QSymbol sym = q;
            if (!sym.folded) {
                bool flipped = false;
                IndexSet canon = spec.canonical_base(sym.base, flipped);
                if (flipped) {
                    Shift sh = sym.shift;
                    if (spec.eta_active) sh = sh + Shift(HalfInt::whole(0), 1);
                    sym = QSymbol(canon, sh, false);
                } else {
                    sym = QSymbol(canon, sym.shift, false);
                }
                bool rewritten = false;
                for (const auto& rule : spec.factorizations) {
                    if (rule.target == sym.base) {
                        Term prod;
                        for (const auto& f : rule.factors) prod.mul_q(f.shifted(sym.shift));
                        acc = acc * QExpr(prod).pow(power);
                        rewritten = true;
                        break;
                    }
                }
                if (rewritten) continue;
            }
            Term single;
            single.mul_q(sym, power);
            acc = acc * QExpr(single);
        }
        out += acc;
    }
    return out;
}

/// The six reduction families of the folded construction. `tuple` must be a
/// symmetric nesting path of the stated gl(M|N).
inline ReductionSpec make_reduction(ReducedFamily fam, int r, int s, const NestingPath& path) {
    ReductionSpec spec;
    spec.family = fam;
    spec.r = r;
    spec.s = s;
    spec.path = path;
    const auto& al = path.alphabet();
    auto expect_mn = [&](int M, int N) {
        if (al.M() != M || al.N() != N) throw std::invalid_argument("alphabet does not match family");
        if (!path.symmetric()) throw std::invalid_argument("reduction wants a symmetric path");
    };
    switch (fam) {
        case ReducedFamily::ospB: {
            expect_mn(2 * r, 2 * s + 1);
            spec.eta_active = false;
            spec.fixed_twists[2 * r + s + 1] = Rational(-1);
            break;
        }
        case ReducedFamily::glTw1: {
            expect_mn(2 * r, 2 * s + 1);
            spec.eta_active = true;
            spec.fixed_twists[2 * r + s + 1] = Rational(1);
            break;
        }
        case ReducedFamily::glTw2: {
            expect_mn(2 * r + 1, 2 * s);
            spec.eta_active = true;
            spec.fixed_twists[r + 1] = Rational(1);
            break;
        }
        case ReducedFamily::glTw0: {
            expect_mn(2 * r, 2 * s);
            spec.eta_active = true;
            // every sigma-fixed label factorizes: Q = curlyQ curlyQ^{[eta]}
            int n = al.size();
            for (int mask = 0; mask < (1 << n); ++mask) {
                IndexSet K;
                for (int a = 1; a <= n; ++a)
                    if (mask & (1 << (a - 1))) K.push_back(a);
                if ((int)K.size() != n / 2) continue;
                if (al.sigma(K) != K) continue;
                spec.factorizations.push_back({K,
                                               {QSymbol(K, Shift{}, true), QSymbol(K, Shift(HalfInt::whole(0), 1), true)}});
            }
            break;
        }
        case ReducedFamily::spC: {
            expect_mn(2 * r + 2, 0);
            spec.eta_active = false;
            spec.dset = {r + 1, r + 2};
            spec.fixed_twists[r + 1] = Rational(1);
            spec.fixed_twists[r + 2] = Rational(-1);
            if (std::find(spec.dset.begin(), spec.dset.end(), path.at(r + 1)) == spec.dset.end())
                throw std::invalid_argument("slot r+1 must carry a D-set index");
            IndexSet Ir = path.prefix(r);
            spec.factorizations.push_back({Ir,
                                           {QSymbol(Ir, Shift::of(-1), true), QSymbol(Ir, Shift::of(1), true)}});
            spec.factorizations.push_back({path.prefix(r + 1),
                                           {QSymbol(Ir, Shift{}, true), QSymbol(Ir, Shift{}, true)}});
            IndexSet Brs = path.breve(r);
            spec.factorizations.push_back({Brs,
                                           {QSymbol(Brs, Shift::of(-1), true), QSymbol(Brs, Shift::of(1), true)}});
            IndexSet Brp = sorted_set([&] { auto v = Brs; v.push_back(path.at(r + 1)); return v; }());
            spec.factorizations.push_back({Brp,
                                           {QSymbol(Brs, Shift{}, true), QSymbol(Brs, Shift{}, true)}});
            break;
        }
        case ReducedFamily::ospD: {
            expect_mn(2 * r, 2 * s + 2);
            spec.eta_active = false;
            spec.dset = {2 * r + s + 1, 2 * r + s + 2};
            spec.fixed_twists[2 * r + s + 1] = Rational(1);
            spec.fixed_twists[2 * r + s + 2] = Rational(-1);
            if (std::find(spec.dset.begin(), spec.dset.end(), path.at(r + s + 1)) == spec.dset.end())
                throw std::invalid_argument("slot r+s+1 must carry a D-set index");
            IndexSet I = path.prefix(r + s);
            spec.factorizations.push_back({I,
                                           {QSymbol(I, Shift::of(-1), true), QSymbol(I, Shift::of(1), true)}});
            spec.factorizations.push_back({path.prefix(r + s + 1),
                                           {QSymbol(I, Shift{}, true), QSymbol(I, Shift{}, true)}});
            IndexSet Brs = path.breve(r + s);
            spec.factorizations.push_back({Brs,
                                           {QSymbol(Brs, Shift::of(-1), true), QSymbol(Brs, Shift::of(1), true)}});
            IndexSet Brp = sorted_set([&] { auto v = Brs; v.push_back(path.at(r + s + 1)); return v; }());
            spec.factorizations.push_back({Brp,
                                           {QSymbol(Brs, Shift{}, true), QSymbol(Brs, Shift{}, true)}});
            if (al.is_boson(path.at(r + s))) {
                // Q_{I_{r+s-1}} = curlyQ_{breve I} curlyQ_I
                spec.factorizations.push_back({path.prefix(r + s - 1),
                                               {QSymbol(path.breve(r + s), Shift{}, true), QSymbol(I, Shift{}, true)}});
            }
            if (al.is_boson(path.at(r + s - 1))) {
                // Q_{tilde I_{r+s-1}} = curlyQ_{acute I} curlyQ_I
                IndexSet tl = path.tilde(r + s - 1);
                IndexSet acute(path.tuple().begin(), path.tuple().begin() + r + s - 2);
                acute.push_back(al.star(path.at(r + s - 1)));
                acute.push_back(path.at(r + s));
                spec.factorizations.push_back({tl,
                                               {QSymbol(sorted_set(acute), Shift{}, true), QSymbol(I, Shift{}, true)}});
            }
            break;
        }
    }
    return spec;
}

}  // namespace qfold
