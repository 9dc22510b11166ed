#pragma once

#include <vector>

#include "qq.hpp"

namespace qfold {

namespace catalog_detail {

struct Builder {
    const ReductionSpec& spec;
    const NestingPath& P;
    const GradedAlphabet& al;

    explicit Builder(const ReductionSpec& s) : spec(s), P(s.path), al(s.path.alphabet()) {}

    Term z(int tuple_slot, int e = 1) const {
        Term t;
        int idx = P.at(tuple_slot);
        auto ft = spec.fixed_twists.find(idx);
        if (ft != spec.fixed_twists.end()) {
            t.coeff = LaurentPoly::pow_rat(ft->second, e);
            return t;
        }
        int canon = spec.canonical_z_index(idx);
        t.mul_z(canon, HalfInt::whole(canon == idx ? e : -e));
        return t;
    }
    Term zstar(int tuple_slot, int e = 1) const { return z(tuple_slot, -e); }
    static Term c(long v) { return Term(Rational(v)); }

    QExpr Q(int a, int sh = 0, int eta = 0) const { return q_of(P.prefix(a), Shift::of(sh, eta)); }
    QExpr Qt(int a, int sh = 0, int eta = 0) const { return q_of(P.tilde(a), Shift::of(sh, eta)); }
    QExpr Qbrv(int a, int sh = 0, int eta = 0) const { return q_of(P.breve(a), Shift::of(sh, eta)); }
    QExpr fQ(const IndexSet& base, int sh = 0, int eta = 0) const {
        return q_of(base, Shift::of(sh, eta), true);
    }

    int p(int slot) const { return al.parity(P.at(slot)); }
};

}  // namespace catalog_detail

inline IndexSet acute_set(const ReductionSpec& spec) {
    const auto& P = spec.path;
    const auto& al = spec.alphabet();
    int m = spec.r + spec.s;
    IndexSet v(P.tuple().begin(), P.tuple().begin() + m - 2);
    v.push_back(al.star(P.at(m - 1)));
    v.push_back(P.at(m));
    return sorted_set(v);
}

inline IndexSet grave_set(const ReductionSpec& spec) {
    const auto& P = spec.path;
    const auto& al = spec.alphabet();
    int m = spec.r + spec.s;
    IndexSet v(P.tuple().begin(), P.tuple().begin() + m - 2);
    v.push_back(al.star(P.at(m - 1)));
    v.push_back(al.star(P.at(m)));
    return sorted_set(v);
}

inline IndexSet dot_set(const ReductionSpec& spec) {
    const auto& P = spec.path;
    const auto& al = spec.alphabet();
    int m = spec.r + spec.s;
    IndexSet v(P.tuple().begin(), P.tuple().begin() + m - 2);
    v.push_back(al.star(P.at(m)));
    return sorted_set(v);
}

/// The paper's reduced QQ catalog for one family on one symmetric path.
/// Every relation carries its parent instance; `mode` records how it is
/// verified (exact reduction derivation, derivation chain, consequence of
/// the node system, or defining ansatz).
inline std::vector<ReducedRelation> qq_catalog(const ReductionSpec& spec) {
    using B = catalog_detail::Builder;
    B b(spec);
    const auto& P = spec.path;
    const auto& al = spec.alphabet();
    int r = spec.r, s = spec.s;
    std::vector<ReducedRelation> out;

    auto add = [&](ReducedRelation rel) { out.push_back(std::move(rel)); };
    auto interior = [&](int lo, int hi) {
        // QQb/QQf pairs at plain nodes a = lo..hi
        for (int a = lo; a <= hi; ++a) {
            ReducedRelation rel;
            bool bosonic = b.p(a) == b.p(a + 1);
            rel.id = (bosonic ? "b-node" : "f-node") + std::string("@") + std::to_string(a);
            int pa = b.p(a);
            if (bosonic) {
                rel.lhs = (b.z(a) * (b.Q(a - 1) * b.Q(a + 1))) - (b.z(a + 1) * (b.Q(a - 1) * b.Q(a + 1)));
                rel.rhs = (b.z(a) * (b.Q(a, pa) * b.Qt(a, -pa))) - (b.z(a + 1) * (b.Q(a, -pa) * b.Qt(a, pa)));
            } else {
                rel.lhs = (b.z(a) * (b.Q(a) * b.Qt(a))) - (b.z(a + 1) * (b.Q(a) * b.Qt(a)));
                rel.rhs = (b.z(a) * (b.Q(a - 1, -pa) * b.Q(a + 1, pa))) -
                          (b.z(a + 1) * (b.Q(a - 1, pa) * b.Q(a + 1, -pa)));
            }
            rel.parent_I = P.prefix(a - 1);
            rel.parent_i = P.at(a);
            rel.parent_j = P.at(a + 1);
            add(std::move(rel));
        }
    };

    switch (spec.family) {
        case ReducedFamily::ospB: {
            int m = r + s;
            interior(1, m - 1);
            int im = P.at(m);
            int ifx = 2 * r + s + 1;
            if (b.p(m) == -1) {
                ReducedRelation q3;
                q3.id = "QQb3";
                q3.lhs = (b.z(m) * (b.Q(m - 1) * b.Q(m))) + (b.c(1) * (b.Q(m - 1) * b.Q(m)));
                q3.rhs = (b.z(m) * (b.Q(m, -1) * b.Qt(m, 1))) + (b.c(1) * (b.Q(m, 1) * b.Qt(m, -1)));
                q3.parent_I = P.prefix(m - 1);
                q3.parent_i = im;
                q3.parent_j = ifx;
                add(std::move(q3));

                ReducedRelation q7;
                q7.id = "QQb7";
                q7.lhs = (b.z(m) * (b.Q(m - 1) * b.Qt(m))) - (b.z(m, -1) * (b.Q(m - 1) * b.Qt(m)));
                q7.rhs = (b.z(m) * (b.Q(m, -1) * b.Qbrv(m, 1))) - (b.z(m, -1) * (b.Q(m, 1) * b.Qbrv(m, -1)));
                q7.parent_I = P.prefix(m - 1);
                q7.parent_i = im;
                q7.parent_j = al.star(im);
                add(std::move(q7));

                ReducedRelation q6;
                q6.id = "QQb6";
                q6.lhs = (b.z(m, -1) * (b.Q(m - 1) * b.Qbrv(m))) + (b.c(1) * (b.Q(m - 1) * b.Qbrv(m)));
                q6.rhs = (b.z(m, -1) * (b.Qbrv(m, -1) * b.Qt(m, 1))) + (b.c(1) * (b.Qbrv(m, 1) * b.Qt(m, -1)));
                q6.parent_I = P.prefix(m - 1);
                q6.parent_i = al.star(im);
                q6.parent_j = ifx;
                add(std::move(q6));

                ReducedRelation q8;
                q8.id = "QQb8";
                q8.mode = "consequence";
                q8.parent_I.reset();
                q8.lhs = (b.z(m) * (b.Qt(m) * b.Qt(m, 1))) - (b.c(1) * (b.Qt(m) * b.Qt(m, 1)));
                q8.rhs = (b.z(m) * (b.Q(m) * b.Qbrv(m, 1))) - (b.c(1) * (b.Q(m, 1) * b.Qbrv(m)));
                add(std::move(q8));
            } else {
                ReducedRelation q4;
                q4.id = "QQb4";
                q4.lhs = (b.z(m) * (b.Q(m) * b.Qt(m))) + (b.c(1) * (b.Q(m) * b.Qt(m)));
                q4.rhs = (b.z(m) * (b.Q(m - 1, -1) * b.Q(m, 1))) + (b.c(1) * (b.Q(m - 1, 1) * b.Q(m, -1)));
                q4.parent_I = P.prefix(m - 1);
                q4.parent_i = im;
                q4.parent_j = ifx;
                add(std::move(q4));

                ReducedRelation q52;
                q52.id = "QQb5-2";
                q52.lhs = (b.z(m) * (b.Q(m - 1) * b.Qt(m))) - (b.z(m, -1) * (b.Q(m - 1) * b.Qt(m)));
                q52.rhs = (b.z(m) * (b.Q(m, 1) * b.Qbrv(m, -1))) - (b.z(m, -1) * (b.Q(m, -1) * b.Qbrv(m, 1)));
                q52.parent_I = P.prefix(m - 1);
                q52.parent_i = im;
                q52.parent_j = al.star(im);
                add(std::move(q52));

                ReducedRelation q53;
                q53.id = "QQb5-3";
                q53.lhs = (b.z(m, -1) * (b.Qbrv(m) * b.Qt(m))) + (b.c(1) * (b.Qbrv(m) * b.Qt(m)));
                q53.rhs = (b.z(m, -1) * (b.Q(m - 1, -1) * b.Qbrv(m, 1))) +
                          (b.c(1) * (b.Q(m - 1, 1) * b.Qbrv(m, -1)));
                q53.parent_I = P.prefix(m - 1);
                q53.parent_i = al.star(im);
                q53.parent_j = ifx;
                add(std::move(q53));

                ReducedRelation q5;
                q5.id = "QQb5";
                q5.mode = "chain";
                q5.lhs = (b.z(m) * (b.Q(m - 1, 1) * b.Q(m - 1))) - (b.c(1) * (b.Q(m - 1, 1) * b.Q(m - 1)));
                q5.rhs = (b.z(m) * (b.Q(m, 1) * b.Qbrv(m))) - (b.c(1) * (b.Q(m) * b.Qbrv(m, 1)));
                add(std::move(q5));
            }
            break;
        }
        case ReducedFamily::glTw1:
        case ReducedFamily::glTw2: {
            int m = r + s;
            interior(1, m - 1);
            int im = P.at(m);
            int ifx = spec.family == ReducedFamily::glTw1 ? 2 * r + s + 1 : r + 1;
            int pc = spec.family == ReducedFamily::glTw1 ? -1 : 1;  // parity of the centre letter
            if (b.p(m) == pc) {
                // same parity as the centre: bosonic-type node relation
                ReducedRelation q13;
                q13.id = spec.family == ReducedFamily::glTw1 ? "QQt13" : "QQt23";
                q13.lhs = (b.z(m) * (b.Q(m - 1) * b.Q(m, 0, 1))) - (b.c(1) * (b.Q(m - 1) * b.Q(m, 0, 1)));
                q13.rhs = (b.z(m) * (b.Q(m, pc) * b.Qt(m, -pc))) - (b.c(1) * (b.Q(m, -pc) * b.Qt(m, pc)));
                q13.parent_I = P.prefix(m - 1);
                q13.parent_i = im;
                q13.parent_j = ifx;
                add(std::move(q13));
            } else {
                ReducedRelation q14;
                q14.id = spec.family == ReducedFamily::glTw1 ? "QQt14" : "QQt24";
                int pm = b.p(m);
                q14.lhs = (b.z(m) * (b.Q(m) * b.Qt(m))) - (b.c(1) * (b.Q(m) * b.Qt(m)));
                q14.rhs = (b.z(m) * (b.Q(m - 1, -pm) * b.Q(m, pm, 1))) -
                          (b.c(1) * (b.Q(m - 1, pm) * b.Q(m, -pm, 1)));
                q14.parent_I = P.prefix(m - 1);
                q14.parent_i = im;
                q14.parent_j = ifx;
                add(std::move(q14));

                ReducedRelation q16;
                q16.id = spec.family == ReducedFamily::glTw1 ? "QQt16" : "QQt26";
                q16.lhs = (b.z(m) * (b.Q(m - 1) * b.Qt(m, 0, 1))) - (b.z(m, -1) * (b.Q(m - 1) * b.Qt(m, 0, 1)));
                q16.rhs = (b.z(m) * (b.Q(m, pm) * b.Qbrv(m, -pm))) - (b.z(m, -1) * (b.Q(m, -pm) * b.Qbrv(m, pm)));
                q16.parent_I = P.prefix(m - 1);
                q16.parent_i = im;
                q16.parent_j = al.star(im);
                add(std::move(q16));

                ReducedRelation q17;
                q17.id = spec.family == ReducedFamily::glTw1 ? "QQt17" : "QQt27";
                q17.lhs = (b.z(m, -1) * (b.Qbrv(m) * b.Qt(m))) - (b.c(1) * (b.Qbrv(m) * b.Qt(m)));
                q17.rhs = (b.z(m, -1) * (b.Q(m - 1, -pm) * b.Qbrv(m, pm, 1))) -
                          (b.c(1) * (b.Q(m - 1, pm) * b.Qbrv(m, -pm, 1)));
                q17.parent_I = P.prefix(m - 1);
                q17.parent_i = al.star(im);
                q17.parent_j = ifx;
                add(std::move(q17));

                ReducedRelation q15;
                q15.id = spec.family == ReducedFamily::glTw1 ? "QQt15" : "QQt25";
                q15.mode = "chain";
                q15.lhs = (b.z(m) * (b.Q(m - 1, pm) * b.Q(m - 1, 0, 1))) +
                          (b.c(1) * (b.Q(m - 1, pm) * b.Q(m - 1, 0, 1)));
                q15.rhs = (b.z(m) * (b.Q(m, pm, 1) * b.Qbrv(m))) + (b.c(1) * (b.Q(m) * b.Qbrv(m, pm, 1)));
                add(std::move(q15));
            }
            break;
        }
        case ReducedFamily::glTw0: {
            int m = r + s;
            interior(1, m - 2);
            int pm1 = b.p(m - 1);
            IndexSet Im = P.prefix(m);
            IndexSet Bm = P.breve(m);
            auto Qsq = [&](int a, int sh) {  // Q_{I_{a}} "squared": Q Q^{[eta]}
                return b.Q(a, sh) * b.Q(a, sh, 1);
            };
            auto fQsq = [&](const IndexSet& base, int sh) {
                return b.fQ(base, sh) * b.fQ(base, sh, 1);
            };
            if (b.p(m) == pm1) {
                ReducedRelation q33;
                q33.id = "QQt33";
                q33.lhs = (b.z(m - 1) * (b.Q(m - 2) * fQsq(Im, 0))) - (b.z(m) * (b.Q(m - 2) * fQsq(Im, 0)));
                q33.rhs = (b.z(m - 1) * (b.Q(m - 1, pm1) * b.Qt(m - 1, -pm1))) -
                          (b.z(m) * (b.Q(m - 1, -pm1) * b.Qt(m - 1, pm1)));
                q33.parent_I = P.prefix(m - 2);
                q33.parent_i = P.at(m - 1);
                q33.parent_j = P.at(m);
                add(std::move(q33));
            } else {
                ReducedRelation q34;
                q34.id = "QQt34";
                q34.lhs = (b.z(m - 1) * (b.Q(m - 1) * b.Qt(m - 1))) - (b.z(m) * (b.Q(m - 1) * b.Qt(m - 1)));
                q34.rhs = (b.z(m - 1) * (b.Q(m - 2, -pm1) * fQsq(Im, pm1))) -
                          (b.z(m) * (b.Q(m - 2, pm1) * fQsq(Im, -pm1)));
                q34.parent_I = P.prefix(m - 2);
                q34.parent_i = P.at(m - 1);
                q34.parent_j = P.at(m);
                add(std::move(q34));
            }
            ReducedRelation q35;
            q35.id = "QQt35";
            int pm = b.p(m);
            q35.lhs = (b.z(m) * Qsq(m - 1, 0)) - (b.z(m, -1) * Qsq(m - 1, 0));
            q35.rhs = (b.z(m) * (fQsq(Im, pm) * fQsq(Bm, -pm))) - (b.z(m, -1) * (fQsq(Im, -pm) * fQsq(Bm, pm)));
            q35.parent_I = P.prefix(m - 1);
            q35.parent_i = P.at(m);
            q35.parent_j = al.star(P.at(m));
            add(std::move(q35));
            break;
        }
        case ReducedFamily::spC: {
            interior(1, r - 2);
            IndexSet Ir = P.prefix(r);
            IndexSet Br = P.breve(r);
            {
                ReducedRelation q2;
                q2.id = "QQsp2";
                q2.lhs = (b.z(r - 1) * (b.Q(r - 2) * (b.fQ(Ir, -1) * b.fQ(Ir, 1)))) -
                         (b.z(r) * (b.Q(r - 2) * (b.fQ(Ir, -1) * b.fQ(Ir, 1))));
                q2.rhs = (b.z(r - 1) * (b.Q(r - 1, 1) * b.Qt(r - 1, -1))) -
                         (b.z(r) * (b.Q(r - 1, -1) * b.Qt(r - 1, 1)));
                q2.parent_I = P.prefix(r - 2);
                q2.parent_i = P.at(r - 1);
                q2.parent_j = P.at(r);
                add(std::move(q2));
            }
            {
                // facc02 ansatz, with the fixed D-twist substituted
                ReducedRelation fc;
                fc.id = "facc02";
                fc.mode = "ansatz";
                Rational zd = spec.fixed_twists.at(P.at(r + 1));
                fc.lhs = (b.z(r) * b.Qt(r)) + (Term(zd) * b.Qt(r));
                fc.rhs = (b.z(r) * (b.fQ(Ir, 1) * b.fQ(Br, -1))) + (Term(zd) * (b.fQ(Ir, -1) * b.fQ(Br, 1)));
                add(std::move(fc));
            }
            {
                ReducedRelation q3;
                q3.id = "QQsp3";
                q3.lhs = (b.z(r, 2) * b.Q(r - 1)) - (b.c(1) * b.Q(r - 1));
                q3.rhs = (b.z(r, 2) * (b.fQ(Ir, 2) * b.fQ(Br, -2))) - (b.c(1) * (b.fQ(Ir, -2) * b.fQ(Br, 2)));
                q3.parent_I = P.prefix(r - 1);
                q3.parent_i = P.at(r);
                q3.parent_j = P.at(r + 1);
                Rational zd = spec.fixed_twists.at(P.at(r + 1));
                QExpr repl = (b.z(r) * (b.fQ(Ir, 1) * b.fQ(Br, -1))) + (Term(zd) * (b.fQ(Ir, -1) * b.fQ(Br, 1)));
                Term den = reduced_z_plus_c(spec, P.at(r), zd == 1 ? 1 : -1).inverse();
                q3.substitutions.push_back({P.tilde(r), den * repl});
                add(std::move(q3));
            }
            break;
        }
        case ReducedFamily::ospD: {
            int m = r + s;
            bool lastB = al.is_boson(P.at(m));
            interior(1, lastB ? m - 3 : m - 2);
            IndexSet Im = P.prefix(m);
            IndexSet Bm = P.breve(m);
            if (!lastB) {
                // type C tail
                {
                    ReducedRelation q7;
                    q7.id = "QQd7";
                    q7.lhs = (b.z(m - 1) * (b.Q(m - 2) * (b.fQ(Im, -1) * b.fQ(Im, 1)))) -
                             (b.z(m) * (b.Q(m - 2) * (b.fQ(Im, -1) * b.fQ(Im, 1))));
                    q7.rhs = (b.z(m - 1) * (b.Q(m - 1, -1) * b.Qt(m - 1, 1))) -
                             (b.z(m) * (b.Q(m - 1, 1) * b.Qt(m - 1, -1)));
                    q7.parent_I = P.prefix(m - 2);
                    q7.parent_i = P.at(m - 1);
                    q7.parent_j = P.at(m);
                    if (al.is_boson(P.at(m - 1))) q7.id = "QQd9";
                    if (al.is_boson(P.at(m - 1))) {
                        q7.lhs = (b.z(m - 1) * (b.Q(m - 1) * b.fQ(acute_set(spec)))) -
                                 (b.z(m) * (b.Q(m - 1) * b.fQ(acute_set(spec))));
                        q7.rhs = (b.z(m - 1) * (b.Q(m - 2, -1) * b.fQ(Im, 2))) -
                                 (b.z(m) * (b.Q(m - 2, 1) * b.fQ(Im, -2)));
                    }
                    add(std::move(q7));
                }
                {
                    // facd4 ansatz
                    ReducedRelation fc;
                    fc.id = "facd4";
                    fc.mode = "ansatz";
                    Rational zd = spec.fixed_twists.at(P.at(m + 1));
                    fc.lhs = (b.z(m) * b.Qt(m)) + (Term(zd) * b.Qt(m));
                    fc.rhs = (b.z(m) * (b.fQ(Im, -1) * b.fQ(Bm, 1))) + (Term(zd) * (b.fQ(Im, 1) * b.fQ(Bm, -1)));
                    add(std::move(fc));
                }
                {
                    ReducedRelation q11;
                    q11.id = "QQd11";
                    q11.lhs = (b.z(m, 2) * b.Q(m - 1)) - (b.c(1) * b.Q(m - 1));
                    q11.rhs = (b.z(m, 2) * (b.fQ(Im, -2) * b.fQ(Bm, 2))) - (b.c(1) * (b.fQ(Im, 2) * b.fQ(Bm, -2)));
                    q11.parent_I = P.prefix(m - 1);
                    q11.parent_i = P.at(m);
                    q11.parent_j = P.at(m + 1);
                    Rational zd = spec.fixed_twists.at(P.at(m + 1));
                    QExpr repl = (b.z(m) * (b.fQ(Im, -1) * b.fQ(Bm, 1))) + (Term(zd) * (b.fQ(Im, 1) * b.fQ(Bm, -1)));
                    Term den = reduced_z_plus_c(spec, P.at(m), zd == 1 ? 1 : -1).inverse();
                    q11.substitutions.push_back({P.tilde(m), den * repl});
                    add(std::move(q11));
                }
            } else {
                // type D tail
                IndexSet acc = acute_set(spec);
                IndexSet grv = grave_set(spec);
                IndexSet dot = dot_set(spec);
                if (m >= 3) {
                    int pm2 = b.p(m - 2);
                    if (pm2 == b.p(m - 1)) {
                        ReducedRelation q3;
                        q3.id = "QQd3";
                        q3.lhs = (b.z(m - 2) * (b.Q(m - 3) * (b.fQ(Bm) * b.fQ(Im)))) -
                                 (b.z(m - 1) * (b.Q(m - 3) * (b.fQ(Bm) * b.fQ(Im))));
                        q3.rhs = (b.z(m - 2) * (b.Q(m - 2, pm2) * b.Qt(m - 2, -pm2))) -
                                 (b.z(m - 1) * (b.Q(m - 2, -pm2) * b.Qt(m - 2, pm2)));
                        q3.parent_I = P.prefix(m - 3);
                        q3.parent_i = P.at(m - 2);
                        q3.parent_j = P.at(m - 1);
                        add(std::move(q3));
                    } else {
                        ReducedRelation q4;
                        q4.id = "QQd4";
                        q4.lhs = (b.z(m - 2) * (b.Q(m - 2) * b.Qt(m - 2))) -
                                 (b.z(m - 1) * (b.Q(m - 2) * b.Qt(m - 2)));
                        q4.rhs = (b.z(m - 2) * (b.Q(m - 3, -pm2) * (b.fQ(Bm, pm2) * b.fQ(Im, pm2)))) -
                                 (b.z(m - 1) * (b.Q(m - 3, pm2) * (b.fQ(Bm, -pm2) * b.fQ(Im, -pm2))));
                        q4.parent_I = P.prefix(m - 3);
                        q4.parent_i = P.at(m - 2);
                        q4.parent_j = P.at(m - 1);
                        add(std::move(q4));
                    }
                }
                if (al.is_boson(P.at(m - 1))) {
                    ReducedRelation q5;
                    q5.id = "QQd5";
                    q5.lhs = (b.z(m - 1) * b.Q(m - 2)) - (b.z(m) * b.Q(m - 2));
                    q5.rhs = (b.z(m - 1) * (b.fQ(Bm, 1) * b.fQ(acc, -1))) -
                             (b.z(m) * (b.fQ(Bm, -1) * b.fQ(acc, 1)));
                    q5.parent_I = P.prefix(m - 2);
                    q5.parent_i = P.at(m - 1);
                    q5.parent_j = P.at(m);
                    add(std::move(q5));

                    ReducedRelation q6;
                    q6.id = "QQd6";
                    q6.lhs = (b.z(m - 1) * b.Q(m - 2)) - (b.z(m, -1) * b.Q(m - 2));
                    q6.rhs = (b.z(m - 1) * (b.fQ(Im, 1) * b.fQ(grv, -1))) -
                             (b.z(m, -1) * (b.fQ(Im, -1) * b.fQ(grv, 1)));
                    q6.parent_I = P.prefix(m - 2);
                    q6.parent_i = P.at(m - 1);
                    q6.parent_j = al.star(P.at(m));
                    // Q_{I_{m-2} + i*_m} = curlyQ_breve curlyQ_grave (facd2s)
                    IndexSet Jp = sorted_set([&] {
                        auto v = P.prefix(m - 2);
                        v.push_back(al.star(P.at(m)));
                        return v;
                    }());
                    Term one;
                    QExpr fact = QExpr(one) * (b.fQ(Bm) * b.fQ(grv));
                    q6.substitutions.push_back({Jp, fact});
                    add(std::move(q6));
                } else {
                    ReducedRelation q8;
                    q8.id = "QQd8";
                    q8.lhs = (b.z(m - 1) * (b.Qt(m - 1) * b.fQ(Bm))) - (b.z(m) * (b.Qt(m - 1) * b.fQ(Bm)));
                    q8.rhs = (b.z(m - 1) * (b.Q(m - 2, 1) * b.fQ(Im, -2))) -
                             (b.z(m) * (b.Q(m - 2, -1) * b.fQ(Im, 2)));
                    q8.parent_I = P.prefix(m - 2);
                    q8.parent_i = P.at(m - 1);
                    q8.parent_j = P.at(m);
                    add(std::move(q8));

                    ReducedRelation q10;
                    q10.id = "QQd10";
                    q10.lhs = (b.z(m - 1) * (q_of(dot) * b.fQ(Im))) - (b.z(m, -1) * (q_of(dot) * b.fQ(Im)));
                    q10.rhs = (b.z(m - 1) * (b.Q(m - 2, 1) * b.fQ(Bm, -2))) -
                              (b.z(m, -1) * (b.Q(m - 2, -1) * b.fQ(Bm, 2)));
                    q10.parent_I = P.prefix(m - 2);
                    q10.parent_i = P.at(m - 1);
                    q10.parent_j = al.star(P.at(m));
                    add(std::move(q10));
                }
            }
            break;
        }
    }
    return out;
}

}  // namespace qfold
