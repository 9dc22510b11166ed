#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "qfold/eval.hpp"
#include "qfold/qexpr.hpp"
#include "qfold/reduction.hpp"

using namespace qfold;

static Term random_term(Rng& rng, int nvars) {
    Term t(rng.rational(5));
    for (int v = 1; v <= nvars; ++v)
        if (rng.integer(0, 2) == 0) t.mul_z(v, HalfInt::whole((int)rng.integer(-3, 3)));
    for (int k = 0; k < 2; ++k) {
        IndexSet base;
        for (int v = 1; v <= nvars; ++v)
            if (rng.integer(0, 1)) base.push_back(v);
        t.mul_q(QSymbol(base, Shift::of_half((int)rng.integer(-4, 4), (int)rng.integer(0, 1))),
                (int)rng.integer(-2, 2));
    }
    return t;
}

TEST_CASE("canonicalization is insertion-order independent") {
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Term> terms;
        for (int k = 0; k < 6; ++k) terms.push_back(random_term(rng, 3));
        QExpr fwd, rev, shuf;
        for (const auto& t : terms) fwd.add_term(t);
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) rev.add_term(*it);
        std::shuffle(terms.begin(), terms.end(), rng.engine());
        for (const auto& t : terms) shuf.add_term(t);
        CHECK(fwd == rev);
        CHECK(fwd == shuf);
    }
}

TEST_CASE("expression arithmetic basics") {
    QExpr x = q_of({1, 2}, Shift::of(1));
    CHECK((x * x.inverse_term()) == QExpr::one());
    QExpr e = q_of({1}) + q_of({2});
    CHECK(e.shifted(Shift::of(0)) == e);
    // shift_all is an automorphism
    Rng rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        QExpr f{random_term(rng, 2)};
        QExpr g{random_term(rng, 2)};
        Shift s = Shift::of_half((int)rng.integer(-3, 3), (int)rng.integer(0, 1));
        CHECK((f * g).shifted(s) == f.shifted(s) * g.shifted(s));
        CHECK((f + g).shifted(s) == f.shifted(s) + g.shifted(s));
    }
    CHECK_THROWS(e.inverse_term());
}

TEST_CASE("scalar factor expansion") {
    Term t;
    t.mul_s(z_diff(1, 2).first);
    t.mul_s(z_shift(1, 1));
    QExpr e{t};
    QExpr expanded = e.expanded_scalars();
    // (z1 - z2)(z1 + 1) = z1^2 + z1 - z1 z2 - z2
    CHECK(expanded.size() == 4);
    LaurentPoly cl = expanded.char_limit(2);
    LaurentPoly z1 = LaurentPoly::monomial(2, 0, HalfInt::whole(1));
    LaurentPoly z2 = LaurentPoly::monomial(2, 1, HalfInt::whole(1));
    CHECK(cl == (z1 - z2) * (z1 + LaurentPoly::one(2)));
}

TEST_CASE("apply_reduction examples") {
    // osp(2r+1|2s) with r = s = 1 on the tuple (5,2,4,1,3)
    GradedAlphabet al(2, 3);
    NestingPath path(al, {5, 2, 4, 1, 3});
    auto spec = make_reduction(ReducedFamily::ospB, 1, 1, path);

    // Q_J -> Q_empty (eta inactive here, so no parity mark)
    QExpr qfull = q_of(al.full());
    QExpr red = apply_reduction(qfull, spec);
    CHECK(red == q_of({}));

    // idempotence on random expressions
    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        QExpr e{random_term(rng, 5)};
        QExpr once = apply_reduction(e, spec);
        CHECK(apply_reduction(once, spec) == once);
    }

    // homomorphism: reduction commutes with products and sums
    for (int trial = 0; trial < 20; ++trial) {
        QExpr f{random_term(rng, 5)};
        QExpr g{random_term(rng, 5)};
        CHECK(apply_reduction(f * g, spec) == apply_reduction(f, spec) * apply_reduction(g, spec));
        CHECK(apply_reduction(f + g, spec) == apply_reduction(f, spec) + apply_reduction(g, spec));
    }

    // eta-active family marks the flipped orbit with a half-period
    GradedAlphabet alt(2, 3);
    auto spect = make_reduction(ReducedFamily::glTw1, 1, 1, NestingPath(alt, {5, 2, 4, 1, 3}));
    QExpr redt = apply_reduction(q_of(alt.full()), spect);
    CHECK(redt == q_of({}, Shift::of(0, 1)));
}

TEST_CASE("evaluation: trivial ratio and zeta-consistency") {
    EvalContext ctx;
    ctx.assign_roots({1}, {rat(3), rat(5)});
    ctx.w[1] = rat(2);
    ctx.w[2] = rat(3);
    Term t;
    t.mul_q(QSymbol({1}, Shift::of(2)));
    t.mul_q(QSymbol({1}, Shift::of(2)), -1);
    CHECK(eval(QExpr{t}, ctx) == rat(1));

    // with all root lists empty, eval equals char_limit at the same twists
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        Term u(rng.rational(5));
        u.mul_z(1, HalfInt((int)rng.integer(-3, 3)));
        u.mul_z(2, HalfInt((int)rng.integer(-3, 3)));
        u.mul_q(QSymbol({1}, Shift::of((int)rng.integer(-2, 2))), (int)rng.integer(-2, 2));
        EvalContext c2;
        c2.assign_coeffs({1}, {rat(1)});  // Q == 1
        c2.w[1] = rng.rational(5);
        c2.w[2] = rng.rational(5);
        QExpr e{u};
        CHECK(eval(e, c2) == e.char_limit(2).eval_sqrt_point({c2.w[1], c2.w[2]}));
    }
}

TEST_CASE("eval shift covariance") {
    // eval(shifted expr) at t equals eval(expr) at shifted t
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        EvalContext ctx;
        ctx.sq = rng.rational_avoiding({rat(0), rat(1), rat(-1)}, 5);
        ctx.t = rng.rational(7);
        ctx.eta_sign = -1;
        ctx.assign_roots({1, 2}, {rng.rational(9)});
        Term u;
        u.mul_q(QSymbol({1, 2}, Shift::of_half((int)rng.integer(-3, 3), (int)rng.integer(0, 1))));
        QExpr e{u};
        Shift s = Shift::of_half((int)rng.integer(-3, 3), (int)rng.integer(0, 1));
        EvalContext moved = ctx;
        moved.t = ctx.t_shifted(s);
        CHECK(eval(e.shifted(s), ctx) == eval(e, moved));
    }
}

TEST_CASE("substitution replaces symbols shift-covariantly") {
    QExpr repl = q_of({1}, Shift::of(1)) * q_of({1}, Shift::of(-1));
    Term t;
    t.mul_q(QSymbol({1, 2}, Shift::of(2)), 2);
    QExpr e{t};
    QExpr subbed = e.substituted({1, 2}, false, repl);
    Term want;
    want.mul_q(QSymbol({1}, Shift::of(3)), 2);
    want.mul_q(QSymbol({1}, Shift::of(1)), 2);
    CHECK(subbed == QExpr{want});
}
