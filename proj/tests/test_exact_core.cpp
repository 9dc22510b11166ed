#include <catch2/catch_amalgamated.hpp>

#include "qfold/half_int.hpp"
#include "qfold/laurent.hpp"
#include "qfold/rational.hpp"

using namespace qfold;

TEST_CASE("shift composition group law") {
    // period: [1/2,e] o [1/2,e] = [1,.]
    Shift a = Shift::of_half(1, 1);
    CHECK(shift_compose(a, a) == Shift::of(1, 0));
    // identity
    Shift id = Shift::of(0, 0);
    Shift x = Shift::of_half(5, 1);
    CHECK(shift_compose(id, x) == x);
    // group law with opposite offsets
    CHECK(shift_compose(Shift::of_half(3, 0), Shift::of_half(-3, 1)) == Shift::of(0, 1));
}

TEST_CASE("shift composition is associative and commutative; eta is Z2") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Shift a = Shift::of_half((int)rng.integer(-9, 9), (int)rng.integer(0, 1));
        Shift b = Shift::of_half((int)rng.integer(-9, 9), (int)rng.integer(0, 1));
        Shift c = Shift::of_half((int)rng.integer(-9, 9), (int)rng.integer(0, 1));
        CHECK(shift_compose(a, b) == shift_compose(b, a));
        CHECK(shift_compose(shift_compose(a, b), c) == shift_compose(a, shift_compose(b, c)));
        CHECK((a.eta + a.eta) % 2 == 0);
    }
}

static LaurentPoly random_poly(Rng& rng, int arity, int terms) {
    LaurentPoly p(arity);
    for (int t = 0; t < terms; ++t) {
        LaurentPoly::Expo e(arity);
        for (int i = 0; i < arity; ++i) e[i] = HalfInt((int)rng.integer(-4, 4));
        p.add_term(e, rng.rational(5));
    }
    return p;
}

TEST_CASE("laurent ring axioms on random triples") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        auto p = random_poly(rng, 3, 4);
        auto q = random_poly(rng, 3, 4);
        auto r = random_poly(rng, 3, 4);
        CHECK(p * (q + r) == p * q + p * r);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p + q == q + p);
        CHECK(p - p == LaurentPoly(3));
    }
}

TEST_CASE("laurent examples") {
    // (x + x^-1)(x - x^-1) = x^2 - x^-2
    auto x = LaurentPoly::monomial(1, 0, HalfInt::whole(1));
    auto xi = LaurentPoly::monomial(1, 0, HalfInt::whole(-1));
    auto prod = (x + xi) * (x - xi);
    auto expect = LaurentPoly::monomial(1, 0, HalfInt::whole(2)) -
                  LaurentPoly::monomial(1, 0, HalfInt::whole(-2));
    CHECK(prod == expect);
    // eval(x + x^-1, x = 2) = 5/2
    CHECK((x + xi).eval_point({rat(2)}) == rat(5, 2));
    // p + (-p) = 0
    auto p = x * x + xi;
    CHECK((p - p).is_zero_poly());
}

TEST_CASE("eval is a ring homomorphism") {
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        auto p = random_poly(rng, 2, 3);
        auto q = random_poly(rng, 2, 3);
        std::vector<Rational> sqrt_pt = {rng.rational(6), rng.rational(6)};
        auto ev = [&](const LaurentPoly& f) { return f.eval_sqrt_point(sqrt_pt); };
        CHECK(ev(p * q) == ev(p) * ev(q));
        CHECK(ev(p + q) == ev(p) + ev(q));
    }
}

TEST_CASE("half integer exponents evaluate through square roots") {
    // z^{1/2} + z^{-1/2} at w = z^{1/2} = 3/2
    LaurentPoly f = LaurentPoly::monomial(1, 0, HalfInt::half(1)) +
                    LaurentPoly::monomial(1, 0, HalfInt::half(-1));
    CHECK(f.eval_sqrt_point({rat(3, 2)}) == rat(3, 2) + rat(2, 3));
}
