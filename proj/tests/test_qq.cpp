#include <catch2/catch_amalgamated.hpp>

#include "qfold/qq.hpp"
#include "qfold/qq_catalog.hpp"
#include "qfold/rootform.hpp"
#include "qfold/samplers.hpp"
#include "qfold/wsym.hpp"

using namespace qfold;

namespace {

bool zero_on_detsol(const QExpr& e, const GradedAlphabet& al, Rng& rng, int trials = 3) {
    DetSolution ds(al, rng);
    return equal_by_sampling(e, QExpr::zero(), [&](int) { return ds.context(rng); }, trials);
}

/// All (I, i, j) instances for the alphabet.
template <typename F>
void for_all_instances(const GradedAlphabet& al, F&& f) {
    int n = al.size();
    for (int mask = 0; mask < (1 << n); ++mask) {
        IndexSet I;
        for (int a = 1; a <= n; ++a)
            if (mask & (1 << (a - 1))) I.push_back(a);
        for (int i = 1; i <= n; ++i) {
            if (std::find(I.begin(), I.end(), i) != I.end()) continue;
            for (int j = i + 1; j <= n; ++j) {
                if (std::find(I.begin(), I.end(), j) != I.end()) continue;
                f(I, i, j);
            }
        }
    }
}

}  // namespace

TEST_CASE("determinant solution satisfies the generic QQ system exhaustively (small ranks)") {
    Rng rng(101);
    for (auto [M, N] : {std::pair{2, 0}, {1, 1}, {2, 1}, {0, 3}}) {
        GradedAlphabet al(M, N);
        DetSolution ds(al, rng);
        for_all_instances(al, [&](const IndexSet& I, int i, int j) {
            QQRelation rel = qq_generic(al, I, i, j);
            bool ok = equal_by_sampling(rel.diff(), QExpr::zero(),
                                        [&](int) { return ds.context(rng); }, 2);
            INFO(rel.id);
            CHECK(ok);
        });
    }
}

TEST_CASE("trivial and perturbed relations behave as controls") {
    Rng rng(103);
    GradedAlphabet al(2, 1);
    // trivial Q = Q passes in one trial
    QQRelation triv{"trivial", q_of({1}), q_of({1})};
    CHECK(zero_on_detsol(triv.diff(), al, rng, 1));
    // perturbed coefficient z1 -> z1 + 1 must fail
    QQRelation rel = qq_generic(al, {}, 1, 2);
    Term bump;
    bump.mul_s(z_shift(1, 1));
    bump.mul_z(1, HalfInt::whole(-1));
    QExpr perturbed = (bump * QExpr(rel.rhs.terms()[0])) +
                      (rel.rhs - QExpr(rel.rhs.terms()[0]));
    QQRelation bad{"negative-control", rel.lhs, perturbed.expanded_scalars()};
    CHECK_FALSE(zero_on_detsol(bad.diff(), al, rng, 3));
}

TEST_CASE("det solution: 1x1 collapse and equal-size branch consistency") {
    Rng rng(107);
    GradedAlphabet al(2, 2);
    DetSolution ds(al, rng);
    EvalContext ctx = ds.context(rng);
    // B={b}, F=empty: the value is the assigned polynomial itself
    for (int b = 1; b <= 2; ++b)
        CHECK(ds.value({b}, ctx.t, ctx) == ctx.poly_value(SymbolKey{{b}, false}, ctx.t));
    // mm = nn = 2: the two Casoratian presentations agree: check through a
    // fermionic relation that mixes them across sizes
    QQRelation rel = qq_generic(al, {1, 3}, 2, 4);
    CHECK(zero_on_detsol(rel.diff(), al, rng, 2));
}

TEST_CASE("4-term identity and id-A") {
    Rng rng(109);
    GradedAlphabet al(2, 1);
    std::vector<int> tuple{2, 3, 1};
    NestingPath P(al, tuple);
    for (int a = 1; a <= 2; ++a) {
        NestingPath Ps = P.with_swapped_values(P.at(a), P.at(a + 1));
        QExpr diff = segment_sum(XFamily::generic(P), a, a + 1) -
                     segment_sum(XFamily::generic(Ps), a, a + 1);
        CHECK(zero_on_detsol(diff, al, rng));
    }
    // id-A is a term identity (no QQ input): check structurally
    for (int a = 1; a <= 2; ++a) {
        NestingPath Ps = P.with_swapped_values(P.at(a), P.at(a + 1));
        int pa = al.parity(P.at(a)), pb = al.parity(P.at(a + 1));
        QExpr lhs = x_function(XFamily::generic(P), a).shifted(Shift::of(-pb)).pow(pa) *
                    x_function(XFamily::generic(P), a + 1).shifted(Shift::of(pa)).pow(pb);
        QExpr rhs = x_function(XFamily::generic(Ps), a).shifted(Shift::of(-pa)).pow(pb) *
                    x_function(XFamily::generic(Ps), a + 1).shifted(Shift::of(pb)).pow(pa);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("generic zero curvature to order 4 under the determinant solution") {
    Rng rng(113);
    GradedAlphabet al(2, 1);
    NestingPath P(al, {2, 3, 1});
    for (int a = 1; a <= 2; ++a) {
        NestingPath Ps = P.with_swapped_values(P.at(a), P.at(a + 1));
        auto [lhs, rhs] = zcc_sides(XFamily::generic(P), XFamily::generic(Ps), a, 4);
        DetSolution ds(al, rng);
        for (int k = 1; k <= 4; ++k) {
            QExpr diff = lhs.coeff(k) - rhs.coeff(k);
            CHECK(equal_by_sampling(diff, QExpr::zero(), [&](int) { return ds.context(rng); }, 2));
        }
    }
}

TEST_CASE("AB-id holds as a series identity") {
    QExpr A = q_of({1}, Shift::of(1));
    QExpr B = q_of({2}, Shift::of(-1));
    int order = 5;
    auto inv = [&](const QExpr& f) { return SeriesInX::linear_factor(order, f, -1); };
    SeriesInX mid(order);
    mid.coeff(0) = QExpr::one();
    mid.coeff(2) = Rational(-1) * (A * B.shifted(Shift::of(2)));
    SeriesInX lhs = inv(A) * mid * inv(B);
    SeriesInX rhs = inv(A) + inv(B) - SeriesInX::one(order);
    SeriesInX mid2(order);
    mid2.coeff(0) = QExpr::one();
    mid2.coeff(2) = Rational(-1) * (B * A.shifted(Shift::of(2)));
    SeriesInX lhs2 = inv(B) * mid2 * inv(A);
    for (int k = 0; k <= order; ++k) {
        CHECK(lhs.coeff(k) == rhs.coeff(k));
        CHECK(lhs2.coeff(k) == rhs.coeff(k));
    }
}

namespace {

std::vector<std::pair<ReducedFamily, NestingPath>> reduced_cases() {
    std::vector<std::pair<ReducedFamily, NestingPath>> out;
    GradedAlphabet b23(2, 3);
    out.push_back({ReducedFamily::ospB, NestingPath(b23, {5, 2, 4, 1, 3})});
    out.push_back({ReducedFamily::ospB, NestingPath(b23, {2, 5, 4, 3, 1})});
    out.push_back({ReducedFamily::glTw1, NestingPath(b23, {5, 2, 4, 1, 3})});
    out.push_back({ReducedFamily::glTw1, NestingPath(b23, {2, 5, 4, 3, 1})});
    GradedAlphabet b32(3, 2);
    out.push_back({ReducedFamily::glTw2, NestingPath(b32, {1, 4, 2, 5, 3})});
    out.push_back({ReducedFamily::glTw2, NestingPath(b32, {4, 1, 2, 3, 5})});
    GradedAlphabet b22(2, 2);
    out.push_back({ReducedFamily::glTw0, NestingPath(b22, {1, 3, 4, 2})});
    out.push_back({ReducedFamily::glTw0, NestingPath(b22, {3, 1, 2, 4})});
    GradedAlphabet c6(6, 0);
    out.push_back({ReducedFamily::spC, NestingPath(c6, {1, 2, 3, 4, 5, 6})});
    GradedAlphabet d24(2, 4);
    out.push_back({ReducedFamily::ospD, NestingPath(d24, {6, 1, 4, 5, 2, 3})});
    out.push_back({ReducedFamily::ospD, NestingPath(d24, {1, 6, 4, 5, 3, 2})});
    GradedAlphabet d44(4, 4);
    out.push_back({ReducedFamily::ospD, NestingPath(d44, {8, 1, 2, 6, 7, 3, 4, 5})});
    out.push_back({ReducedFamily::ospD, NestingPath(d44, {1, 8, 2, 6, 7, 3, 5, 4})});
    return out;
}

std::pair<int, int> family_rs(ReducedFamily fam, const NestingPath& P) {
    int M = P.alphabet().M(), N = P.alphabet().N();
    switch (fam) {
        case ReducedFamily::ospB:
        case ReducedFamily::glTw1: return {M / 2, (N - 1) / 2};
        case ReducedFamily::glTw2: return {(M - 1) / 2, N / 2};
        case ReducedFamily::glTw0: return {M / 2, N / 2};
        case ReducedFamily::spC: return {(M - 2) / 2, 0};
        case ReducedFamily::ospD: return {M / 2, (N - 2) / 2};
    }
    return {0, 0};
}

}  // namespace

TEST_CASE("every catalog relation with a parent is an exact reduction of the generic system") {
    for (const auto& [fam, path] : reduced_cases()) {
        auto [r, s] = family_rs(fam, path);
        auto spec = make_reduction(fam, r, s, path);
        auto cat = qq_catalog(spec);
        CHECK(!cat.empty());
        for (const auto& rel : cat) {
            if (!rel.parent_I) continue;
            INFO(family_name(fam) + " " + rel.id + " on " + path.str());
            CHECK(derivation_matches(spec, rel));
        }
    }
}

TEST_CASE("derivation checker rejects perturbed catalog entries") {
    GradedAlphabet al(2, 3);
    NestingPath path(al, {5, 2, 4, 1, 3});
    auto spec = make_reduction(ReducedFamily::ospB, 1, 1, path);
    auto cat = qq_catalog(spec);
    for (auto rel : cat) {
        if (!rel.parent_I) continue;
        rel.rhs = Rational(2) * rel.rhs;  // break the normalization
        INFO(rel.id);
        CHECK_FALSE(derivation_matches(spec, rel));
        break;
    }
}

namespace {

const ReducedRelation* find_rel(const std::vector<ReducedRelation>& cat, const std::string& id) {
    for (const auto& r : cat)
        if (r.id == id) return &r;
    return nullptr;
}

/// proofQQb / proofQQ chain: multiply both QQb5-type sides by
/// (z - z^{-1}) Qtilde and rewrite with the three node relations.
bool verify_node_chain(const ReductionSpec& spec) {
    const auto& P = spec.path;
    int m = spec.r + spec.s;
    auto cat = qq_catalog(spec);
    bool tw1 = spec.family == ReducedFamily::glTw1;
    bool tw2 = spec.family == ReducedFamily::glTw2;
    std::string five = spec.family == ReducedFamily::ospB ? "QQb5" : (tw1 ? "QQt15" : "QQt25");
    std::string five2 = spec.family == ReducedFamily::ospB ? "QQb5-2" : (tw1 ? "QQt16" : "QQt26");
    std::string five3 = spec.family == ReducedFamily::ospB ? "QQb5-3" : (tw1 ? "QQt17" : "QQt27");
    std::string four = spec.family == ReducedFamily::ospB ? "QQb4" : (tw1 ? "QQt14" : "QQt24");
    const auto* r5 = find_rel(cat, five);
    const auto* r52 = find_rel(cat, five2);
    const auto* r53 = find_rel(cat, five3);
    const auto* r4 = find_rel(cat, four);
    if (!r5 || !r52 || !r53 || !r4) return false;

    int im = P.at(m);
    Term zp1 = reduced_z_plus_c(spec, im, 1);           // (z + 1)
    Term zm1 = reduced_z_plus_c(spec, im, -1);          // (z - 1)
    Term zinv = reduced_z_pow(spec, im, -1);            // z^{-1}
    Term zinv_p1 = zinv * zp1;                          // (z^{-1} + 1) up to z^{-1}(z+1)
    Term zinv_m1 = zinv * zm1;
    zinv_m1.coeff *= -1;                                // (z^{-1} - 1) = -z^{-1}(z-1)
    Term zmzinv = zinv * zp1 * zm1;                     // (z - z^{-1})

    QSymbol Qm1(P.prefix(m - 1), Shift{});
    QSymbol Qm(P.prefix(m), Shift{});
    QSymbol Qt(P.tilde(m), Shift{});
    QSymbol Qb(P.breve(m), Shift{});

    QExpr tilde{[&] {
        Term t;
        t.mul_q(Qt);
        return t;
    }()};
    QExpr EL = (zmzinv * (r5->lhs * tilde));
    QExpr ER = (zmzinv * (r5->rhs * tilde));
    // left: rewrite the (Q_{m-1} Qt^{[eta]})-pair with the 5-2 relation
    QSymbol QtL = spec.eta_active ? QSymbol(P.tilde(m), Shift(HalfInt::whole(0), 1)) : Qt;
    EL = substitute_product(EL, Qm1, QtL, zmzinv, r52->rhs);
    // right: rewrite (Qb Qt) with 5-3 and (Qm Qt) with the 4-relation
    Term c53 = spec.family == ReducedFamily::ospB ? zinv_p1 : zinv_m1;
    Term c4 = spec.family == ReducedFamily::ospB ? zp1 : zm1;
    ER = substitute_product(ER, Qb, Qt, c53, r53->rhs);
    ER = substitute_product(ER, Qm, Qt, c4, r4->rhs);
    QExpr diff = EL - ER;
    auto need = diff.scalar_denominators();
    diff = diff.times_scalars(need).expanded_scalars();
    return diff.is_zero();
}

}  // namespace

TEST_CASE("QQb5-type relations follow from the node system by the printed chains") {
    GradedAlphabet b23(2, 3);
    CHECK(verify_node_chain(make_reduction(ReducedFamily::ospB, 1, 1, NestingPath(b23, {5, 2, 4, 1, 3}))));
    CHECK(verify_node_chain(make_reduction(ReducedFamily::glTw1, 1, 1, NestingPath(b23, {5, 2, 4, 1, 3}))));
    GradedAlphabet b32(3, 2);
    CHECK(verify_node_chain(make_reduction(ReducedFamily::glTw2, 1, 1, NestingPath(b32, {1, 4, 2, 5, 3}))));
    // rank 2 instance
    GradedAlphabet b43(4, 3);
    CHECK(verify_node_chain(make_reduction(ReducedFamily::ospB, 2, 1, NestingPath(b43, {7, 1, 2, 6, 3, 4, 5}))));
}

TEST_CASE("QQb8 holds on node samples built from QQb3, QQb6, QQb7") {
    GradedAlphabet al(2, 3);
    NestingPath path(al, {2, 5, 4, 3, 1});  // p_{i_2} = -1
    auto spec = make_reduction(ReducedFamily::ospB, 1, 1, path);
    auto cat = qq_catalog(spec);
    const auto* q8 = find_rel(cat, "QQb8");
    REQUIRE(q8 != nullptr);
    const auto* q6 = find_rel(cat, "QQb6");
    const auto* q7 = find_rel(cat, "QQb7");
    REQUIRE(q6 != nullptr);
    REQUIRE(q7 != nullptr);
    Rng rng(211);
    int checked = 0;
    for (int trial = 0; checked < 3 && trial < 12; ++trial) {
        try {
            OspBMinusNode node(spec, rng);
            // sampler consistency: the three premises hold
            CHECK(is_zero(eval(q6->diff(), node.context())));
            CHECK(is_zero(eval(q7->diff(), node.context())));
            CHECK(is_zero(eval(q8->diff(), node.context())));
            ++checked;
        } catch (const EvalDomainError&) {
            continue;
        }
    }
    CHECK(checked == 3);
}

TEST_CASE("W-symmetry: 4-term and 6-term consequences via swap chains") {
    Rng rng(223);
    GradedAlphabet b23(2, 3);
    // ospB, both parities of i_{r+s}
    for (auto tuple : {std::vector<int>{5, 2, 4, 1, 3}, {2, 5, 4, 3, 1}}) {
        NestingPath P(b23, tuple);
        auto spec = make_reduction(ReducedFamily::ospB, 1, 1, P);
        int m = 2, n = 5;
        // s-type: TinvB1 at a=1 and its dual TinvB2
        {
            std::vector<ValueSwap> chain{{P.at(1), P.at(2)},
                                         {b23.star(P.at(1)), b23.star(P.at(2))}};
            auto end = P.with_swapped_values(chain[0].x, chain[0].y)
                           .with_swapped_values(chain[1].x, chain[1].y);
            auto spec_end = make_reduction(ReducedFamily::ospB, 1, 1, end);
            QExpr lhs = apply_reduction(segment_sum(XFamily::generic(P), 1, 2), spec);
            QExpr rhs = apply_reduction(segment_sum(XFamily::generic(end), 1, 2), spec_end);
            auto rep = verify_tinv_chain(spec, 1, 2, chain, lhs, rhs, rng);
            CHECK(rep.passed());
            QExpr lhs2 = apply_reduction(segment_sum(XFamily::generic(P), n - 1, n), spec);
            QExpr rhs2 = apply_reduction(segment_sum(XFamily::generic(end), n - 1, n), spec_end);
            auto rep2 = verify_tinv_chain(spec, n - 1, n, chain, lhs2, rhs2, rng);
            CHECK(rep2.passed());
        }
        // k-type: the 6-term TinvB3 through three non-symmetric steps
        {
            int im = P.at(m), ifx = 2 * 1 + 1 + 1;
            std::vector<ValueSwap> chain{{ifx, b23.star(im)}, {im, b23.star(im)}, {im, ifx}};
            auto e1 = P.with_swapped_values(chain[0].x, chain[0].y);
            auto e2 = e1.with_swapped_values(chain[1].x, chain[1].y);
            auto end = e2.with_swapped_values(chain[2].x, chain[2].y);
            auto spec_end = make_reduction(ReducedFamily::ospB, 1, 1, end);
            QExpr lhs = apply_reduction(segment_sum(XFamily::generic(P), m, m + 2), spec);
            QExpr rhs = apply_reduction(segment_sum(XFamily::generic(end), m, m + 2), spec_end);
            auto rep = verify_tinv_chain(spec, m, m + 2, chain, lhs, rhs, rng);
            CHECK(rep.passed());
        }
    }
    // negative control: a wrong chain must not telescope to the identity
    {
        NestingPath P(b23, {5, 2, 4, 1, 3});
        auto spec = make_reduction(ReducedFamily::ospB, 1, 1, P);
        std::vector<ValueSwap> chain{{P.at(1), P.at(2)}};  // missing the starred swap
        auto end = P.with_swapped_values(chain[0].x, chain[0].y);
        // end path is not symmetric; the reduced images cannot match the
        // stated identity built on symmetric end data
        CHECK_FALSE(end.symmetric());
    }
}

TEST_CASE("W-symmetry: glTw0 and singular families") {
    Rng rng(227);
    // glTw0: single-swap k-move
    {
        GradedAlphabet al(2, 2);
        NestingPath P(al, {1, 3, 4, 2});
        auto spec = make_reduction(ReducedFamily::glTw0, 1, 1, P);
        int m = 2;
        std::vector<ValueSwap> chain{{P.at(m), al.star(P.at(m))}};
        auto end = P.with_swapped_values(chain[0].x, chain[0].y);
        auto spec_end = make_reduction(ReducedFamily::glTw0, 1, 1, end);
        QExpr lhs = apply_reduction(segment_sum(XFamily::generic(P), m, m + 1), spec);
        QExpr rhs = apply_reduction(segment_sum(XFamily::generic(end), m, m + 1), spec_end);
        auto rep = verify_tinv_chain(spec, m, m + 1, chain, lhs, rhs, rng);
        CHECK(rep.passed());
    }
    // spC: s-move consequences are Tinv reductions
    {
        GradedAlphabet al(6, 0);
        NestingPath P(al, {1, 2, 3, 4, 5, 6});
        auto spec = make_reduction(ReducedFamily::spC, 2, 0, P);
        std::vector<ValueSwap> chain{{1, 2}, {5, 6}};
        auto end = P.with_swapped_values(1, 2).with_swapped_values(5, 6);
        auto spec_end = make_reduction(ReducedFamily::spC, 2, 0, end);
        QExpr lhs = apply_reduction(segment_sum(XFamily::generic(P), 1, 2), spec);
        QExpr rhs = apply_reduction(segment_sum(XFamily::generic(end), 1, 2), spec_end);
        auto rep = verify_tinv_chain(spec, 1, 2, chain, lhs, rhs, rng);
        CHECK(rep.passed());
    }
}

TEST_CASE("Tinvsp3 and the type C TinvD3 follow from the solved centre relation") {
    Rng rng(229);
    // sp(4): Q_{I_{r-1}} solved from QQsp3; evaluate the 4-term identity
    {
        GradedAlphabet al(6, 0);
        NestingPath P(al, {1, 2, 3, 4, 5, 6});
        auto spec = make_reduction(ReducedFamily::spC, 2, 0, P);
        int rr = 2;
        NestingPath Pk = P.with_swapped_values(P.at(rr), al.star(P.at(rr)));
        auto speck = make_reduction(ReducedFamily::spC, 2, 0, Pk);
        QExpr lhs = x_function(XFamily::reduced(spec), rr) + x_function(XFamily::reduced(spec), rr + 3);
        QExpr rhs = x_function(XFamily::reduced(speck), rr) + x_function(XFamily::reduced(speck), rr + 3);
        auto cat = qq_catalog(spec);
        const auto* q3 = find_rel(cat, "QQsp3");
        REQUIRE(q3);
        // solved label: (z^2 - 1) Q_{I_{r-1}} = rhs(QQsp3)
        SolvedLabel sl;
        sl.key = SymbolKey{P.prefix(rr - 1), false};
        sl.denom = reduced_z_plus_c(spec, P.at(rr), 1) * reduced_z_plus_c(spec, P.at(rr), -1);
        sl.expr = q3->rhs;
        int good = 0;
        for (int trial = 0; good < 3 && trial < 12; ++trial) {
            try {
                EvalContext ctx = reduced_generic_ctx(spec, {lhs, rhs}, rng, {sl});
                CHECK(is_zero(eval(q3->diff(), ctx)));
                CHECK(eval(lhs - rhs, ctx) == 0);
                ++good;
            } catch (const EvalDomainError&) {
                continue;
            }
        }
        CHECK(good == 3);
    }
    // osp(2|4) type C tail: same scheme with QQd11
    {
        GradedAlphabet al(2, 6);
        NestingPath P(al, {2, 8, 7, 6, 5, 4, 3, 1});
        auto spec = make_reduction(ReducedFamily::ospD, 1, 2, P);
        int m = 3;
        NestingPath Pk = P.with_swapped_values(P.at(m), al.star(P.at(m)));
        auto speck = make_reduction(ReducedFamily::ospD, 1, 2, Pk);
        QExpr lhs = x_function(XFamily::reduced(spec), m) + x_function(XFamily::reduced(spec), m + 3);
        QExpr rhs = x_function(XFamily::reduced(speck), m) + x_function(XFamily::reduced(speck), m + 3);
        auto cat = qq_catalog(spec);
        const auto* q11 = find_rel(cat, "QQd11");
        REQUIRE(q11);
        SolvedLabel sl;
        sl.key = SymbolKey{P.prefix(m - 1), false};
        sl.denom = reduced_z_plus_c(spec, P.at(m), 1) * reduced_z_plus_c(spec, P.at(m), -1);
        sl.expr = q11->rhs;
        int good = 0;
        for (int trial = 0; good < 3 && trial < 12; ++trial) {
            try {
                EvalContext ctx = reduced_generic_ctx(spec, {lhs, rhs}, rng, {sl});
                CHECK(is_zero(eval(q11->diff(), ctx)));
                CHECK(eval(lhs - rhs, ctx) == 0);
                ++good;
            } catch (const EvalDomainError&) {
                continue;
            }
        }
        CHECK(good == 3);
    }
}

TEST_CASE("type D flip relation is structural (chchD)") {
    GradedAlphabet al(2, 4);
    NestingPath P(al, {6, 1, 4, 5, 2, 3});  // i_{r+s} = 1 bosonic
    auto spec = make_reduction(ReducedFamily::ospD, 1, 1, P);
    int m = 2;
    NestingPath Pk = P.with_swapped_values(P.at(m), al.star(P.at(m)));
    auto speck = make_reduction(ReducedFamily::ospD, 1, 1, Pk);
    CHECK(x_function(XFamily::reduced(speck), m) == x_function(XFamily::reduced(spec), m + 3));
    CHECK(x_function(XFamily::reduced(speck), m + 3) == x_function(XFamily::reduced(spec), m));
}

TEST_CASE("zero curvature for reduced families via swap chains (to X^4)") {
    Rng rng(233);
    // ZCCB2 for both parities of i_{r+s}
    GradedAlphabet b23(2, 3);
    for (auto tuple : {std::vector<int>{5, 2, 4, 1, 3}, {2, 5, 4, 3, 1}}) {
        NestingPath P(b23, tuple);
        auto spec = make_reduction(ReducedFamily::ospB, 1, 1, P);
        int m = 2, ifx = 4;
        std::vector<ValueSwap> chain{{ifx, b23.star(P.at(m))}, {P.at(m), b23.star(P.at(m))}, {P.at(m), ifx}};
        auto rep = verify_zcc_chain(spec, m, m + 2, chain, 4, rng);
        CHECK(rep.passed());
    }
    // ZCCsp2 via the solved centre relation, coefficients to X^4
    {
        GradedAlphabet al(6, 0);
        NestingPath P(al, {1, 2, 3, 4, 5, 6});
        auto spec = make_reduction(ReducedFamily::spC, 2, 0, P);
        int rr = 2;
        NestingPath Pk = P.with_swapped_values(P.at(rr), al.star(P.at(rr)));
        auto speck = make_reduction(ReducedFamily::spC, 2, 0, Pk);
        auto segment = [&](const ReductionSpec& sp) {
            XFamily fam = XFamily::reduced(sp);
            SeriesInX acc = SeriesInX::one(4);
            for (int k = rr + 3; k >= rr; --k)
                acc = acc * SeriesInX::linear_factor(4, x_function(fam, k), -1);
            return acc;
        };
        SeriesInX L = segment(spec), R = segment(speck);
        auto cat = qq_catalog(spec);
        const auto* q3 = find_rel(cat, "QQsp3");
        REQUIRE(q3);
        SolvedLabel sl;
        sl.key = SymbolKey{P.prefix(rr - 1), false};
        sl.denom = reduced_z_plus_c(spec, P.at(rr), 1) * reduced_z_plus_c(spec, P.at(rr), -1);
        sl.expr = q3->rhs;
        std::vector<QExpr> all;
        for (int k = 0; k <= 4; ++k) {
            all.push_back(L.coeff(k));
            all.push_back(R.coeff(k));
        }
        int good = 0;
        for (int trial = 0; good < 2 && trial < 12; ++trial) {
            try {
                EvalContext ctx = reduced_generic_ctx(spec, all, rng, {sl});
                bool ok = true;
                for (int k = 0; k <= 4; ++k)
                    if (eval(L.coeff(k) - R.coeff(k), ctx) != 0) ok = false;
                CHECK(ok);
                ++good;
            } catch (const EvalDomainError&) {
                continue;
            }
        }
        CHECK(good == 2);
    }
}

TEST_CASE("root-form relations reproduce the catalog relations") {
    // white dot: ospB interior node matches the bosonic node relation
    GradedAlphabet b43(4, 3);
    NestingPath P(b43, {7, 1, 2, 6, 3, 4, 5});
    auto spec = make_reduction(ReducedFamily::ospB, 2, 1, P);
    auto data = make_rootform(spec);
    auto cat = qq_catalog(spec);
    {
        // node a=2: p_{i_2} = p_{i_3} = +1 white dot
        QQRelation rf = rootform_qq(data, 2);
        const auto* q1 = find_rel(cat, "b-node@2");
        REQUIRE(q1 != nullptr);
        QExpr A = rf.diff().times_scalars(rf.diff().scalar_denominators()).expanded_scalars();
        QExpr B = apply_reduction(q1->diff(), spec);
        auto needB = B.scalar_denominators();
        B = B.times_scalars(needB).expanded_scalars();
        CHECK(A.term_ratio_to(B).has_value());
    }
    {
        // gray dot at a=1 (p_{i_1} p_{i_2} = -1): fermionic node relation
        QQRelation rf = rootform_qq(data, 1);
        const auto* q2 = find_rel(cat, "f-node@1");
        REQUIRE(q2 != nullptr);
        QExpr A = rf.diff().times_scalars(rf.diff().scalar_denominators()).expanded_scalars();
        QExpr B = apply_reduction(q2->diff(), spec);
        B = B.times_scalars(B.scalar_denominators()).expanded_scalars();
        CHECK(A.term_ratio_to(B).has_value());
    }
    {
        // black dot: p_{i_{r+s}} = -1 tuple, relation QQrbb3 = QQb3
        GradedAlphabet b23(2, 3);
        NestingPath Pm(b23, {2, 5, 4, 3, 1});
        auto specm = make_reduction(ReducedFamily::ospB, 1, 1, Pm);
        auto datam = make_rootform(specm);
        CHECK(datam.rs.dot(2) == RootSystem::Dot::Black);
        QQRelation rf = rootform_qq(datam, 2);
        auto catm = qq_catalog(specm);
        const auto* q3 = find_rel(catm, "QQb3");
        REQUIRE(q3 != nullptr);
        QExpr A = rf.diff().times_scalars(rf.diff().scalar_denominators()).expanded_scalars();
        QExpr B = apply_reduction(q3->diff(), specm);
        B = B.times_scalars(B.scalar_denominators()).expanded_scalars();
        CHECK(A.term_ratio_to(B).has_value());
    }
    {
        // white dot with half-integer d: the boundary node against QQb5
        GradedAlphabet b23(2, 3);
        NestingPath Pp(b23, {5, 2, 4, 1, 3});
        auto specp = make_reduction(ReducedFamily::ospB, 1, 1, Pp);
        auto datap = make_rootform(specp);
        CHECK(datap.rs.dot(2) == RootSystem::Dot::White);
        QQRelation rf = rootform_qq(datap, 2);
        auto catp = qq_catalog(specp);
        const auto* q5 = find_rel(catp, "QQb5");
        REQUIRE(q5 != nullptr);
        QExpr A = rf.diff().times_scalars(rf.diff().scalar_denominators()).expanded_scalars();
        QExpr B = apply_reduction(q5->diff().shifted(Shift::of_half(-1)), specp);
        B = B.times_scalars(B.scalar_denominators()).expanded_scalars();
        CHECK(A.term_ratio_to(B).has_value());
    }
}

TEST_CASE("reflect_q maps labels as stated") {
    GradedAlphabet b23(2, 3);
    NestingPath P(b23, {5, 2, 4, 1, 3});
    auto spec = make_reduction(ReducedFamily::ospB, 1, 1, P);
    auto data = make_rootform(spec);
    auto map1 = reflect_q(data, 1);
    CHECK(map1.at(SymbolKey{P.prefix(1), false}) == (SymbolKey{P.tilde(1), false}));
    // double reflection is the identity on labels
    auto back = reflect_q(data, 1);
    for (const auto& [k, v] : map1) CHECK(back.at(v) == k);
    // black dot goes to the breve label
    NestingPath Pm(b23, {2, 5, 4, 3, 1});
    auto specm = make_reduction(ReducedFamily::ospB, 1, 1, Pm);
    auto datam = make_rootform(specm);
    auto map2 = reflect_q(datam, 2);
    CHECK(map2.at(SymbolKey{Pm.prefix(2), false}) == (SymbolKey{Pm.breve(2), false}));
}

TEST_CASE("one-row T-functions are S(I_K) x S(complement) invariant under the det solution") {
    Rng rng(239);
    GradedAlphabet al(2, 2);
    NestingPath P(al, {1, 3, 2, 4});
    NestingPath Ps(al, {3, 1, 2, 4});   // swap inside I_2
    NestingPath Pc(al, {1, 3, 4, 2});   // swap inside the complement of I_2
    for (int b = 1; b <= 2; ++b) {
        for (const auto* other : {&Ps, &Pc}) {
            QExpr diff = tableau_T(XFamily::generic(P), 2, SkewDiagram(Partition{b})) -
                         tableau_T(XFamily::generic(*other), 2, SkewDiagram(Partition{b}));
            CHECK(zero_on_detsol(diff, al, rng, 2));
            QExpr diffc = tableau_T(XFamily::generic(P), 2, SkewDiagram(Partition(std::vector<int>(b, 1)))) -
                          tableau_T(XFamily::generic(*other), 2, SkewDiagram(Partition(std::vector<int>(b, 1))));
            CHECK(zero_on_detsol(diffc, al, rng, 2));
        }
    }
}
