#include <catch2/catch_amalgamated.hpp>

#include "qfold/bethe.hpp"
#include "qfold/completion.hpp"
#include "qfold/strap.hpp"

using namespace qfold;

namespace {

/// gl(M|N) system on a path, one inhomogeneity at theta = 0 (L = 1).
BAESystem make_gl_system(const NestingPath& P, const std::vector<int>& counts,
                         const std::map<int, Cx>& zsqrt, double sq = 1.17) {
    BAESystem sys;
    sys.sq = sq;
    sys.zsqrt = zsqrt;
    sys.fixed[SymbolKey{{}, false}] = {Cx(1), Cx(-1)};  // Q_empty = 1 - t
    sys.fixed[SymbolKey{P.prefix(P.size()), false}] = {Cx(1), Cx(-1)};
    int n = P.size();
    for (int a = 1; a <= n - 1; ++a) {
        sys.levels.push_back({SymbolKey{P.prefix(n - a), false}, counts[a - 1]});
        sys.F.push_back(f_function_gl(P, a));
    }
    sys.name = "gl path " + P.str();
    return sys;
}

/// Reduced system from root-form data, one inhomogeneity at theta = 0.
BAESystem make_reduced_system(const RootFormData& data, const std::vector<int>& counts,
                              double sq = 1.17) {
    BAESystem sys;
    sys.sq = sq;
    const auto& al = data.rs.alphabet();
    const auto& spec = data.spec;
    for (int a = 1; a <= al.size(); ++a) {
        if (spec.fixed_twists.count(a)) {
            Rational v = spec.fixed_twists.at(a);
            sys.zsqrt[a] = v == 1 ? Cx(1) : Cx(0, 1);
            continue;
        }
        int st = al.star(a);
        if (sys.zsqrt.count(a)) continue;
        double base = 1.1 + 0.17 * a;
        sys.zsqrt[a] = Cx(base, 0.05 * a);
        if (st != a) sys.zsqrt[st] = Cx(1) / sys.zsqrt[a];
    }
    sys.fixed[SymbolKey{{}, false}] = {Cx(1), Cx(-1)};
    for (int a = 1; a <= data.rs.rank(); ++a) {
        sys.levels.push_back({data.level(a).Qc, counts[a - 1]});
        sys.F.push_back(f_function_reduced(data, a));
    }
    sys.name = "reduced " + family_name(spec.family);
    return sys;
}

}  // namespace

TEST_CASE("empty system is trivially solved") {
    GradedAlphabet al(2, 0);
    NestingPath P(al, {2, 1});
    auto sys = make_gl_system(P, {0}, {{1, Cx(1)}, {2, Cx(1)}});
    auto sols = solve_bae(sys, 4);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].residual < 1e-12);
}

TEST_CASE("gl(2|0) single root matches the univariate oracle") {
    GradedAlphabet al(2, 0);
    NestingPath P(al, {2, 1});
    double sq = 1.17;
    auto sys = make_gl_system(P, {1}, {{1, Cx(1)}, {2, Cx(1)}}, sq);
    auto sols = solve_bae(sys, 48, 1e-11, 7);
    REQUIRE(!sols.empty());
    // oracle: -1 = Q0(u-1) Q1(u+2) QJ(u-1) / (Q0(u+1) Q1(u-2) QJ(u+1));
    // the Q1 ratio is constant, Q0 = QJ = 1 - t, so with y = 1/x:
    //   (1-k y)^2 (1-k^{-2}) + (1-y/k)^2 (1-k^2) = 0, k = sq^2.
    double k = sq * sq;
    double A = k * k * (1 - 1 / (k * k)) + (1 - k * k) / (k * k);
    double B = -2 * k * (1 - 1 / (k * k)) - 2 * (1 - k * k) / k;
    double C = (1 - 1 / (k * k)) + (1 - k * k);
    double disc = B * B - 4 * A * C;
    std::vector<Cx> ys;
    if (disc >= 0) {
        ys = {Cx((-B + std::sqrt(disc)) / (2 * A)), Cx((-B - std::sqrt(disc)) / (2 * A))};
    } else {
        Cx sd = std::sqrt(Cx(disc));
        ys = {(-B + sd) / (2 * A), (-B - sd) / (2 * A)};
    }
    for (const auto& sol : sols) {
        Cx x = sol.roots[0][0];
        bool matches = false;
        for (auto y : ys)
            if (std::abs(Cx(1) / x - y) < 1e-7) matches = true;
        CHECK(matches);
    }
}

TEST_CASE("osp(3|0) single root matches the closed-form Bethe equation") {
    GradedAlphabet al(2, 1);
    NestingPath P(al, {2, 3, 1});
    auto spec = make_reduction(ReducedFamily::ospB, 1, 0, P);
    auto data = make_rootform(spec);
    auto sys = make_reduced_system(data, {1});
    auto sols = solve_bae(sys, 48, 1e-11, 11);
    REQUIRE(!sols.empty());
    // oracle from the printed Bethe equation: with the Q1(u+-2) factor
    // cancelled, -1 = z Q0(u-1) Q1(u+1) / (Q0(u+1) Q1(u-1)), Q0 = 1 - t.
    double k = sys.sq * sys.sq;
    Cx z = sys.zsqrt.at(2) * sys.zsqrt.at(2);  // z_{i_1} = z_2
    for (const auto& sol : sols) {
        Cx x = sol.roots[0][0];
        Cx lhs = z * (Cx(1) - Cx(k) / x) * (1 - 1 / k) / ((Cx(1) - Cx(1 / k) / x) * (1 - k));
        CHECK(std::abs(lhs + Cx(1)) < 1e-8);
    }
}

TEST_CASE("solved systems satisfy F_a = -1 and make the fundamental T pole-free") {
    struct Case {
        std::string name;
        std::function<std::pair<BAESystem, QExpr>()> make;
    };
    std::vector<Case> cases;
    cases.push_back({"gl(2|0)", [] {
                         GradedAlphabet al(2, 0);
                         NestingPath P(al, {2, 1});
                         auto sys = make_gl_system(P, {1}, {{1, Cx(1.3)}, {2, Cx(0.8)}});
                         QExpr T = fundamental_T(XFamily::generic(P));
                         return std::make_pair(sys, T);
                     }});
    cases.push_back({"gl(2|1)", [] {
                         GradedAlphabet al(2, 1);
                         NestingPath P(al, {2, 3, 1});
                         auto sys = make_gl_system(P, {1, 1},
                                                   {{1, Cx(1.21)}, {2, Cx(0.77)}, {3, Cx(1.4, 0.2)}});
                         QExpr T = fundamental_T(XFamily::generic(P));
                         return std::make_pair(sys, T);
                     }});
    cases.push_back({"osp(3|0)", [] {
                         GradedAlphabet al(2, 1);
                         NestingPath P(al, {2, 3, 1});
                         auto spec = make_reduction(ReducedFamily::ospB, 1, 0, P);
                         auto data = make_rootform(spec);
                         auto sys = make_reduced_system(data, {1});
                         QExpr T = fundamental_T(XFamily::reduced(spec));
                         return std::make_pair(sys, T);
                     }});
    cases.push_back({"osp(3|2)", [] {
                         GradedAlphabet al(2, 3);
                         NestingPath P(al, {5, 2, 4, 1, 3});
                         auto spec = make_reduction(ReducedFamily::ospB, 1, 1, P);
                         auto data = make_rootform(spec);
                         auto sys = make_reduced_system(data, {1, 1});
                         QExpr T = fundamental_T(XFamily::reduced(spec));
                         return std::make_pair(sys, T);
                     }});
    cases.push_back({"osp(2|4)", [] {
                         GradedAlphabet al(2, 6);
                         NestingPath P(al, {2, 8, 7, 6, 5, 4, 3, 1});
                         auto spec = make_reduction(ReducedFamily::ospD, 1, 2, P);
                         auto data = make_rootform(spec);
                         auto sys = make_reduced_system(data, {1, 1, 1});
                         QExpr T = fundamental_T(XFamily::reduced(spec));
                         return std::make_pair(sys, T);
                     }});
    cases.push_back({"sp(4)", [] {
                         GradedAlphabet al(6, 0);
                         NestingPath P(al, {1, 2, 3, 4, 5, 6});
                         auto spec = make_reduction(ReducedFamily::spC, 2, 0, P);
                         auto data = make_rootform(spec);
                         auto sys = make_reduced_system(data, {1, 1});
                         QExpr T = fundamental_T(XFamily::reduced(spec));
                         return std::make_pair(sys, T);
                     }});
    for (auto& c : cases) {
        auto [sys, T] = c.make();
        auto sols = solve_bae(sys, 64, 1e-10, 23);
        INFO(c.name);
        REQUIRE(!sols.empty());
        const auto& sol = sols.front();
        // BAE <=> F: every root satisfies F_a = -1 (that is the residual)
        CHECK(sol.residual < 1e-10);
        double res = polefree_check(T, sys, sol);
        INFO("pole residue " << res);
        CHECK(res < 1e-8);
        // negative control: perturbed roots leave genuine poles
        BAESolution bad = sol;
        for (auto& lvl : bad.roots)
            for (auto& x : lvl) x *= 1.25;
        CHECK(polefree_check(T, sys, bad) > 1e-2);
    }
}

TEST_CASE("reflected presentations inherit solutions through the completed Q-system") {
    GradedAlphabet al(2, 3);
    NestingPath P(al, {5, 2, 4, 1, 3});
    auto spec = make_reduction(ReducedFamily::ospB, 1, 1, P);
    auto data = make_rootform(spec);
    auto sys = make_reduced_system(data, {1, 1});
    auto sols = solve_bae(sys, 64, 1e-11, 31);
    REQUIRE(!sols.empty());
    const auto& sol = sols.front();

    std::map<IndexSet, std::vector<Cx>> polys;
    polys[{}] = {Cx(1), Cx(-1)};
    polys[al.full()] = {Cx(1), Cx(-1)};
    auto poly_from_roots = [](const std::vector<Cx>& roots) {
        std::vector<Cx> c{Cx(1)};
        for (auto x : roots) {
            std::vector<Cx> n(c.size() + 1, Cx(0));
            for (std::size_t k = 0; k < c.size(); ++k) {
                n[k] += c[k];
                n[k + 1] -= c[k] * x;
            }
            c = n;
        }
        return c;
    };
    polys[P.prefix(1)] = poly_from_roots(sol.roots[0]);
    polys[P.prefix(2)] = poly_from_roots(sol.roots[1]);
    // remaining prefixes come from the sigma identification (eta = 0)
    polys[P.prefix(3)] = polys[P.prefix(2)];
    polys[P.prefix(4)] = polys[P.prefix(1)];
    std::map<int, Cx> z;
    for (const auto& [idx, w] : sys.zsqrt) z[idx] = w * w;

    QSystemNumeric qs(P, polys, z, sys.sq, 1e-7);
    // reflect at level 1: the new presentation's first prefix is tilde(1)
    auto P2 = data.rs.reflect_tuple(1);
    REQUIRE(qs.complete({P2.prefix(1), P2.prefix(2)}));

    auto spec2 = make_reduction(ReducedFamily::ospB, 1, 1, P2);
    auto data2 = make_rootform(spec2);
    auto sys2 = make_reduced_system(data2, {1, 1});
    sys2.zsqrt = sys.zsqrt;
    // roots of the reflected presentation from the completed polynomials
    auto roots_of = [&](const IndexSet& base) {
        const auto& c = qs.polys().at(base);
        REQUIRE(c.size() == 2);  // degree 1 here
        return std::vector<Cx>{-c[1] / c[0]};
    };
    BAESolution sol2;
    sol2.roots.push_back(roots_of(P2.prefix(1)));
    sol2.roots.push_back(roots_of(P2.prefix(2)));
    // residuals of the reflected system at the transported roots
    std::vector<Dual> x;
    for (const auto& lvl : sol2.roots)
        for (auto root : lvl) x.push_back(Dual(root, 0));
    double worst = 0;
    auto R = sys2.residuals(x);
    for (const auto& r : R) worst = std::max(worst, std::abs(r.v));
    CHECK(worst < 1e-6);
}
