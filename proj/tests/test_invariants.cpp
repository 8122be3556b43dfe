#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"

using namespace wallcross;
using namespace fixtures;

namespace {

const LatticeVector e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1}, e4{-1, -1, -1};
const ExponentMonoid P3M(3, {1, 1});

std::string label(const BlowupSpec& spec, const CurveClass& beta) { return kernel_basis(spec.fan, spec.monoid()).label(beta); }

ScatteringDiagram one_wall(const Cone& support, const std::string& f, int order = 4) {
    ScatteringDiagram d{P3M, order, {}, std::make_shared<const Fan>(p3())};
    d.walls.push_back(make_wall(support, S(f, P3M, order)));
    return d;
}

}  // namespace

TEST(KernelBasis, P3IsGeneratedByL) {
    auto b = kernel_basis(p3());
    ASSERT_EQ(b.toric.size(), 1u);
    auto v = b.toric[0];
    if (v[0] < 0) v = -v;
    EXPECT_EQ(v, (LatticeVector{1, 1, 1, 1}));
    EXPECT_EQ(b.label({{1, 1, 1, 1}, {}}), "L");
}

TEST(KernelBasis, P1xP1HasRankTwo) {
    auto b = kernel_basis(p1xp1());
    ASSERT_EQ(b.toric.size(), 2u);
    for (const auto& v : b.toric) EXPECT_TRUE(in_ker_s(p1xp1(), v));
    EXPECT_EQ(b.coordinates({1, 0, 1, 0}).size(), 2u);
    EXPECT_EQ(b.coordinates({0, 1, 0, 1}).size(), 2u);
}

TEST(KernelBasis, P2) {
    auto b = kernel_basis(p2());
    ASSERT_EQ(b.toric.size(), 1u);
    EXPECT_EQ(b.label({{2, 2, 2}, {}}), "2L");
}

TEST(ClassFromTuple, Examples) {
    EXPECT_EQ(class_from_balanced_tuple(p3(), {{e1, cone3({e1})}, {-e1, cone3({e2, e3, e4})}}), (LatticeVector{1, 1, 1, 1}));
    EXPECT_EQ(class_from_balanced_tuple(p3(), {}), (LatticeVector{0, 0, 0, 0}));
    EXPECT_EQ(class_from_balanced_tuple(p3(), {{e1, cone3({e1})}, {e2, cone3({e2})}, {-e1 - e2, cone3({e3, e4})}}),
              (LatticeVector{1, 1, 1, 1}));
}

TEST(ClassFromTuple, Errors) {
    EXPECT_EQ(error_code([] { class_from_balanced_tuple(p3(), {{e1, cone3({e1})}}); }), "NotBalanced");
    EXPECT_EQ(error_code([] { class_from_balanced_tuple(p3(), {{e1, cone3({e2})}, {-e1, cone3({e2, e3, e4})}}); }), "NotTangent");
}

TEST(ClassFromTuple, AlwaysInKernel) {
    std::mt19937 rng(3);
    auto fan = p1cubed();
    for (int i = 0; i < 50; ++i) {
        std::vector<std::pair<LatticeVector, Cone>> pairs;
        LatticeVector sum(3, 0);
        for (int k = 0; k < 3; ++k) {
            const auto& c = fan.maximal_cones[rng() % fan.maximal_cones.size()];
            LatticeVector m(3, 0);
            for (int r : c) m = m + static_cast<Int>(rng() % 3) * fan.rays[r];
            pairs.push_back({m, fan.cone(c)});
            sum = sum + m;
        }
        pairs.push_back({-sum, fan.cone(fan.carrier_face(-sum))});
        EXPECT_TRUE(in_ker_s(fan, class_from_balanced_tuple(fan, pairs)));
    }
}

TEST(BetaASigma, Examples) {
    auto spec = p3_two_lines();
    EXPECT_EQ(label(spec, beta_A_sigma(spec, {1, 0}, cone3({e2, e3, e4}))), "L-E1");
    EXPECT_EQ(label(spec, beta_A_sigma(spec, {1, 1}, cone3({e3, e4}))), "L-E1-E2");
    EXPECT_EQ(label(spec, beta_A_sigma(spec, {0, 0}, cone3({e1, e2, e3}))), "0");
    EXPECT_EQ(error_code([&] { beta_A_sigma(spec, {1, 0}, cone3({e2, e3})); }), "NotTangent");
}

TEST(Upsilon, IncomingWall) {
    auto spec = p3_two_lines();
    auto w = upsilon(one_wall(cone3({e1, e2}), "1 + t1*x"), spec);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_TRUE(w[0].incoming);
    EXPECT_EQ(canonical_walls(w, spec), (WallSet{{cone3({e1, e2}), "1 + t^{E1}*x^-1"}}));
}

TEST(Upsilon, MixedWall) {
    auto spec = p3_two_lines();
    auto w = upsilon(one_wall(cone3({e1, -e2}), "1 + t2*y + t1*t2*x*y"), spec);
    EXPECT_EQ(canonical_walls(w, spec), (WallSet{{cone3({e1, -e2}), "1 + t^{L-E2}*y + t^{L-E1-E2}*x*y"}}));
}

TEST(Upsilon, ScatteredPlaneWall) {
    auto spec = p3_two_lines();
    auto w = upsilon(one_wall(cone3({e3, -e1}), "1 + t1*x"), spec);
    EXPECT_EQ(canonical_walls(w, spec), (WallSet{{cone3({e3, -e1}), "1 + t^{L-E1}*x"}}));
}

TEST(Upsilon, ForgettingClassesRoundTrips) {
    auto spec = p3_two_lines();
    auto d = minimalize(p3_scatter(5));
    for (const auto& wall : d.walls) {
        auto product = TruncatedSeries::one(P3M, 5);
        ScatteringDiagram single{P3M, 5, {wall}, d.fan};
        for (const auto& c : upsilon(single, spec)) product = product * forget_classes(c, P3M);
        EXPECT_EQ(product, wall.function) << wall.support.to_string();
    }
}

TEST(Upsilon, LeadingClassHasNonnegativeDegree) {
    auto spec = p3_two_lines();
    for (const auto& w : upsilon(minimalize(p3_scatter(5)), spec)) {
        if (w.incoming) continue;
        // terms sort by order, so the first positive-order term leads
        for (const auto& [mono, c] : w.function.terms())
            if (mono.order() > 0) {
                Int degree = 0;
                for (Int a : mono.beta().toric) degree += a;
                for (Int e : mono.beta().exceptional) degree -= e;
                EXPECT_GE(degree, 0);
                break;
            }
    }
}

TEST(Divisibility, Examples) {
    EXPECT_EQ(divisibility_index({2, 0, 0}), 2);
    EXPECT_EQ(divisibility_index({1, 1, 0}), 1);
    EXPECT_EQ(divisibility_index({3, 6, 0}), 3);
    EXPECT_EQ(divisibility_index({-4, 0, 6}), 2);
    EXPECT_EQ(error_code([] { divisibility_index({0, 0, 0}); }), "ZeroVector");
}

TEST(WallIndex, SweptFacet) {
    EXPECT_EQ(wall_index(cone3({e1, e2}), {1, 0, 0}), 1);
    EXPECT_EQ(wall_index(cone3({e1, e2}), {3, 0, 0}), 3);
    EXPECT_EQ(wall_index(cone3({e3, -e1}), {-2, 0, 0}), 2);
}

TEST(ExtractInvariants, TrivialWall) {
    auto spec = p3_two_lines();
    auto w = upsilon(one_wall(cone3({e3, -e1}), "1"), spec);
    for (const auto& c : w) EXPECT_TRUE(extract_invariants(c, 4).empty());
}

TEST(ExtractInvariants, MultipleCoverFormula) {
    auto spec = p3_two_lines();
    auto w = upsilon(one_wall(cone3({e1, e3}), "1 + t1*x", 6), spec);
    ASSERT_EQ(w.size(), 1u);
    auto inv = extract_invariants(w[0], 6);
    ASSERT_EQ(inv.size(), 6u);
    for (const auto& i : inv) {
        Int k = i.u[0];
        EXPECT_EQ(i.u, (LatticeVector{k, 0, 0}));
        EXPECT_EQ(i.beta.exceptional, (LatticeVector{k, 0}));
        EXPECT_EQ(i.N, make_rational(k % 2 ? 1 : -1, k * k));
    }
}

// exp of a known log, pushed through upsilon: coefficients c_k on t1^k x^k come back as c_k / k.
TEST(ExtractInvariants, KnownLogRoundTrip) {
    auto spec = p3_two_lines();
    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        std::map<int, Rational> c;
        TruncatedSeries log(P3M, 5);
        for (int k = 1; k <= 5; ++k) {
            c[k] = make_rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 4));
            log.add_term(PMonomial({k, 0, 0}, {k, 0}), c[k]);
        }
        ScatteringDiagram d{P3M, 5, {make_wall(cone3({e3, -e1}), exp_nilpotent(log))}, std::make_shared<const Fan>(p3())};
        auto w = upsilon(d, spec);
        ASSERT_EQ(w.size(), 1u);
        std::map<int, Rational> got;
        for (const auto& i : extract_invariants(w[0], 5)) got[static_cast<int>(-i.u[0])] = i.N;
        for (int k = 1; k <= 5; ++k) {
            Rational expected = c[k] / Rational(k);
            if (sgn(expected) == 0) EXPECT_EQ(got.count(k), 0u);
            else EXPECT_EQ(got[k], expected) << k;
        }
    }
}

TEST(ExtractInvariants, SecondRowFamily) {
    auto spec = p3_two_lines();
    auto w = upsilon(one_wall(cone3({e1, -e2}), "1 + t2*y + t1*t2*x*y", 8), spec);
    ASSERT_EQ(w.size(), 1u);
    auto inv = extract_invariants(w[0], 8);
    for (const auto& i : inv) {
        Int l = -i.u[0], k = -i.u[1];
        ASSERT_LE(l, k);
        mpz_class binom;
        mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(l));
        EXPECT_EQ(i.N, make_rational(k % 2 ? 1 : -1, k * k) * Rational(binom));
        EXPECT_EQ(i.beta.exceptional, (LatticeVector{-l, -k}));
    }
}
