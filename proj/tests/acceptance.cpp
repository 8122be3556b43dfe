// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <array>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random_series.hpp"

using namespace wallcross;
using namespace fixtures;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

const ExponentMonoid P3M(3, {1, 1});

Outcome minimal_diagram_reproduction() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto raw = p3_scatter(6);
    auto minimal = minimalize(raw);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(equivalent(minimal, p3_minimal_diagram(6)), "minimal diagram is not equivalent to the hand-listed walls");
    o.require(equivalent(raw, p3_minimal_diagram(6)), "raw scatter output is not equivalent to the hand-listed walls");
    o.require(table_walls(minimal) == hand_walls(p3_minimal_rows()), "wall supports or functions differ from the hand-listed walls");
    o.require(secs < 60, "took " + std::to_string(secs) + " s");
    if (o.pass) o.detail = std::to_string(minimal.walls.size()) + " minimal walls in " + std::to_string(secs) + " s";
    return o;
}

Outcome canonical_walls_reproduction() {
    Outcome o;
    auto spec = p3_two_lines();
    auto walls = upsilon(minimalize(p3_scatter(6)), spec);
    o.require(canonical_walls(walls, spec) == hand_walls(p3_canonical_rows()), "canonical walls differ from the hand-listed canonical walls");
    return o;
}

Outcome multiple_cover_invariants() {
    Outcome o;
    auto spec = p3_two_lines();
    // t1^l t2^k has t-order k + l, so all l <= k <= 4 needs order 8
    auto walls = upsilon(minimalize(p3_scatter(6)), spec);
    auto deep = upsilon(minimalize(p3_scatter(8)), spec);
    walls.insert(walls.end(), deep.begin(), deep.end());
    const LatticeVector L{1, 1, 1, 1};
    const LatticeVector e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1}, m2{0, -1, 0};
    int checked_incoming = 0, checked_mixed = 0;
    for (const auto& w : walls) {
        int order = w.function.order_bound();
        auto inv = extract_invariants(w, order);
        auto find = [&](const CurveClass& beta, const LatticeVector& u) -> const Invariant* {
            for (const auto& i : inv)
                if (i.beta == beta && i.u == u) return &i;
            return nullptr;
        };
        if (order == 6 && w.incoming && w.support == cone3({e1, e3})) {
            for (Int k = 1; k <= 6; ++k) {
                auto* i = find({LatticeVector(4, 0), {k, 0}}, {k, 0, 0});
                Rational expected = make_rational(k % 2 ? 1 : -1, k * k);
                o.require(i && i->N == expected, "N on " + std::to_string(k) + "E1");
                ++checked_incoming;
            }
        }
        if (order == 8 && w.support == cone3({e1, m2})) {
            for (Int k = 1; k <= 4; ++k)
                for (Int l = 0; l <= k; ++l) {
                    auto* i = find({k * L, {-l, -k}}, {-l, -k, 0});
                    mpz_class binom;
                    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(l));
                    Rational expected = Rational(binom) * make_rational(k % 2 ? 1 : -1, k * k);
                    o.require(i && i->N == expected, "N on <e1,-e2> at k=" + std::to_string(k) + ", l=" + std::to_string(l));
                    ++checked_mixed;
                }
        }
    }
    o.require(checked_incoming == 6 && checked_mixed == 14, "expected walls not found");
    return o;
}

Outcome factorization_identities() {
    Outcome o;
    struct Case {
        std::string f;
        std::vector<std::pair<LatticeVector, std::string>> factors;
    };
    std::vector<Case> cases = {
        {"1 + t2*y + t1*t2*x*y",
         {{{0, 1, 0}, "1 + t2*y"}, {{1, 1, 0}, "1 + t1*t2*x*y"}, {{1, 2, 0}, "1 - t1*t2^2*x*y^2"}, {{1, 3, 0}, "1 + t1*t2^3*x*y^3"}}},
        {"1 + t1*x + t1*t2*x*y",
         {{{1, 0, 0}, "1 + t1*x"}, {{1, 1, 0}, "1 + t1*t2*x*y"}, {{2, 1, 0}, "1 - t1^2*t2*x^2*y"}, {{3, 1, 0}, "1 + t1^3*t2*x^3*y"}}},
    };
    for (const auto& c : cases) {
        auto f = S(c.f, P3M, 4);
        auto factors = factor_by_direction(f);
        o.require(factors.size() == c.factors.size(), "wrong number of factors for " + c.f);
        auto product = TruncatedSeries::one(P3M, 4);
        for (const auto& [dir, g] : factors) product = product * g;
        o.require(product == f, "factor product does not reproduce " + c.f);
        for (const auto& [dir, text] : c.factors) {
            auto it = factors.find(dir);
            o.require(it != factors.end() && it->second == S(text, P3M, 4), "factor " + text + " of " + c.f);
        }
    }
    return o;
}

// The loop around e1 in the minimal P3 diagram, started at <e1,e3>.
Outcome consistency_oracle() {
    Outcome o;
    auto d = p3_minimal_diagram(6);
    Joint j{cone3({{1, 0, 0}}), {}};
    for (std::size_t i = 0; i < d.walls.size(); ++i)
        if (d.walls[i].support.contains(LatticeVector{1, 0, 0})) j.walls.push_back(i);
    auto steps = loop_steps(d, j, 6);
    o.require(steps.size() == 4, "expected four crossings around e1");
    if (!o.pass) return o;

    const std::vector<LatticeVector> order = {{0, 0, 1}, {0, -1, 0}, {-1, -1, -1}, {0, 1, 0}};
    auto at = [&](const LatticeVector& v) {
        for (std::size_t s = 0; s < steps.size(); ++s)
            if (d.walls[steps[s].walls.front()].support == cone3({{1, 0, 0}, v})) return s;
        return steps.size();
    };
    std::size_t start = at(order[0]);
    o.require(start < steps.size(), "no crossing of <e1,e3>");
    if (!o.pass) return o;
    for (std::size_t s = 0; s < 4; ++s) o.require(at(order[s]) == (start + s) % 4, "crossing order differs from e3, -e2, e4, e2");

    auto T = [&](const std::string& t) { return S(t, P3M, 6); };
    auto X = T("x"), Y = T("y"), Z = T("z");
    auto a = T("1 + t1*x"), b = T("1 + t2*y"), c = T("1 + t2*y + t1*t2*x*y");
    std::vector<std::array<TruncatedSeries, 3>> expected = {
        {X, Y * a, Z},
        {X, Y * a, Z * c},
        {X, Y, Z * a * b},
        {X, Y, Z},
    };
    auto theta = RingAutomorphism::identity(P3M, 6);
    for (std::size_t s = 0; s < 4; ++s) {
        const auto& step = steps[(start + s) % 4];
        auto f = TruncatedSeries::one(P3M, 6);
        for (auto w : step.walls) f = f * d.walls[w].function;
        theta = cross_after(theta, f, step.normal);
        for (int v = 0; v < 3; ++v)
            o.require(theta.image(v) == expected[s][v], "image of " + std::string(1, "xyz"[v]) + " after crossing " + std::to_string(s + 1));
    }
    o.require(is_consistent(d).consistent(), "hand-listed diagram is not consistent at order 6");
    return o;
}

Outcome widget_triviality() {
    Outcome o;
    auto full = p3_two_lines();
    int loops = 0;
    for (const auto& component : full.components) {
        BlowupSpec spec{full.fan, {component}};
        auto d = initial_diagram(spec, 4);
        for (const auto& j : enumerate_joints(supports_of(d), 3)) {
            auto face = full.fan.carrier_face(j.cone.relint_point());
            if (std::find(face.begin(), face.end(), component.ray) == face.end()) continue;
            o.require(loop_automorphism(d, j, 4).is_identity(), "loop around " + j.cone.to_string() + " is not the identity");
            ++loops;
        }
    }
    o.require(loops >= 2, "no joint inside a star was checked");
    if (o.pass) o.detail = std::to_string(loops) + " loops";
    return o;
}

Outcome uniqueness_up_to_equivalence() {
    Outcome o;
    auto a = p3_scatter(5, JointOrder::lexicographic);
    auto b = p3_scatter(5, JointOrder::reversed);
    o.require(equivalent(a, b), "scatter outputs differ under reversed joint order");
    o.require(equivalent(minimalize(a), minimalize(b)), "minimal outputs differ under reversed joint order");
    return o;
}

std::vector<BlowupSpec> random_specs(std::size_t count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<Fan> fans2 = {p2(), p1xp1(), f1()};
    std::vector<Fan> fans3 = {p3(), p2xp1(), p1cubed()};
    std::vector<BlowupSpec> out;
    while (out.size() < count) {
        bool three = rng() % 2;
        const Fan& fan = three ? fans3[rng() % 3] : fans2[rng() % 3];
        std::vector<int> rays(fan.rays.size());
        std::iota(rays.begin(), rays.end(), 0);
        std::shuffle(rays.begin(), rays.end(), rng);
        std::size_t k = 1 + rng() % (three ? 2 : 3);
        BlowupSpec spec{fan, {}};
        for (std::size_t i = 0; i < k; ++i) {
            Int w = 1 + static_cast<Int>(rng() % 2);
            spec.components.push_back({rays[i], constant_weight_hypersurface(fan, rays[i], w)});
            if (!three && rng() % 3 == 0) spec.components.push_back({rays[i], constant_weight_hypersurface(fan, rays[i], 1)});
        }
        out.push_back(spec);
    }
    return out;
}

Outcome non_incoming_guarantee() {
    Outcome o;
    std::size_t cases = 0, added = 0;
    std::vector<BlowupSpec> specs = random_specs(60, 20240611u);
    specs.push_back(p3_two_lines());
    for (const auto& spec : specs) {
        auto init = initial_diagram(spec, 3);
        auto out = scatter(init, 3);
        for (const auto& w : added_walls(init, out)) {
            o.require(!is_incoming(w), "added incoming wall " + w.support.to_string() + " | " + render(w.function));
            ++added;
        }
        ++cases;
    }
    o.require(added > 0, "no walls were added in any case");
    if (o.pass) o.detail = std::to_string(cases) + " specs, " + std::to_string(added) + " added walls";
    return o;
}

oracle::Poly poly(std::initializer_list<std::pair<oracle::Key, int>> terms) {
    oracle::Poly p;
    for (const auto& [k, c] : terms) p[k] = c;
    return p;
}

Outcome two_dimensional_oracle() {
    Outcome o;
    auto cfg = preset("2d-basic");
    auto init = cfg.initial_diagram();
    auto out = scatter(init, 3);
    auto added = added_walls(init, out);
    o.require(added.size() == 1, "expected exactly one new wall, got " + std::to_string(added.size()));
    if (!o.pass) return o;
    ExponentMonoid P(2, {1, 1});
    o.require(added[0].support == Cone::from_generators(2, {{-1, -1}}), "new wall support is " + added[0].support.to_string());
    o.require(added[0].function == S("1 + t1*t2*x*y", P, 3), "new wall function is " + render(added[0].function));

    using oracle::Key;
    auto fx = poly({{Key{0, 0, 0, 0}, 1}, {Key{1, 0, 1, 0}, 1}});
    auto fy = poly({{Key{0, 0, 0, 0}, 1}, {Key{0, 1, 0, 1}, 1}});
    auto identity = oracle::identity2();
    auto loop = [&](int sign, int order) {
        std::vector<oracle::Ray2> rays = {{{1, 0}, fx}, {{0, 1}, fy}, {{-1, 0}, fx}};
        if (sign != 0) rays.push_back({{-1, -1}, poly({{Key{0, 0, 0, 0}, 1}, {Key{1, 1, 1, 1}, sign}})});
        rays.push_back({{0, -1}, fy});
        return oracle::loop2(rays, order);
    };
    auto bare = loop(0, 2);
    o.require(bare.x.size() == 2 && bare.y.size() == 2 && bare.x.count(Key{2, 1, 1, 1}) && bare.y.count(Key{1, 2, 1, 1}),
              "oracle: bare discrepancy is not the single term t1*t2*x*y");
    auto plus = loop(1, 3), minus = loop(-1, 3);
    o.require(plus.x == identity.x && plus.y == identity.y, "oracle: 1 + t1*t2*x*y does not close the loop");
    o.require(!(minus.x == identity.x && minus.y == identity.y), "oracle: 1 - t1*t2*x*y also closes the loop");
    o.require(is_consistent(out).consistent(), "scatter output is not consistent");
    return o;
}

Outcome ring_properties() {
    Outcome o;
    std::mt19937 rng(7);
    int n = 0;
    for (; n < 200 && o.pass; ++n) {
        auto f = random_unit(rng);
        const auto& P = f.shape();
        int k = f.order_bound();
        auto one = TruncatedSeries::one(P, k);
        o.require(exp_nilpotent(log_unit(f)) == f, "exp(log f) != f for " + render(f));
        auto g = f - one;
        o.require(log_unit(exp_nilpotent(g)) == g, "log(exp g) != g for " + render(g));
        o.require(f * inverse(f) == one && inverse(f) * f == one, "inverse fails for " + render(f));
        auto factors = factor_by_direction(f);
        std::vector<TruncatedSeries> parts;
        for (const auto& [dir, h] : factors) {
            for (const auto& [mono, c] : h.terms()) {
                if (mono.order() == 0) continue;
                auto r = r_image(mono);
                bool along = is_zero(dir) ? is_zero(r) : !is_zero(r) && primitive(r) == dir;
                o.require(along, "factor monomial off its direction in " + render(f));
            }
            parts.push_back(h);
        }
        std::shuffle(parts.begin(), parts.end(), rng);
        auto product = one;
        for (const auto& h : parts) product = product * h;
        o.require(product == f, "factor product differs from " + render(f));
        o.require(factor_by_direction(product) == factors, "refactoring changed the factors of " + render(f));
    }
    if (o.pass) o.detail = std::to_string(n) + " series";
    return o;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"P3 minimal diagram", minimal_diagram_reproduction},
        {"P3 canonical walls", canonical_walls_reproduction},
        {"multiple-cover invariants", multiple_cover_invariants},
        {"factorization identities", factorization_identities},
        {"consistency around e1", consistency_oracle},
        {"widget triviality", widget_triviality},
        {"uniqueness up to equivalence", uniqueness_up_to_equivalence},
        {"non-incoming guarantee", non_incoming_guarantee},
        {"2D oracle", two_dimensional_oracle},
        {"ring properties", ring_properties},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first;
        if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
        std::cout << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
