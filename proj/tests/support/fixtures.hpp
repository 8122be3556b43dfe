#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wallcross/config.hpp"
#include "wallcross/wallcross.hpp"

namespace fixtures {

using namespace wallcross;

inline LatticeVector E(int n, int i) { return unit_vector(n, i); }

inline Fan p2() { return {2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {0, 2}, {1, 2}}, {}}; }
inline Fan p1xp1() { return {2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {}}; }
inline Fan f1() { return {2, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {}}; }

inline Fan p3() {
    return {3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, {"e1", "e2", "e3", "e4"}};
}

inline Fan p2xp1() {
    Fan f{3, {{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, {0, 0, 1}, {0, 0, -1}}, {}, {}};
    for (auto c : std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}})
        for (int v : {3, 4}) {
            auto m = c;
            m.push_back(v);
            f.maximal_cones.push_back(m);
        }
    return f;
}

inline Fan p1cubed() {
    Fan f{3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}, {}, {}};
    for (int a : {0, 1})
        for (int b : {2, 3})
            for (int c : {4, 5}) f.maximal_cones.push_back({a, b, c});
    return f;
}

inline BlowupSpec spec_with(const Fan& fan, const std::vector<std::pair<int, Int>>& rays_and_weights) {
    BlowupSpec s{fan, {}};
    for (auto [r, w] : rays_and_weights) s.components.push_back({r, constant_weight_hypersurface(fan, r, w)});
    return s;
}

inline BlowupSpec p3_two_lines() { return spec_with(p3(), {{0, 1}, {1, 1}}); }

inline Cone cone3(std::initializer_list<LatticeVector> gens) { return Cone::from_generators(3, gens); }

// Walls of the minimal diagram for P3 with two lines, listed by hand.
struct HandRow {
    std::vector<std::vector<LatticeVector>> supports;
    std::string function;
};

inline std::vector<HandRow> p3_minimal_rows() {
    LatticeVector e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1}, e4{-1, -1, -1};
    LatticeVector m1{-1, 0, 0}, m2{0, -1, 0}, m12{-1, -1, 0};
    return {
        {{{e1, e2}, {e1, e3}, {e1, e4}}, "1 + t1*x"},
        {{{e2, e1}, {e2, e3}, {e2, e4}}, "1 + t2*y"},
        {{{e3, m1}, {e4, m1}}, "1 + t1*x"},
        {{{e3, m2}, {e4, m2}}, "1 + t2*y"},
        {{{m2, m12}, {m1, m12}, {e3, m12}, {e4, m12}}, "1 + t1*t2*x*y"},
        {{{e1, m2}}, "1 + t2*y + t1*t2*x*y"},
        {{{e2, m1}}, "1 + t1*x + t1*t2*x*y"},
    };
}

inline std::vector<HandRow> p3_canonical_rows() {
    LatticeVector e1{1, 0, 0}, e2{0, 1, 0}, e3{0, 0, 1}, e4{-1, -1, -1};
    LatticeVector m1{-1, 0, 0}, m2{0, -1, 0}, m12{-1, -1, 0};
    return {
        {{{e1, e2}, {e1, e3}, {e1, e4}}, "1 + t^{E1}*x^-1"},
        {{{e2, e1}, {e2, e3}, {e2, e4}}, "1 + t^{E2}*y^-1"},
        {{{e3, m1}, {e4, m1}}, "1 + t^{L-E1}*x"},
        {{{e3, m2}, {e4, m2}}, "1 + t^{L-E2}*y"},
        {{{m1, m12}, {m2, m12}, {e3, m12}, {e4, m12}}, "1 + t^{L-E1-E2}*x*y"},
        {{{e1, m2}}, "1 + t^{L-E2}*y + t^{L-E1-E2}*x*y"},
        {{{e2, m1}}, "1 + t^{L-E1}*x + t^{L-E1-E2}*x*y"},
    };
}

// (support, function text) pairs, one per listed wall.
using WallSet = std::multiset<std::pair<Cone, std::string>>;

inline WallSet hand_walls(const std::vector<HandRow>& rows) {
    WallSet out;
    for (const auto& r : rows)
        for (const auto& s : r.supports) out.insert({Cone::from_generators(3, s), r.function});
    return out;
}

// The hand-listed walls as a diagram: one wall per listed support.
inline ScatteringDiagram p3_minimal_diagram(int order) {
    ExponentMonoid P(3, {1, 1});
    ScatteringDiagram d{P, order, {}, std::make_shared<const Fan>(p3())};
    for (const auto& r : p3_minimal_rows())
        for (const auto& s : r.supports) d.walls.push_back(make_wall(Cone::from_generators(3, s), parse_series(r.function, P, order)));
    return d;
}

inline ScatteringDiagram p3_scatter(int order, JointOrder joint_order = JointOrder::lexicographic, int workers = 1) {
    ScatterOptions o;
    o.joint_order = joint_order;
    o.workers = workers;
    return scatter(initial_diagram(p3_two_lines(), order), order, o);
}

// Minimal diagram with incoming factors on separate walls, as (support, text) pairs.
inline WallSet table_walls(const ScatteringDiagram& d) {
    WallSet out;
    for (const auto& w : d.walls)
        for (const auto& piece : split_incoming(w)) out.insert({piece.support, render(piece.function)});
    return out;
}

inline WallSet canonical_walls(const std::vector<CanonicalWall>& walls, const BlowupSpec& spec) {
    auto basis = kernel_basis(spec.fan, spec.monoid());
    auto names = VariableNames::defaults(spec.monoid());
    WallSet out;
    for (const auto& w : walls) out.insert({w.support, render(w.function, basis, names)});
    return out;
}

// Code of the wallcross::Error thrown by f, or "" if it returns normally.
template <class F>
std::string error_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

inline TruncatedSeries S(const std::string& text, const ExponentMonoid& P, int order) { return parse_series(text, P, order); }

}  // namespace fixtures
