#pragma once

#include <map>
#include <memory>
#include <vector>

#include "diagram.hpp"
#include "joints.hpp"

namespace wallcross {

// Weighted codimension-one cones of the quotient fan Sigma(rho), keyed by the cone of Sigma
// (ray index set, containing rho) they are the image of.
struct TropicalHypersurface {
    QuotientFan quotient;
    std::map<std::vector<int>, Int> weights;
};

namespace detail {

inline Cone quotient_cone(const QuotientFan& q, const std::vector<int>& idx) {
    std::vector<LatticeVector> gens;
    for (int i : idx)
        if (i != q.ray) gens.push_back(q.image(q.base.rays.at(i)));
    return Cone::from_generators(q.base.rank - 1, gens);
}

inline bool contains_index(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

// All codimension-one cones of Sigma(rho) with the same weight.
inline TropicalHypersurface constant_weight_hypersurface(const Fan& fan, int ray, Int weight) {
    if (weight <= 0) fail("ConfigError", "weights must be positive");
    TropicalHypersurface t{quotient_fan(fan, ray), {}};
    for (const auto& c : t.quotient.cones)
        if (static_cast<int>(c.size()) == fan.rank - 1) t.weights[c] = weight;
    return t;
}

struct BalancingDefect {
    std::vector<int> cone;  // codim-2 cone of the quotient, as a cone of Sigma
    LatticeVector defect;   // weighted sum of crossing normals, a covector on the quotient
};

// Weighted sums of crossing normals around every codimension-two cone of the quotient fan.
inline std::vector<BalancingDefect> balancing_defects(const TropicalHypersurface& t) {
    const auto& q = t.quotient;
    const int n = q.base.rank;
    std::vector<BalancingDefect> out;
    for (const auto& [c, w] : t.weights)
        if (w <= 0) fail("ConfigError", "weights must be positive");
    for (const auto& omega : q.cones) {
        if (static_cast<int>(omega.size()) != n - 2) continue;
        std::vector<Cone> cones;
        std::vector<Int> ws;
        for (const auto& [c, w] : t.weights)
            if (detail::contains_index(c, omega)) {
                cones.push_back(detail::quotient_cone(q, c));
                ws.push_back(w);
            }
        LatticeVector sum(n - 1, 0);
        if (!cones.empty()) {
            auto seq = transverse_crossing_sequence(detail::quotient_cone(q, omega), cones, n - 1);
            for (const auto& x : seq) sum = sum + ws[x.wall] * x.normal;
        }
        out.push_back({omega, sum});
    }
    return out;
}

inline void check_balancing(const TropicalHypersurface& t) {
    for (const auto& d : balancing_defects(t))
        if (!is_zero(d.defect)) {
            std::vector<LatticeVector> rays;
            for (int i : d.cone) rays.push_back(t.quotient.base.rays[i]);
            fail("Unbalanced", "defect " + to_string(d.defect) + " at the image of " +
                                   Cone::from_generators(t.quotient.base.rank, rays).to_string());
        }
}

// One incoming wall per weighted cone: the cone of Sigma over it, with function f0^weight.
inline std::vector<Wall> build_widget(const Fan& fan, int ray, const TropicalHypersurface& t, const TruncatedSeries& f0) {
    const LatticeVector& m0 = fan.rays.at(ray);
    for (const auto& [mono, c] : f0.terms()) {
        if (mono.order() == 0) continue;
        auto r = r_image(mono);
        if (is_zero(r) || primitive(r) != m0) fail("ConfigError", "widget function must have r-images along the ray");
    }
    if (t.quotient.ray != ray) fail("ConfigError", "hypersurface lives in the quotient of another ray");
    check_balancing(t);
    auto codim1 = fan.faces(static_cast<std::size_t>(fan.rank - 1));
    std::vector<Wall> walls;
    for (const auto& [c, w] : t.weights) {
        bool in_skeleton = std::find(codim1.begin(), codim1.end(), c) != codim1.end();
        if (!in_skeleton || std::find(c.begin(), c.end(), ray) == c.end())
            fail("NoMatchingCone", "weighted cone is not a codimension-one cone of the quotient fan");
        walls.push_back(make_wall(fan.cone(c), pow(f0, w)));
    }
    return walls;
}

struct BlowupComponent {
    int ray = -1;
    TropicalHypersurface hypersurface;
};

struct BlowupSpec {
    Fan fan;
    std::vector<BlowupComponent> components;

    // Blown-up rays in order of first appearance, one t-block each.
    std::vector<int> blowup_rays() const {
        std::vector<int> rays;
        for (const auto& c : components)
            if (std::find(rays.begin(), rays.end(), c.ray) == rays.end()) rays.push_back(c.ray);
        return rays;
    }

    ExponentMonoid monoid() const {
        std::vector<int> blocks;
        for (int r : blowup_rays()) {
            int s = 0;
            for (const auto& c : components) s += c.ray == r;
            blocks.push_back(s);
        }
        return ExponentMonoid(fan.rank, blocks);
    }

    // (block, component-within-block) of each component.
    std::vector<std::pair<int, int>> component_slots() const {
        auto rays = blowup_rays();
        std::vector<std::pair<int, int>> slots;
        std::map<int, int> seen;
        for (const auto& c : components) {
            int block = static_cast<int>(std::find(rays.begin(), rays.end(), c.ray) - rays.begin());
            slots.push_back({block, seen[c.ray]++});
        }
        return slots;
    }
};

// Union of the widgets with functions 1 + t_ij z^{m_i}.
inline ScatteringDiagram initial_diagram(const BlowupSpec& spec, int order) {
    if (order < 1) fail("ConfigError", "order must be at least 1");
    validate_fan(spec.fan, spec.blowup_rays());
    auto P = spec.monoid();
    ScatteringDiagram d{P, order, {}, std::make_shared<const Fan>(spec.fan)};
    auto slots = spec.component_slots();
    for (std::size_t k = 0; k < spec.components.size(); ++k) {
        const auto& c = spec.components[k];
        std::vector<int> t(P.t_rank(), 0);
        t[P.t_index(slots[k].first, slots[k].second)] = 1;
        PMonomial m(spec.fan.rays.at(c.ray), t);
        auto f0 = TruncatedSeries::one(P, order) + TruncatedSeries::monomial(P, order, m);
        auto walls = build_widget(spec.fan, c.ray, c.hypersurface, f0);
        d.walls.insert(d.walls.end(), walls.begin(), walls.end());
    }
    return d;
}

}  // namespace wallcross
