#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "automorphism.hpp"
#include "fan.hpp"

namespace wallcross {

struct Wall {
    Cone support;
    std::optional<LatticeVector> direction;  // empty when the function mixes several directions
    TruncatedSeries function;
};

struct ScatteringDiagram {
    ExponentMonoid monoid;
    int order = 0;
    std::vector<Wall> walls;
    std::shared_ptr<const Fan> fan;  // optional
};

// Primitive m0 with every monomial's r-image in -R>0 m0; nullopt if the function has no
// non-constant terms or mixes directions.
inline std::optional<LatticeVector> direction_of(const TruncatedSeries& f) {
    std::optional<LatticeVector> d;
    for (const auto& [mono, c] : f.terms()) {
        if (mono.order() == 0) continue;
        auto r = r_image(mono);
        if (is_zero(r)) return std::nullopt;
        auto m = primitive(-r);
        if (d && *d != m) return std::nullopt;
        d = m;
    }
    return d;
}

inline Wall make_wall(Cone support, TruncatedSeries f) {
    if (support.dim() != support.ambient_rank() - 1) fail("Internal", "wall support is not of codimension one");
    if (f.constant_term() != 1 || !f.order_zero_is_constant()) fail("BadConstantTerm", "wall function must be 1 mod m");
    auto d = direction_of(f);
    for (const auto& [mono, c] : f.terms()) {
        if (mono.order() == 0) continue;
        for (const auto& e : support.equations())
            if (dot(e, r_image(mono)) != 0) fail("Internal", "wall monomial not tangent to the support");
    }
    return Wall{std::move(support), d, std::move(f)};
}

inline ScatteringDiagram truncated(const ScatteringDiagram& d, int k) {
    ScatteringDiagram out{d.monoid, std::min(k, d.order), {}, d.fan};
    for (const auto& w : d.walls) {
        auto f = w.function.truncated(out.order);
        if (!f.is_one()) out.walls.push_back({w.support, direction_of(f), f});
    }
    return out;
}

// Crossing automorphism of a wall; the normal must annihilate the support's span.
inline RingAutomorphism cross_wall(const Wall& wall, const LatticeVector& oriented_normal) {
    for (const auto& g : wall.support.generators())
        if (dot(oriented_normal, g) != 0) fail("NormalNotPerpendicular", "normal does not annihilate the wall");
    return cross_wall(wall.function, oriented_normal);
}

// Incoming: support = support - R>=0 m0 for every direction present, i.e. -m0 lies in the support.
inline bool is_incoming(const Wall& wall) {
    if (wall.direction) return wall.support.contains(-*wall.direction);
    auto factors = factor_by_direction(wall.function);
    if (factors.empty()) return false;
    for (const auto& [r, g] : factors) {
        if (is_zero(r)) return false;
        if (!wall.support.contains(r)) return false;  // direction is -r
    }
    return true;
}

inline std::vector<Cone> supports_of(const ScatteringDiagram& d) {
    std::vector<Cone> s;
    for (const auto& w : d.walls) s.push_back(w.support);
    return s;
}

}  // namespace wallcross
