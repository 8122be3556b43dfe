#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "arrangement.hpp"
#include "diagram.hpp"

namespace wallcross {

namespace detail {

struct PlaneCell {
    Cone cone;
    LatticeVector interior;
    TruncatedSeries function;
    std::vector<std::size_t> raw;  // walls of the plane containing the cell
};

inline std::map<LatticeVector, std::vector<std::size_t>> walls_by_plane(const std::vector<const Wall*>& walls) {
    std::map<LatticeVector, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < walls.size(); ++i) groups[hyperplane_normal(walls[i]->support)].push_back(i);
    return groups;
}

// Chambers of one wall plane cut by the facets of the given walls, each with the product of the
// functions of the walls containing it.
inline std::vector<PlaneCell> plane_cells(const LatticeVector& normal, const std::vector<const Wall*>& walls,
                                          const std::vector<std::size_t>& members, const ExponentMonoid& P, int order) {
    const int n = P.m_rank;
    SpanChart chart(integer_kernel({normal}, static_cast<std::size_t>(n)), n);
    std::vector<LatticeVector> cuts;
    for (auto i : members)
        for (const auto& f : walls[i]->support.facets()) cuts.push_back(f);
    std::vector<PlaneCell> cells;
    for (const auto& ch : arrangement_chambers(chart, cuts, n)) {
        PlaneCell c{ch.cone, ch.interior, TruncatedSeries::one(P, order), {}};
        for (auto i : members)
            if (walls[i]->support.contains(ch.interior)) {
                c.function = c.function * walls[i]->function.truncated(order);
                c.raw.push_back(i);
            }
        cells.push_back(std::move(c));
    }
    return cells;
}

inline std::vector<std::size_t> common(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace detail

// Minimal representative: per wall plane, the chambers of the plane's own arrangement carry the
// product of the walls through them; trivial chambers are dropped, and chambers with equal functions
// are merged when one input wall covers both and their union is convex.
inline ScatteringDiagram minimalize(const ScatteringDiagram& d) {
    const int n = d.monoid.m_rank;
    ScatteringDiagram out{d.monoid, d.order, {}, d.fan};
    std::vector<const Wall*> walls;
    for (const auto& w : d.walls) walls.push_back(&w);

    for (const auto& [normal, members] : detail::walls_by_plane(walls)) {
        auto chambers = detail::plane_cells(normal, walls, members, d.monoid, d.order);
        std::vector<detail::PlaneCell> pieces;
        for (const auto& c : chambers)
            if (!c.function.is_one()) pieces.push_back(c);

        bool merged = true;
        while (merged) {
            merged = false;
            for (std::size_t i = 0; i < pieces.size() && !merged; ++i)
                for (std::size_t j = i + 1; j < pieces.size() && !merged; ++j) {
                    if (!(pieces[i].function == pieces[j].function)) continue;
                    auto shared = detail::common(pieces[i].raw, pieces[j].raw);
                    if (shared.empty()) continue;
                    auto gens = pieces[i].cone.generators();
                    auto gj = pieces[j].cone.generators();
                    gens.insert(gens.end(), gj.begin(), gj.end());
                    auto hull = Cone::from_generators(n, gens);
                    bool convex = hull.dim() == n - 1;
                    for (const auto& ch : chambers) {
                        if (!convex) break;
                        if (pieces[i].cone.contains(ch.interior) || pieces[j].cone.contains(ch.interior)) continue;
                        if (hull.contains(ch.interior)) convex = false;
                    }
                    if (!convex) continue;
                    pieces[i].cone = hull;
                    pieces[i].interior = hull.relint_point();
                    pieces[i].raw = shared;
                    pieces.erase(pieces.begin() + static_cast<long>(j));
                    merged = true;
                }
        }
        for (auto& p : pieces) out.walls.push_back(make_wall(p.cone, p.function));
    }
    std::sort(out.walls.begin(), out.walls.end(), [](const Wall& a, const Wall& b) { return a.support < b.support; });
    return out;
}

// f_x agrees at a generic point of every chamber of the common arrangement, modulo the smaller order.
inline bool equivalent(const ScatteringDiagram& a, const ScatteringDiagram& b) {
    if (!(a.monoid == b.monoid)) return false;
    int order = std::min(a.order, b.order);
    std::vector<const Wall*> walls;
    for (const auto& w : a.walls) walls.push_back(&w);
    std::size_t split = walls.size();
    for (const auto& w : b.walls) walls.push_back(&w);

    for (const auto& [normal, members] : detail::walls_by_plane(walls)) {
        auto cells = detail::plane_cells(normal, walls, members, a.monoid, order);
        for (const auto& c : cells) {
            auto fa = TruncatedSeries::one(a.monoid, order), fb = fa;
            for (auto i : c.raw) {
                auto& f = i < split ? fa : fb;
                f = f * walls[i]->function.truncated(order);
            }
            if (!(fa == fb)) return false;
        }
    }
    return true;
}

// The wall split into one wall per incoming direction factor plus the remaining product.
inline std::vector<Wall> split_incoming(const Wall& wall) {
    auto factors = factor_by_direction(wall.function);
    std::vector<Wall> out;
    TruncatedSeries rest = TruncatedSeries::one(wall.function.shape(), wall.function.order_bound());
    for (const auto& [r, g] : factors) {
        if (!is_zero(r) && wall.support.contains(r))
            out.push_back(make_wall(wall.support, g));
        else
            rest = rest * g;
    }
    if (out.empty()) return {wall};
    if (!rest.is_one()) out.push_back(make_wall(wall.support, rest));
    return out;
}

// Each wall replaced by its codimension-one intersections with the maximal cones of the fan.
inline ScatteringDiagram refine_by_fan(const ScatteringDiagram& d, const Fan& fan) {
    ScatteringDiagram out{d.monoid, d.order, {}, d.fan};
    const int n = d.monoid.m_rank;
    for (const auto& w : d.walls) {
        if (fan.smallest_cone_containing(w.support)) {
            out.walls.push_back(w);
            continue;
        }
        std::vector<Cone> pieces;
        for (const auto& mc : fan.maximal_cones) {
            auto c = cone_intersection(w.support, fan.cone(mc));
            if (c.dim() == n - 1 && std::find(pieces.begin(), pieces.end(), c) == pieces.end()) pieces.push_back(c);
        }
        for (auto& c : pieces) out.walls.push_back(Wall{c, w.direction, w.function});
    }
    return out;
}

}  // namespace wallcross
