#pragma once

#include <algorithm>
#include <vector>

#include "cone.hpp"

namespace wallcross {

inline Int cross2(const LatticeVector& a, const LatticeVector& b) {
    return add_checked(mul_checked(a[0], b[1]), -mul_checked(a[1], b[0]));
}

// Exact counterclockwise order of nonzero plane vectors starting at the positive first axis.
inline bool angle_less(const LatticeVector& a, const LatticeVector& b) {
    auto half = [](const LatticeVector& h) { return (h[1] > 0 || (h[1] == 0 && h[0] > 0)) ? 0 : 1; };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return cross2(a, b) > 0;
}

struct ArrangementCell {
    Cone cone;
    LatticeVector interior;  // a point of the relative interior
};

// Linear span with a chosen lattice basis, for moving between ambient and local coordinates.
class SpanChart {
public:
    SpanChart(IntMatrix basis, int n) : basis_(std::move(basis)), n_(n) {}

    std::size_t dim() const { return basis_.size(); }
    const IntMatrix& basis() const { return basis_; }

    LatticeVector lift(const LatticeVector& c) const {
        LatticeVector v(n_, 0);
        for (std::size_t k = 0; k < c.size(); ++k) v = v + c[k] * basis_[k];
        return v;
    }

    LatticeVector local(const LatticeVector& v) const {
        RatVector x;
        if (!solve_in_span(basis_, v, x)) fail("Internal", "vector outside the span");
        LatticeVector c;
        for (const auto& q : x) {
            if (q.get_den() != 1) fail("Internal", "basis is not saturated");
            c.push_back(q.get_num().get_si());
        }
        return c;
    }

    LatticeVector restrict_covector(const LatticeVector& a) const {
        LatticeVector r;
        for (const auto& b : basis_) r.push_back(dot(a, b));
        return r;
    }

private:
    IntMatrix basis_;
    int n_;
};

// Rays (in local coordinates of a plane) cut out by the given local covectors, in ccw order.
inline std::vector<LatticeVector> plane_cut_rays(const std::vector<LatticeVector>& local_covectors) {
    std::vector<LatticeVector> rays;
    for (const auto& a : local_covectors) {
        if (is_zero(a)) continue;
        LatticeVector d = primitive(LatticeVector{-a[1], a[0]});
        rays.push_back(d);
        rays.push_back(-d);
    }
    std::sort(rays.begin(), rays.end(), angle_less);
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
    return rays;
}

// Sector from ray a counterclockwise to ray b (local plane coordinates).
inline std::vector<LatticeVector> sector_generators(const LatticeVector& a, const LatticeVector& b) {
    if (cross2(a, b) > 0) return {a, b};
    if (cross2(a, b) == 0 && dot(a, b) < 0) return {a, b, LatticeVector{-a[1], a[0]}};
    fail("Internal", "sector wider than a half-plane");
}

inline LatticeVector sector_interior(const LatticeVector& a, const LatticeVector& b) {
    if (cross2(a, b) > 0) return a + b;
    return LatticeVector{-a[1], a[0]};
}

// Chambers of the central arrangement of the given covectors inside the span of the chart.
inline std::vector<ArrangementCell> arrangement_chambers(const SpanChart& chart, const std::vector<LatticeVector>& covectors,
                                                         int n) {
    std::size_t d = chart.dim();
    std::vector<LatticeVector> local;
    for (const auto& a : covectors) {
        auto r = chart.restrict_covector(a);
        if (is_zero(r)) continue;
        r = primitive(r);
        for (Int x : r)
            if (x != 0) {
                if (x < 0) r = -r;
                break;
            }
        local.push_back(r);
    }
    detail::sort_unique(local);

    std::vector<ArrangementCell> cells;
    auto lift_all = [&](const std::vector<LatticeVector>& gens) {
        std::vector<LatticeVector> g;
        for (const auto& c : gens) g.push_back(chart.lift(c));
        return Cone::from_generators(n, g);
    };
    if (d == 0) {
        cells.push_back({Cone::origin(n), LatticeVector(n, 0)});
    } else if (d == 1) {
        LatticeVector e{1};
        if (local.empty()) {
            cells.push_back({lift_all({e, -e}), chart.lift(e)});
        } else {
            cells.push_back({lift_all({e}), chart.lift(e)});
            cells.push_back({lift_all({-e}), chart.lift(-e)});
        }
    } else if (d == 2) {
        auto rays = plane_cut_rays(local);
        if (rays.empty()) {
            LatticeVector e0{1, 0}, e1{0, 1};
            cells.push_back({lift_all({e0, -e0, e1, -e1}), chart.lift(e0)});
        } else {
            for (std::size_t i = 0; i < rays.size(); ++i) {
                const auto& a = rays[i];
                const auto& b = rays[(i + 1) % rays.size()];
                cells.push_back({lift_all(sector_generators(a, b)), chart.lift(sector_interior(a, b))});
            }
        }
    } else {
        std::vector<IntMatrix> hreps{IntMatrix{}};
        auto full = [&](const IntMatrix& ineq) { return Cone::from_inequalities(static_cast<int>(d), {}, ineq).dim() == static_cast<int>(d); };
        for (const auto& a : local) {
            std::vector<IntMatrix> next;
            for (const auto& h : hreps) {
                IntMatrix plus = h, minus = h;
                plus.push_back(a);
                minus.push_back(-a);
                bool p = full(plus), m = full(minus);
                if (p && m) {
                    next.push_back(plus);
                    next.push_back(minus);
                } else {
                    next.push_back(h);
                }
            }
            hreps = std::move(next);
        }
        for (const auto& h : hreps) {
            auto c = Cone::from_inequalities(static_cast<int>(d), {}, h);
            auto cone = lift_all(c.generators());
            cells.push_back({cone, cone.relint_point()});
        }
    }
    return cells;
}

}  // namespace wallcross
