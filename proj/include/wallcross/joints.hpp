#pragma once

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "arrangement.hpp"

namespace wallcross {

struct Joint {
    Cone cone;
    std::vector<std::size_t> walls;  // indices of walls containing the joint
};

namespace detail {

inline std::vector<std::size_t> walls_containing(const std::vector<Cone>& walls, const LatticeVector& p) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < walls.size(); ++i)
        if (walls[i].contains(p)) out.push_back(i);
    return out;
}

// Relative interior point of a codim-2 cell, perturbed inside its span until the wall set is stable.
inline std::vector<std::size_t> generic_wall_set(const std::vector<Cone>& walls, const Cone& cell) {
    auto base = cell.relint_point();
    auto gens = cell.generators();
    std::mt19937_64 rng(0x5eed);
    const Int scale = 1 << 16;
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<std::vector<std::size_t>> sets;
        for (int k = 0; k < 2; ++k) {
            LatticeVector p = scale * base;
            for (const auto& g : gens) p = p + static_cast<Int>(rng() % 7) * g;
            if (!cell.contains_in_relint(p)) p = scale * base;
            sets.push_back(walls_containing(walls, p));
        }
        if (sets[0] == sets[1]) return sets[0];
    }
    return walls_containing(walls, base);
}

}  // namespace detail

// Codim-2 cells of the singular locus of a collection of codim-1 cones. Exact for rank <= 3;
// rank 4 uses arrangement refinement of each candidate plane with greedy merging.
inline std::vector<Joint> enumerate_joints(const std::vector<Cone>& walls, int n) {
    if (n > 4) fail("AmbientTooLarge", "joint enumeration supports ambient rank at most 4");
    std::vector<Joint> joints;
    if (walls.empty() || n < 2) return joints;

    // identical supports share all geometry
    std::map<Cone, std::vector<std::size_t>> by_support;
    for (std::size_t i = 0; i < walls.size(); ++i) by_support[walls[i]].push_back(i);
    std::vector<Cone> supports;
    for (const auto& [c, _] : by_support) supports.push_back(c);

    if (n == 2) {
        std::vector<std::size_t> all(walls.size());
        std::iota(all.begin(), all.end(), 0);
        joints.push_back({Cone::origin(2), all});
        return joints;
    }

    if (n == 3) {
        std::set<LatticeVector> candidates;
        std::vector<LatticeVector> normals;
        for (const auto& s : supports) {
            normals.push_back(hyperplane_normal(s));
            if (s.is_linear_subspace()) continue;
            if (s.lineality().empty()) {
                for (const auto& r : s.rays()) candidates.insert(r);
            } else {
                for (const auto& l : s.lineality()) {
                    candidates.insert(l);
                    candidates.insert(-l);
                }
            }
        }
        for (std::size_t a = 0; a < supports.size(); ++a)
            for (std::size_t b = a + 1; b < supports.size(); ++b) {
                if (normals[a] == normals[b]) continue;
                const auto& na = normals[a];
                const auto& nb = normals[b];
                LatticeVector d = primitive(LatticeVector{na[1] * nb[2] - na[2] * nb[1], na[2] * nb[0] - na[0] * nb[2],
                                                          na[0] * nb[1] - na[1] * nb[0]});
                for (const auto& s : {d, LatticeVector(-d)})
                    if (supports[a].contains(s) && supports[b].contains(s)) candidates.insert(s);
            }
        for (const auto& g : candidates) {
            auto ws = detail::walls_containing(walls, g);
            if (!ws.empty()) joints.push_back({Cone::from_generators(3, {g}), ws});
        }
        return joints;
    }

    // rank 4: candidate codim-2 cells grouped by span, refined and merged per span
    std::vector<Cone> candidates;
    for (const auto& s : supports)
        for (const auto& f : facet_faces(s))
            if (f.dim() == n - 2) candidates.push_back(f);
    for (std::size_t a = 0; a < supports.size(); ++a)
        for (std::size_t b = a + 1; b < supports.size(); ++b) {
            if (hyperplane_normal(supports[a]) == hyperplane_normal(supports[b])) continue;
            auto c = cone_intersection(supports[a], supports[b]);
            if (c.dim() == n - 2) candidates.push_back(c);
        }
    std::map<IntMatrix, std::vector<Cone>> by_span;
    for (const auto& c : candidates) by_span[c.span_basis()].push_back(c);

    std::vector<LatticeVector> cuts;
    for (const auto& s : supports) {
        cuts.push_back(hyperplane_normal(s));
        for (const auto& f : s.facets()) cuts.push_back(f);
    }
    for (const auto& [span, cells] : by_span) {
        SpanChart chart(span, n);
        auto chambers = arrangement_chambers(chart, cuts, n);
        struct Piece {
            Cone cone;
            std::vector<std::size_t> walls;
        };
        std::vector<Piece> pieces;
        for (const auto& ch : chambers) {
            bool covered = std::any_of(cells.begin(), cells.end(), [&](const Cone& c) { return c.contains(ch.interior); });
            if (!covered) continue;
            auto ws = detail::generic_wall_set(walls, ch.cone);
            if (!ws.empty()) pieces.push_back({ch.cone, ws});
        }
        // merge pieces with equal wall sets when the union is convex
        bool merged = true;
        while (merged) {
            merged = false;
            for (std::size_t i = 0; i < pieces.size() && !merged; ++i)
                for (std::size_t j = i + 1; j < pieces.size() && !merged; ++j) {
                    if (pieces[i].walls != pieces[j].walls) continue;
                    auto gi = pieces[i].cone.generators(), gj = pieces[j].cone.generators();
                    gi.insert(gi.end(), gj.begin(), gj.end());
                    auto hull = Cone::from_generators(n, gi);
                    bool convex = true;
                    for (const auto& ch : chambers) {
                        if (pieces[i].cone.contains(ch.interior) || pieces[j].cone.contains(ch.interior)) continue;
                        if (hull.contains(ch.interior)) {
                            convex = false;
                            break;
                        }
                    }
                    if (!convex) continue;
                    pieces[i].cone = hull;
                    pieces.erase(pieces.begin() + static_cast<long>(j));
                    merged = true;
                }
        }
        for (auto& p : pieces) joints.push_back({p.cone, p.walls});
    }
    std::sort(joints.begin(), joints.end(), [](const Joint& a, const Joint& b) { return a.cone < b.cone; });
    return joints;
}

struct Crossing {
    std::size_t wall;        // position in the wall list passed in
    LatticeVector half_line;  // primitive, in transverse-plane coordinates
    LatticeVector normal;     // primitive covector on M, positive on the side being left
};

// Transverse chart for a codim-2 joint: the quotient M -> M/Lambda_joint, oriented so that
// (joint generators, q1, q2) is positively oriented.
inline QuotientChart transverse_chart(const Cone& joint, int n) {
    IntMatrix span = joint.span_basis();
    QuotientChart chart(span, static_cast<std::size_t>(n));
    if (chart.quotient_rank() != 2) fail("DegenerateProjection", "joint is not of codimension two");
    IntMatrix frame;
    for (const auto& r : joint.rays()) {
        IntMatrix trial = frame;
        trial.push_back(r);
        if (rank_of(trial, n) == static_cast<int>(trial.size())) frame = trial;
    }
    for (const auto& l : joint.lineality()) {
        IntMatrix trial = frame;
        trial.push_back(l);
        if (rank_of(trial, n) == static_cast<int>(trial.size())) frame = trial;
    }
    frame.push_back(chart.section({1, 0}));
    frame.push_back(chart.section({0, 1}));
    if (determinant(frame) < 0) chart.swap_quotient_axes(0, 1);
    return chart;
}

// Counterclockwise sequence of wall crossings of a small loop around the joint.
inline std::vector<Crossing> transverse_crossing_sequence(const Cone& joint, const std::vector<Cone>& walls, int n) {
    auto chart = transverse_chart(joint, n);
    LatticeVector p = joint.relint_point();
    std::vector<Crossing> out;
    for (std::size_t i = 0; i < walls.size(); ++i) {
        const Cone& w = walls[i];
        if (!w.contains(p)) fail("Internal", "wall does not contain the joint");
        LatticeVector dir;
        for (const auto& g : w.generators()) {
            auto q = chart.project(g);
            if (!is_zero(q)) {
                dir = g;
                break;
            }
        }
        if (dir.empty()) fail("DegenerateProjection", "wall projects to a point in the transverse plane");
        LatticeVector h = primitive(chart.project(dir));
        bool plus = true, minus = true;
        for (const auto& f : w.facets()) {
            if (dot(f, p) != 0) continue;
            Int v = dot(f, dir);
            if (v < 0) plus = false;
            if (v > 0) minus = false;
        }
        for (int s : {1, -1}) {
            if ((s == 1 && !plus) || (s == -1 && !minus)) continue;
            LatticeVector hs = s * h;
            LatticeVector nu{hs[1], -hs[0]};
            out.push_back({i, hs, chart.lift_covector(nu)});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) { return angle_less(a.half_line, b.half_line); });
    return out;
}

}  // namespace wallcross
