#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cone.hpp"

namespace wallcross {

struct Fan {
    int rank = 0;
    std::vector<LatticeVector> rays;
    std::vector<std::vector<int>> maximal_cones;  // sorted ray-index sets
    std::vector<std::string> ray_labels;          // optional display names

    Cone cone(const std::vector<int>& idx) const {
        std::vector<LatticeVector> g;
        for (int i : idx) g.push_back(rays.at(i));
        return Cone::from_generators(rank, g);
    }

    // All faces of maximal cones with exactly k rays, as sorted index sets.
    std::vector<std::vector<int>> faces(std::size_t k) const {
        std::set<std::vector<int>> out;
        for (const auto& mc : maximal_cones) {
            detail::for_each_subset(mc.size(), k, [&](const std::vector<std::size_t>& sub) {
                std::vector<int> f;
                for (auto i : sub) f.push_back(mc[i]);
                out.insert(f);
            });
        }
        return {out.begin(), out.end()};
    }

    // Face of the fan whose relative interior contains p (a point of M).
    std::vector<int> carrier_face(const LatticeVector& p) const {
        for (const auto& mc : maximal_cones) {
            IntMatrix basis;
            for (int i : mc) basis.push_back(rays[i]);
            RatVector coeff;
            if (!solve_in_span(basis, p, coeff)) continue;
            bool ok = true;
            for (const auto& c : coeff) ok &= sgn(c) >= 0;
            if (!ok) continue;
            std::vector<int> face;
            for (std::size_t k = 0; k < mc.size(); ++k)
                if (sgn(coeff[k]) > 0) face.push_back(mc[k]);
            return face;
        }
        fail("IncompleteFan", "point " + to_string(p) + " lies in no cone of the fan");
    }

    // Smallest cone of the fan containing the cone c, or nullopt if c is not inside a single cone.
    std::optional<std::vector<int>> smallest_cone_containing(const Cone& c) const {
        auto face = carrier_face(c.relint_point());
        if (!cone(face).contains(c)) return std::nullopt;
        return face;
    }

    std::string ray_label(int i) const {
        if (i < static_cast<int>(ray_labels.size())) return ray_labels[i];
        return to_string(rays[i]);
    }
};

struct ValidationReport {
    std::vector<std::string> warnings;
};

inline ValidationReport validate_fan(const Fan& fan, const std::vector<int>& blowup_rays) {
    ValidationReport report;
    const int n = fan.rank;
    if (n < 1) fail("IncompleteFan", "fan rank must be positive");
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
        const auto& r = fan.rays[i];
        if (static_cast<int>(r.size()) != n) fail("ConfigError", "ray " + std::to_string(i) + " has wrong length");
        if (is_zero(r)) fail("NonPrimitiveRay", "ray " + std::to_string(i) + " is zero");
        if (!is_primitive(r)) fail("NonPrimitiveRay", "ray " + to_string(r) + " is not primitive");
    }
    for (const auto& mc : fan.maximal_cones) {
        for (int i : mc)
            if (i < 0 || i >= static_cast<int>(fan.rays.size())) fail("ConfigError", "cone refers to unknown ray");
        if (static_cast<int>(mc.size()) != n) fail("IncompleteFan", "maximal cone is not full-dimensional");
        IntMatrix m;
        for (int i : mc) m.push_back(fan.rays[i]);
        Rational det = determinant(m);
        if (det == 0) fail("IncompleteFan", "maximal cone is degenerate");
        if (abs(det) != 1) fail("NonSmoothCone", "maximal cone is not smooth");
    }
    if (fan.maximal_cones.empty()) fail("IncompleteFan", "fan has no maximal cones");

    // every facet is shared by exactly two maximal cones lying on opposite sides
    std::map<std::vector<int>, std::vector<int>> facet_owner;  // facet -> opposite ray per owner
    for (const auto& mc : fan.maximal_cones)
        for (std::size_t drop = 0; drop < mc.size(); ++drop) {
            std::vector<int> f;
            for (std::size_t k = 0; k < mc.size(); ++k)
                if (k != drop) f.push_back(mc[k]);
            facet_owner[f].push_back(mc[drop]);
        }
    for (const auto& [f, opp] : facet_owner) {
        if (opp.size() != 2) fail("IncompleteFan", "a facet is not shared by exactly two maximal cones");
        if (n == 1) {
            if (dot(fan.rays[opp[0]], fan.rays[opp[1]]) >= 0) fail("IncompleteFan", "cones overlap");
            continue;
        }
        IntMatrix rows;
        for (int i : f) rows.push_back(fan.rays[i]);
        auto normal = integer_kernel(rows, n);
        if (normal.size() != 1) fail("IncompleteFan", "degenerate facet");
        Int a = dot(normal[0], fan.rays[opp[0]]), b = dot(normal[0], fan.rays[opp[1]]);
        if ((a > 0) == (b > 0)) fail("IncompleteFan", "maximal cones overlap across a facet");
    }
    // a few generic points must each lie in exactly one maximal cone
    for (int s = 0; s < 4; ++s) {
        LatticeVector p(n);
        for (int i = 0; i < n; ++i) p[i] = ((i + 1) * 7919 + s * 104729) % 1009 - 504;
        int count = 0;
        for (const auto& mc : fan.maximal_cones)
            if (fan.cone(mc).contains_in_relint(p)) ++count;
        if (count != 1) fail("IncompleteFan", "generic point covered " + std::to_string(count) + " times");
    }

    std::set<int> seen;
    for (int b : blowup_rays) {
        if (b < 0 || b >= static_cast<int>(fan.rays.size())) fail("ConfigError", "blowup ray index out of range");
        seen.insert(b);
    }
    for (auto a = seen.begin(); a != seen.end(); ++a)
        for (auto b = std::next(a); b != seen.end(); ++b)
            for (const auto& mc : fan.maximal_cones) {
                bool ha = std::find(mc.begin(), mc.end(), *a) != mc.end();
                bool hb = std::find(mc.begin(), mc.end(), *b) != mc.end();
                if (ha && hb) {
                    report.warnings.push_back("blowup rays " + fan.ray_label(*a) + " and " + fan.ray_label(*b) +
                                              " span a common cone");
                    break;
                }
            }
    return report;
}

// Quotient fan Sigma(rho) in M / Z m_rho: cones are the images of the cones containing rho.
struct QuotientFan {
    Fan base;
    int ray = -1;
    QuotientChart chart;
    std::vector<std::vector<int>> cones;  // base index sets containing ray

    LatticeVector image(const LatticeVector& m) const { return chart.project(m); }
};

inline QuotientFan quotient_fan(const Fan& fan, int ray) {
    QuotientFan q;
    q.base = fan;
    q.ray = ray;
    q.chart = QuotientChart({fan.rays.at(ray)}, fan.rank);
    std::set<std::vector<int>> cones;
    for (std::size_t k = 1; k <= static_cast<std::size_t>(fan.rank); ++k)
        for (const auto& f : fan.faces(k))
            if (std::find(f.begin(), f.end(), ray) != f.end()) cones.insert(f);
    q.cones.assign(cones.begin(), cones.end());
    return q;
}

}  // namespace wallcross
