#pragma once

#include <algorithm>
#include <map>
#include <thread>
#include <vector>

#include "consistency.hpp"

namespace wallcross {

enum class JointOrder { lexicographic, reversed };

struct ScatterOptions {
    int workers = 1;
    JointOrder joint_order = JointOrder::lexicographic;
};

namespace detail {

struct Insertion {
    Cone support;
    TruncatedSeries function;
};

inline bool in_span(const IntMatrix& basis, const LatticeVector& v) {
    RatVector x;
    return solve_in_span(basis, v, x);
}

// Walls cancelling the non-parallel order-k log terms at a joint, with the given sign convention.
inline std::vector<Insertion> corrections(const ScatteringDiagram& d, const Joint& joint, const LogDerivationSum& log, int sign) {
    const int n = d.monoid.m_rank;
    auto span = joint.cone.span_basis();
    auto chart = transverse_chart(joint.cone, n);
    std::map<LatticeVector, TruncatedSeries> by_direction;
    for (const auto& term : log) {
        auto r = r_image(term.monomial);
        if (is_zero(r) || in_span(span, r)) continue;
        LatticeVector h = primitive(chart.project(-r));
        LatticeVector wall_normal = chart.lift_covector({h[1], -h[0]});
        Rational lambda;
        bool found = false;
        for (int i = 0; i < n; ++i)
            if (wall_normal[i] != 0) {
                lambda = term.covector[i] / static_cast<long>(wall_normal[i]);
                found = true;
                break;
            }
        if (!found) fail("Internal", "zero crossing normal");
        for (int i = 0; i < n; ++i)
            if (term.covector[i] != lambda * static_cast<long>(wall_normal[i]))
                fail("Internal", "log covector is not normal to the new wall");
        auto dir = primitive(-r);
        auto it = by_direction.find(dir);
        if (it == by_direction.end()) it = by_direction.emplace(dir, TruncatedSeries::one(d.monoid, d.order)).first;
        it->second.add_term(term.monomial, -lambda * sign);
    }
    std::vector<Insertion> out;
    for (auto& [dir, f] : by_direction) {
        auto gens = joint.cone.generators();
        gens.push_back(dir);
        out.push_back({Cone::from_generators(n, gens), f});
    }
    return out;
}

inline bool has_nonparallel_terms(const Joint& joint, const LogDerivationSum& log) {
    auto span = joint.cone.span_basis();
    for (const auto& t : log) {
        auto r = r_image(t.monomial);
        if (!is_zero(r) && !in_span(span, r)) return true;
    }
    return false;
}

// Loop at a joint cell, re-deriving its wall set in the given diagram.
inline RingAutomorphism loop_at(const ScatteringDiagram& d, const Cone& cell, int order) {
    Joint j{cell, {}};
    auto p = cell.relint_point();
    for (std::size_t i = 0; i < d.walls.size(); ++i)
        if (d.walls[i].support.contains(p) && d.walls[i].support.contains(cell)) j.walls.push_back(i);
    return loop_automorphism(d, j, order);
}

}  // namespace detail

// Order-by-order completion to a diagram consistent modulo m^{order+1}.
inline ScatteringDiagram scatter(const ScatteringDiagram& initial, int order, const ScatterOptions& options = {}) {
    const int n = initial.monoid.m_rank;
    ScatteringDiagram D{initial.monoid, order, {}, initial.fan};
    for (const auto& w : initial.walls) D.walls.push_back(Wall{w.support, w.direction, w.function.rebound(order)});

    for (int k = 1; k <= order; ++k) {
        ScatteringDiagram Dk = truncated(D, k);
        auto joints = enumerate_joints(supports_of(Dk), n);
        if (options.joint_order == JointOrder::reversed) std::reverse(joints.begin(), joints.end());

        std::vector<LogDerivationSum> logs(joints.size());
        std::vector<char> active(joints.size(), 0);
        auto work = [&](std::size_t begin, std::size_t step) {
            for (std::size_t j = begin; j < joints.size(); j += step) {
                auto theta = loop_automorphism(Dk, joints[j], k);
                if (theta.deviation_order() != k) continue;  // trivial here, or residue left from below
                logs[j] = automorphism_log(theta, k);
                active[j] = detail::has_nonparallel_terms(joints[j], logs[j]) ? 1 : 0;
            }
        };
        std::size_t workers = static_cast<std::size_t>(std::max(1, options.workers));
        if (workers == 1) {
            work(0, 1);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work, t, workers);
            for (auto& th : pool) th.join();
        }

        std::vector<std::vector<detail::Insertion>> batch(joints.size());
        for (std::size_t j = 0; j < joints.size(); ++j)
            if (active[j]) batch[j] = detail::corrections(Dk, joints[j], logs[j], 1);

        auto apply_batch = [&]() {
            ScatteringDiagram next = Dk;
            for (const auto& ins : batch)
                for (const auto& w : ins) next.walls.push_back(make_wall(w.support, w.function.truncated(k)));
            return next;
        };
        ScatteringDiagram trial = apply_batch();
        for (std::size_t j = 0; j < joints.size(); ++j) {
            if (!active[j]) continue;
            auto theta = detail::loop_at(trial, joints[j].cone, k);
            if (theta.deviation_order() > k || !detail::has_nonparallel_terms(joints[j], automorphism_log(theta, k))) continue;
            batch[j] = detail::corrections(Dk, joints[j], logs[j], -1);
            trial = apply_batch();
            theta = detail::loop_at(trial, joints[j].cone, k);
            if (theta.deviation_order() <= k && detail::has_nonparallel_terms(joints[j], automorphism_log(theta, k)))
                fail("Internal", "no sign of the inserted walls cancels the loop at " + joints[j].cone.to_string());
        }
        for (const auto& ins : batch)
            for (const auto& w : ins) D.walls.push_back(make_wall(w.support, w.function.rebound(order)));
    }

    auto report = is_consistent(D);
    if (!report.consistent()) {
        for (const auto& j : report.joints)
            if (!j.pass)
                fail("ParallelResidue", "loop around " + j.joint.cone.to_string() + " is not the identity at order " +
                                            std::to_string(j.failure_order));
    }
    return D;
}

// Walls of `after` that are not present in `before` (by position), for inspecting what scatter added.
inline std::vector<Wall> added_walls(const ScatteringDiagram& before, const ScatteringDiagram& after) {
    return {after.walls.begin() + static_cast<long>(before.walls.size()), after.walls.end()};
}

}  // namespace wallcross
