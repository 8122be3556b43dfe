#pragma once

#include <vector>

#include "diagram.hpp"
#include "joints.hpp"

namespace wallcross {

struct LoopStep {
    std::vector<std::size_t> walls;  // diagram indices crossed at this half-line
    LatticeVector half_line;
    LatticeVector normal;
    RingAutomorphism after;  // path-ordered product up to and including this step
};

// Crossings of a small counterclockwise loop around the joint, with walls on a common half-line
// and common normal crossed together (their automorphisms commute).
inline std::vector<LoopStep> loop_steps(const ScatteringDiagram& d, const Joint& joint, int order) {
    std::vector<Cone> supports;
    for (auto i : joint.walls) supports.push_back(d.walls.at(i).support);
    auto seq = transverse_crossing_sequence(joint.cone, supports, d.monoid.m_rank);
    std::vector<LoopStep> steps;
    RingAutomorphism theta = RingAutomorphism::identity(d.monoid, order);
    std::size_t i = 0;
    while (i < seq.size()) {
        std::size_t j = i;
        TruncatedSeries f = TruncatedSeries::one(d.monoid, order);
        std::vector<std::size_t> crossed;
        while (j < seq.size() && seq[j].half_line == seq[i].half_line && seq[j].normal == seq[i].normal) {
            std::size_t w = joint.walls[seq[j].wall];
            f = f * d.walls[w].function.truncated(order);
            crossed.push_back(w);
            ++j;
        }
        if (!f.is_one()) theta = cross_after(theta, f, seq[i].normal);
        steps.push_back({crossed, seq[i].half_line, seq[i].normal, theta});
        i = j;
    }
    return steps;
}

inline RingAutomorphism loop_automorphism(const ScatteringDiagram& d, const Joint& joint, int order) {
    auto steps = loop_steps(d, joint, order);
    if (steps.empty()) return RingAutomorphism::identity(d.monoid, order);
    return steps.back().after;
}

inline RingAutomorphism loop_automorphism(const ScatteringDiagram& d, const Joint& joint) {
    return loop_automorphism(d, joint, d.order);
}

struct JointReport {
    Joint joint;
    bool pass = true;
    int failure_order = 0;  // lowest order with a nonzero log term
    LogDerivationSum log;
};

struct ConsistencyReport {
    std::vector<JointReport> joints;
    bool consistent() const {
        for (const auto& j : joints)
            if (!j.pass) return false;
        return true;
    }
};

inline JointReport check_joint(const ScatteringDiagram& d, const Joint& joint) {
    JointReport r{joint, true, 0, {}};
    auto theta = loop_automorphism(d, joint);
    int k = theta.deviation_order();
    if (k <= d.order) {
        r.pass = false;
        r.failure_order = k;
        r.log = automorphism_log(theta, k);
    }
    return r;
}

inline ConsistencyReport is_consistent(const ScatteringDiagram& d) {
    ConsistencyReport report;
    auto joints = enumerate_joints(supports_of(d), d.monoid.m_rank);
    for (const auto& j : joints) report.joints.push_back(check_joint(d, j));
    return report;
}

}  // namespace wallcross
