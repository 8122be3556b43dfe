#pragma once

#include <map>
#include <string>
#include <vector>

#include "widgets.hpp"

namespace wallcross {

// Toric part indexed by the rays of the fan (an element of ker s), exceptional part by flat t-index.
struct CurveClass {
    LatticeVector toric;
    LatticeVector exceptional;

    friend CurveClass operator+(const CurveClass& a, const CurveClass& b) { return {a.toric + b.toric, a.exceptional + b.exceptional}; }
    friend CurveClass operator*(Int k, const CurveClass& a) { return {k * a.toric, k * a.exceptional}; }
    friend bool operator==(const CurveClass& a, const CurveClass& b) = default;
    friend auto operator<=>(const CurveClass& a, const CurveClass& b) = default;
    bool is_zero() const { return wallcross::is_zero(toric) && wallcross::is_zero(exceptional); }
};

// s: Z^{Sigma(1)} -> M as equations on ray coefficients.
inline IntMatrix ray_relation_rows(const Fan& fan) {
    IntMatrix rows(fan.rank, LatticeVector(fan.rays.size(), 0));
    for (std::size_t r = 0; r < fan.rays.size(); ++r)
        for (int i = 0; i < fan.rank; ++i) rows[i][r] = fan.rays[r][i];
    return rows;
}

inline bool in_ker_s(const Fan& fan, const LatticeVector& a) {
    LatticeVector sum(fan.rank, 0);
    for (std::size_t r = 0; r < fan.rays.size(); ++r) sum = sum + a[r] * fan.rays[r];
    return wallcross::is_zero(sum);
}

struct ClassBasis {
    IntMatrix toric;                         // Z-basis of ker s
    std::vector<std::string> toric_labels;   // L, or L1, L2, ...
    std::vector<std::string> exceptional_labels;  // by flat t-index: E1, E2, or E1_1, E1_2, ...

    // Coordinates of the toric part in the basis.
    LatticeVector coordinates(const LatticeVector& toric_part) const {
        if (toric.empty()) {
            if (!wallcross::is_zero(toric_part)) fail("Internal", "class outside ker s");
            return {};
        }
        RatVector x;
        if (!solve_in_span(toric, toric_part, x)) fail("Internal", "class outside ker s");
        LatticeVector c;
        for (const auto& q : x) {
            if (q.get_den() != 1) fail("Internal", "kernel basis does not span ker s over Z");
            c.push_back(q.get_num().get_si());
        }
        return c;
    }

    // "L-E1-E2", "2L-E1", "E1"; "0" for the zero class.
    std::string label(const CurveClass& beta) const {
        std::vector<std::pair<Int, std::string>> parts;
        auto c = coordinates(beta.toric);
        for (std::size_t i = 0; i < c.size(); ++i) parts.push_back({c[i], toric_labels[i]});
        for (std::size_t i = 0; i < beta.exceptional.size(); ++i) parts.push_back({beta.exceptional[i], exceptional_labels.at(i)});
        std::string out;
        for (const auto& [k, name] : parts) {
            if (k == 0) continue;
            if (k < 0) out += "-";
            else if (!out.empty()) out += "+";
            Int a = k < 0 ? -k : k;
            if (a != 1) out += std::to_string(a);
            out += name;
        }
        return out.empty() ? "0" : out;
    }
};

inline ClassBasis kernel_basis(const Fan& fan, const ExponentMonoid& P) {
    ClassBasis b;
    b.toric = integer_kernel(ray_relation_rows(fan), fan.rays.size());
    for (std::size_t i = 0; i < b.toric.size(); ++i)
        b.toric_labels.push_back(b.toric.size() == 1 ? "L" : "L" + std::to_string(i + 1));
    bool singletons = std::all_of(P.t_blocks.begin(), P.t_blocks.end(), [](int s) { return s == 1; });
    for (std::size_t blk = 0; blk < P.t_blocks.size(); ++blk)
        for (int j = 0; j < P.t_blocks[blk]; ++j)
            b.exceptional_labels.push_back("E" + std::to_string(blk + 1) + (singletons ? "" : "_" + std::to_string(j + 1)));
    return b;
}

inline ClassBasis kernel_basis(const Fan& fan) { return kernel_basis(fan, ExponentMonoid(fan.rank, {})); }

// Index set of the cone of the fan equal to c.
inline std::vector<int> fan_cone_indices(const Fan& fan, const Cone& c) {
    std::vector<int> idx;
    for (const auto& r : c.rays()) {
        auto it = std::find(fan.rays.begin(), fan.rays.end(), r);
        if (it == fan.rays.end()) fail("NoMatchingCone", "cone " + c.to_string() + " is not a cone of the fan");
        idx.push_back(static_cast<int>(it - fan.rays.begin()));
    }
    std::sort(idx.begin(), idx.end());
    bool face = c.lineality().empty() &&
                std::any_of(fan.maximal_cones.begin(), fan.maximal_cones.end(),
                            [&](const std::vector<int>& mc) { return detail::contains_index(mc, idx); });
    if (!face) fail("NoMatchingCone", "cone " + c.to_string() + " is not a cone of the fan");
    return idx;
}

// Sum over pairs of the coefficients of m_i in the rays of sigma_i.
inline LatticeVector class_from_balanced_tuple(const Fan& fan, const std::vector<std::pair<LatticeVector, Cone>>& pairs) {
    LatticeVector total(fan.rank, 0);
    for (const auto& [m, s] : pairs) total = total + m;
    if (!wallcross::is_zero(total)) fail("NotBalanced", "tuple does not sum to zero: " + to_string(total));
    LatticeVector a(fan.rays.size(), 0);
    for (const auto& [m, sigma] : pairs) {
        auto idx = fan_cone_indices(fan, sigma);
        IntMatrix basis;
        for (int i : idx) basis.push_back(fan.rays[i]);
        RatVector x;
        if (wallcross::is_zero(m)) continue;
        if (basis.empty() || !solve_in_span(basis, m, x)) fail("NotTangent", to_string(m) + " is not tangent to " + sigma.to_string());
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (x[k].get_den() != 1) fail("Internal", "non-integral coordinates in a smooth cone");
            a[idx[k]] = add_checked(a[idx[k]], x[k].get_num().get_si());
        }
    }
    if (!in_ker_s(fan, a)) fail("Internal", "balanced tuple produced a class outside ker s");
    return a;
}

// beta_{A,sigma}: toric part from {(a_ij m_i, rho_i)} and (m_A, sigma), m_A = -sum a_ij m_i, minus sum a_ij E_i^j.
inline CurveClass beta_A_sigma(const BlowupSpec& spec, const std::vector<int>& a, const Cone& sigma) {
    auto P = spec.monoid();
    auto rays = spec.blowup_rays();
    if (static_cast<int>(a.size()) != P.t_rank()) fail("Internal", "exponent vector has wrong length");
    std::vector<std::pair<LatticeVector, Cone>> pairs;
    LatticeVector mA(spec.fan.rank, 0);
    for (int k = 0; k < P.t_rank(); ++k) {
        if (a[k] == 0) continue;
        if (a[k] < 0) fail("Internal", "negative exponent in A");
        int ray = rays[P.block_of(k)];
        const auto& m = spec.fan.rays[ray];
        pairs.push_back({a[k] * m, spec.fan.cone({ray})});
        mA = mA - a[k] * m;
    }
    pairs.push_back({mA, sigma});
    CurveClass beta{class_from_balanced_tuple(spec.fan, pairs), LatticeVector(P.t_rank(), 0)};
    for (int k = 0; k < P.t_rank(); ++k) beta.exceptional[k] = -a[k];
    return beta;
}

}  // namespace wallcross
