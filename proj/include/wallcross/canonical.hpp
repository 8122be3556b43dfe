#pragma once

#include <string>
#include <vector>

#include "curve_class.hpp"
#include "minimal.hpp"

namespace wallcross {

struct ClassShape {
    int m_rank = 0;
    int toric_rank = 0;  // number of rays of the fan
    int t_rank = 0;
    friend bool operator==(const ClassShape&, const ClassShape&) = default;
};

// t^beta z^m; its degree is the t-order of the monomial it came from.
class ClassMonomial {
public:
    using Shape = ClassShape;

    ClassMonomial() = default;
    ClassMonomial(CurveClass beta, LatticeVector m) : beta_(std::move(beta)), m_(std::move(m)) {}

    static ClassMonomial one(const ClassShape& s) {
        return {CurveClass{LatticeVector(s.toric_rank, 0), LatticeVector(s.t_rank, 0)}, LatticeVector(s.m_rank, 0)};
    }

    const CurveClass& beta() const { return beta_; }
    const LatticeVector& m() const { return m_; }

    int order() const {
        Int s = 0;
        for (Int e : beta_.exceptional) s += e;
        return static_cast<int>(s < 0 ? -s : s);
    }

    friend ClassMonomial operator*(const ClassMonomial& a, const ClassMonomial& b) { return {a.beta_ + b.beta_, a.m_ + b.m_}; }
    friend bool operator==(const ClassMonomial& a, const ClassMonomial& b) = default;
    friend bool operator<(const ClassMonomial& a, const ClassMonomial& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        if (a.beta_ != b.beta_) return a.beta_ > b.beta_;
        return a.m_ < b.m_;
    }

private:
    CurveClass beta_;
    LatticeVector m_;
};

using CanonicalSeries = BasicSeries<ClassMonomial>;

struct CanonicalWall {
    Cone support;
    CanonicalSeries function;
    bool incoming = false;
};

inline ClassShape class_shape(const BlowupSpec& spec) {
    return {spec.fan.rank, static_cast<int>(spec.fan.rays.size()), spec.monoid().t_rank()};
}

namespace detail {

// An incoming widget factor over blowup block i: direction m_i, rho_i in the support, only t_{i*}.
inline std::optional<int> widget_block(const BlowupSpec& spec, const Cone& support, const LatticeVector& dir,
                                       const TruncatedSeries& g) {
    auto rays = spec.blowup_rays();
    auto P = spec.monoid();
    for (std::size_t b = 0; b < rays.size(); ++b) {
        const auto& m = spec.fan.rays[rays[b]];
        if (dir != m || !support.contains(m)) continue;
        bool ok = true;
        for (const auto& [mono, c] : g.terms())
            for (int k = 0; k < P.t_rank(); ++k)
                if (mono.t(k) != 0 && P.block_of(k) != static_cast<int>(b)) ok = false;
        if (ok) return static_cast<int>(b);
    }
    return std::nullopt;
}

}  // namespace detail

// Curve-class form of one wall function: incoming widget factors map t_ij z^{m_i} to t^{E_i^j} z^{-m_i},
// every other term t^a z^m to t^{beta_{A,sigma}} z^m, sigma the smallest cone of the fan containing the wall.
inline std::vector<CanonicalWall> upsilon_wall(const Wall& wall, const BlowupSpec& spec) {
    auto shape = class_shape(spec);
    int order = wall.function.order_bound();
    std::vector<CanonicalWall> out;
    for (const auto& piece : split_incoming(wall)) {
        CanonicalWall cw{piece.support, CanonicalSeries(shape, order), false};
        auto dir = piece.direction ? std::optional<LatticeVector>(-*piece.direction) : std::nullopt;
        std::optional<int> block = dir && piece.support.contains(*dir) ? detail::widget_block(spec, piece.support, *dir, piece.function)
                                                                       : std::nullopt;
        if (block) {
            cw.incoming = true;
            for (const auto& [mono, c] : piece.function.terms()) {
                CurveClass beta{LatticeVector(shape.toric_rank, 0), LatticeVector(shape.t_rank, 0)};
                for (int k = 0; k < shape.t_rank; ++k) beta.exceptional[k] = mono.t(k);
                cw.function.add_term(ClassMonomial(beta, -r_image(mono)), c);
            }
        } else {
            auto face = spec.fan.smallest_cone_containing(piece.support);
            if (!face) fail("NotInSingleCone", "wall " + piece.support.to_string() + " is not inside a single cone of the fan");
            Cone sigma = spec.fan.cone(*face);
            auto rays = spec.blowup_rays();
            auto P = spec.monoid();
            for (const auto& [mono, c] : piece.function.terms()) {
                auto a = mono.t_part();
                LatticeVector sum(shape.m_rank, 0);
                for (int k = 0; k < P.t_rank(); ++k) sum = sum + static_cast<Int>(a[k]) * spec.fan.rays[rays[P.block_of(k)]];
                if (sum != r_image(mono)) fail("Internal", "wall monomial is not a product of the t_ij z^{m_i}");
                cw.function.add_term(ClassMonomial(beta_A_sigma(spec, a, sigma), r_image(mono)), c);
            }
        }
        out.push_back(std::move(cw));
    }
    return out;
}

inline std::vector<CanonicalWall> upsilon(const ScatteringDiagram& d, const BlowupSpec& spec) {
    std::vector<CanonicalWall> out;
    for (const auto& w : refine_by_fan(d, spec.fan).walls) {
        auto pieces = upsilon_wall(w, spec);
        out.insert(out.end(), pieces.begin(), pieces.end());
    }
    return out;
}

// Inverse of upsilon on one wall: t^beta z^m back to prod t_ij^{|e_ij|} z^{+-m}.
inline TruncatedSeries forget_classes(const CanonicalWall& w, const ExponentMonoid& P) {
    TruncatedSeries f(P, w.function.order_bound());
    for (const auto& [mono, c] : w.function.terms()) {
        std::vector<int> t(P.t_rank());
        for (int k = 0; k < P.t_rank(); ++k) {
            Int e = mono.beta().exceptional[k];
            t[k] = static_cast<int>(e < 0 ? -e : e);
        }
        f.add_term(PMonomial(w.incoming ? -mono.m() : mono.m(), t), c);
    }
    return f;
}

inline Int divisibility_index(const LatticeVector& u) {
    if (is_zero(u)) fail("ZeroVector", "divisibility of the zero vector");
    return gcd_of(u);
}

// Torsion order of M / (Lambda_F + Z u) for the facet F of the support from which the wall is swept
// out along u; the divisibility of u when no single facet qualifies.
inline Int wall_index(const Cone& support, const LatticeVector& u) {
    const int n = support.ambient_rank();
    std::vector<Cone> candidates;
    for (const auto& f : facet_faces(support)) {
        auto gens = f.generators();
        gens.push_back(u);
        if (Cone::from_generators(n, gens).contains(support)) candidates.push_back(f);
    }
    if (candidates.size() != 1) return divisibility_index(u);
    IntMatrix rows = candidates[0].span_basis();
    rows.push_back(u);
    return torsion_index(rows, static_cast<std::size_t>(n));
}

struct Invariant {
    CurveClass beta;
    LatticeVector u;
    Rational N;
};

// log f = sum c t^beta z^{-u}; N = c / index.
inline std::vector<Invariant> extract_invariants(const CanonicalWall& wall, int order) {
    auto log = log_unit(wall.function.truncated(order));
    std::vector<Invariant> out;
    for (const auto& [mono, c] : log.terms()) {
        LatticeVector u = -mono.m();
        out.push_back({mono.beta(), u, c / static_cast<long>(wall_index(wall.support, u))});
    }
    return out;
}

inline std::string render(const CanonicalSeries& f, const ClassBasis& basis, const VariableNames& names) {
    std::vector<std::pair<Rational, std::string>> terms;
    for (const auto& [mono, c] : f.terms()) {
        std::string body;
        auto append = [&](const std::string& piece) { body += (body.empty() ? "" : "*") + piece; };
        if (!mono.beta().is_zero()) append("t^{" + basis.label(mono.beta()) + "}");
        for (std::size_t i = 0; i < mono.m().size(); ++i)
            if (mono.m()[i] != 0) append(detail::power_string(names.m.at(i), mono.m()[i]));
        terms.emplace_back(c, body);
    }
    return detail::join_terms(terms);
}

}  // namespace wallcross
