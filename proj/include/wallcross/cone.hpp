#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "lattice.hpp"

namespace wallcross {

namespace detail {

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline void sort_unique(std::vector<LatticeVector>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Orthogonal projection of v onto the orthogonal complement of span(basis).
inline RatVector project_off(const LatticeVector& v, const IntMatrix& basis) {
    std::size_t n = v.size();
    RatVector r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = Rational(static_cast<long>(v[i]));
    if (basis.empty()) return r;
    // Gram system G c = B v
    std::size_t k = basis.size();
    std::vector<RatVector> aug(k, RatVector(k + 1));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = Rational(static_cast<long>(dot(basis[i], basis[j])));
        aug[i][k] = Rational(static_cast<long>(dot(basis[i], v)));
    }
    detail::rref(aug, k + 1);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < n; ++c) r[c] -= aug[i][k] * static_cast<long>(basis[i][c]);
    return r;
}

}  // namespace detail

// Rational polyhedral cone in Z^n, stored in a canonical form: the lineality space (Hermite basis),
// the primitive extreme rays of the pointed part taken orthogonal to the lineality space, the
// equations of the linear span and the primitive facet normals lying in the span.
class Cone {
public:
    Cone() = default;

    static Cone origin(int n) {
        Cone c;
        c.n_ = n;
        c.dim_ = 0;
        c.equations_ = identity_matrix(n);
        return c;
    }

    static Cone from_generators(int n, const std::vector<LatticeVector>& gens_in) {
        Cone c;
        c.n_ = n;
        std::vector<LatticeVector> gens;
        for (const auto& g : gens_in) {
            if (static_cast<int>(g.size()) != n) fail("Internal", "generator has wrong length");
            if (!is_zero(g)) gens.push_back(primitive(g));
        }
        detail::sort_unique(gens);
        if (gens.empty()) return origin(n);

        auto span = saturation(gens, n);
        c.dim_ = static_cast<int>(span.size());
        c.equations_ = c.dim_ == n ? IntMatrix{} : integer_kernel(gens, n);

        // facets: covectors in the span vanishing on dim-1 independent generators
        std::vector<LatticeVector> facets;
        detail::for_each_subset(gens.size(), c.dim_ - 1, [&](const std::vector<std::size_t>& sub) {
            IntMatrix rows;
            for (auto i : sub) rows.push_back(gens[i]);
            if (rank_of(rows, n) != c.dim_ - 1) return;
            // a = lambda . span with rows . a = 0
            IntMatrix sys;
            for (const auto& r : rows) {
                LatticeVector e(span.size());
                for (std::size_t k = 0; k < span.size(); ++k) e[k] = dot(r, span[k]);
                sys.push_back(e);
            }
            auto ns = rational_nullspace(sys, span.size());
            if (ns.size() != 1) return;
            RatVector a(n);
            for (std::size_t k = 0; k < span.size(); ++k)
                for (int i = 0; i < n; ++i) a[i] += ns[0][k] * static_cast<long>(span[k][i]);
            auto f = primitive_integer(a);
            bool pos = false, neg = false;
            for (const auto& g : gens) {
                Int v = dot(f, g);
                pos |= v > 0;
                neg |= v < 0;
            }
            if (pos && neg) return;
            if (neg) f = -f;
            facets.push_back(f);
        });
        detail::sort_unique(facets);
        c.facets_ = facets;

        IntMatrix constraints = c.equations_;
        constraints.insert(constraints.end(), facets.begin(), facets.end());
        c.lineality_ = integer_kernel(constraints, n);
        int pointed_dim = c.dim_ - static_cast<int>(c.lineality_.size());

        for (const auto& g : gens) {
            auto p = primitive_integer(detail::project_off(g, c.lineality_));
            if (is_zero(p)) continue;
            IntMatrix tight;
            for (const auto& f : facets)
                if (dot(f, g) == 0) tight.push_back(f);
            int r = tight.empty() ? 0 : rank_of(tight, n);
            if (r == pointed_dim - 1) c.rays_.push_back(p);
        }
        detail::sort_unique(c.rays_);
        return c;
    }

    // H-representation to cone: equations . x = 0 and inequalities . x >= 0.
    static Cone from_inequalities(int n, const IntMatrix& equations, const IntMatrix& inequalities) {
        IntMatrix all = equations;
        all.insert(all.end(), inequalities.begin(), inequalities.end());
        auto lin = integer_kernel(all, n);
        auto space = integer_kernel(equations, n);
        int pointed = static_cast<int>(space.size()) - static_cast<int>(lin.size());
        std::vector<LatticeVector> gens;
        for (const auto& l : lin) {
            gens.push_back(l);
            gens.push_back(-l);
        }
        if (pointed > 0) {
            std::vector<LatticeVector> ineq;
            for (const auto& a : inequalities)
                if (!is_zero(a)) ineq.push_back(primitive(a));
            detail::sort_unique(ineq);
            detail::for_each_subset(ineq.size(), pointed - 1, [&](const std::vector<std::size_t>& sub) {
                IntMatrix rows = equations;
                for (auto i : sub) rows.push_back(ineq[i]);
                rows.insert(rows.end(), lin.begin(), lin.end());
                auto ns = rational_nullspace(rows, n);
                if (ns.size() != 1) return;
                auto x = primitive_integer(ns[0]);
                for (int sign : {1, -1}) {
                    LatticeVector y = sign * x;
                    bool ok = std::all_of(ineq.begin(), ineq.end(), [&](const LatticeVector& a) { return dot(a, y) >= 0; });
                    if (ok) gens.push_back(y);
                }
            });
        }
        return from_generators(n, gens);
    }

    int ambient_rank() const { return n_; }
    int dim() const { return dim_; }
    const std::vector<LatticeVector>& rays() const { return rays_; }
    const IntMatrix& lineality() const { return lineality_; }
    const IntMatrix& equations() const { return equations_; }
    const IntMatrix& facets() const { return facets_; }
    bool is_linear_subspace() const { return rays_.empty(); }

    std::vector<LatticeVector> generators() const {
        std::vector<LatticeVector> g = rays_;
        for (const auto& l : lineality_) {
            g.push_back(l);
            g.push_back(-l);
        }
        return g;
    }

    IntMatrix span_basis() const {
        std::vector<LatticeVector> g = rays_;
        g.insert(g.end(), lineality_.begin(), lineality_.end());
        return saturation(g, n_);
    }

    bool contains(const LatticeVector& v) const {
        for (const auto& e : equations_)
            if (dot(e, v) != 0) return false;
        for (const auto& f : facets_)
            if (dot(f, v) < 0) return false;
        return true;
    }

    bool contains_in_relint(const LatticeVector& v) const {
        for (const auto& e : equations_)
            if (dot(e, v) != 0) return false;
        for (const auto& f : facets_)
            if (dot(f, v) <= 0) return false;
        return true;
    }

    bool contains(const Cone& other) const {
        for (const auto& g : other.generators())
            if (!contains(g)) return false;
        return true;
    }

    LatticeVector relint_point() const {
        LatticeVector p(n_, 0);
        for (const auto& r : rays_) p = p + r;
        for (const auto& l : lineality_) p = p + l;
        return p;
    }

    std::string to_string() const {
        std::string s = "<";
        auto g = generators();
        for (std::size_t i = 0; i < g.size(); ++i) s += (i ? " " : "") + wallcross::to_string(g[i]);
        return s + ">";
    }

    friend bool operator==(const Cone& a, const Cone& b) {
        return a.n_ == b.n_ && a.dim_ == b.dim_ && a.rays_ == b.rays_ && a.lineality_ == b.lineality_;
    }
    friend bool operator<(const Cone& a, const Cone& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
        if (a.lineality_ != b.lineality_) return a.lineality_ < b.lineality_;
        return a.rays_ < b.rays_;
    }

private:
    int n_ = 0;
    int dim_ = 0;
    std::vector<LatticeVector> rays_;
    IntMatrix lineality_;
    IntMatrix equations_;
    IntMatrix facets_;
};

inline Cone cone_intersection(const Cone& a, const Cone& b) {
    if (a.ambient_rank() != b.ambient_rank()) fail("Internal", "cone intersection across ranks");
    IntMatrix eq = a.equations();
    eq.insert(eq.end(), b.equations().begin(), b.equations().end());
    IntMatrix ineq = a.facets();
    ineq.insert(ineq.end(), b.facets().begin(), b.facets().end());
    return Cone::from_inequalities(a.ambient_rank(), eq, ineq);
}

// The faces of c cut out by its facets.
inline std::vector<Cone> facet_faces(const Cone& c) {
    std::vector<Cone> out;
    auto gens = c.generators();
    for (const auto& f : c.facets()) {
        std::vector<LatticeVector> g;
        for (const auto& x : gens)
            if (dot(f, x) == 0) g.push_back(x);
        out.push_back(Cone::from_generators(c.ambient_rank(), g));
    }
    return out;
}

// Primitive normal of a codimension-one span, sign-normalized so the first nonzero entry is positive.
inline LatticeVector hyperplane_normal(const Cone& c) {
    if (c.equations().size() != 1) fail("Internal", "cone is not of codimension one");
    auto v = primitive(c.equations()[0]);
    for (Int x : v)
        if (x != 0) {
            if (x < 0) v = -v;
            break;
        }
    return v;
}

}  // namespace wallcross
