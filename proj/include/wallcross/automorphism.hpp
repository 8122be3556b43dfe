#pragma once

#include <map>
#include <memory>
#include <vector>

#include "monomial.hpp"

namespace wallcross {

// Caches integer powers of a unit series.
class PowerCache {
public:
    explicit PowerCache(TruncatedSeries f) : f_(std::move(f)) {}

    const TruncatedSeries& get(long e) {
        auto it = cache_.find(e);
        if (it != cache_.end()) return it->second;
        TruncatedSeries v = e == 0   ? TruncatedSeries::one(f_.shape(), f_.order_bound())
                            : e > 0  ? get(e - 1) * f_
                                     : get(e + 1) * inverse_f();
        return cache_.emplace(e, std::move(v)).first->second;
    }

private:
    const TruncatedSeries& inverse_f() {
        if (!inv_) inv_ = std::make_unique<TruncatedSeries>(inverse(f_));
        return *inv_;
    }

    TruncatedSeries f_;
    std::unique_ptr<TruncatedSeries> inv_;
    std::map<long, TruncatedSeries> cache_;
};

// Automorphism of R_I fixing t-monomials, stored by unit cofactors: z^{e_i} -> z^{e_i} u_i.
class RingAutomorphism {
public:
    RingAutomorphism() = default;

    static RingAutomorphism identity(const ExponentMonoid& p, int order) {
        RingAutomorphism a;
        a.monoid_ = p;
        a.order_ = order;
        a.cofactors_.assign(p.m_rank, TruncatedSeries::one(p, order));
        return a;
    }

    static RingAutomorphism from_cofactors(const ExponentMonoid& p, int order, std::vector<TruncatedSeries> u) {
        RingAutomorphism a;
        a.monoid_ = p;
        a.order_ = order;
        a.cofactors_ = std::move(u);
        for (const auto& c : a.cofactors_)
            if (c.constant_term() != 1 || !c.order_zero_is_constant())
                fail("Internal", "automorphism cofactor is not congruent to 1");
        return a;
    }

    const ExponentMonoid& monoid() const { return monoid_; }
    int order_bound() const { return order_; }
    const TruncatedSeries& cofactor(int i) const { return cofactors_.at(i); }
    const std::vector<TruncatedSeries>& cofactors() const { return cofactors_; }

    TruncatedSeries image(int i) const {
        return TruncatedSeries::monomial(monoid_, order_, z_power(monoid_, unit_vector(monoid_.m_rank, i))) * cofactors_.at(i);
    }

    bool is_identity() const {
        for (const auto& c : cofactors_)
            if (!c.is_one()) return false;
        return true;
    }

    // Lowest t-order at which some cofactor differs from 1 (order_bound + 1 for the identity).
    int deviation_order() const {
        int v = order_ + 1;
        for (const auto& c : cofactors_) v = std::min(v, (c - TruncatedSeries::one(monoid_, order_)).valuation());
        return v;
    }

    TruncatedSeries apply(const TruncatedSeries& s) const {
        std::vector<PowerCache> caches;
        for (const auto& c : cofactors_) caches.emplace_back(c);
        TruncatedSeries out(monoid_, std::min(order_, s.order_bound()));
        for (const auto& [mono, coeff] : s.terms()) {
            TruncatedSeries term = TruncatedSeries::monomial(monoid_, out.order_bound(), mono, coeff);
            for (int i = 0; i < monoid_.m_rank; ++i)
                if (mono.m(i) != 0) term = term * caches[i].get(mono.m(i));
            out += term;
        }
        return out;
    }

private:
    ExponentMonoid monoid_;
    int order_ = 0;
    std::vector<TruncatedSeries> cofactors_;
};

// (a o b)(z^{e_i}) = a(z^{e_i} u_i^b) = z^{e_i} u_i^a a(u_i^b)
inline RingAutomorphism compose(const RingAutomorphism& a, const RingAutomorphism& b) {
    if (!(a.monoid() == b.monoid())) fail("MonoidMismatch", "automorphisms over different monoids");
    std::vector<TruncatedSeries> u;
    for (int i = 0; i < a.monoid().m_rank; ++i) u.push_back(a.cofactor(i) * a.apply(b.cofactor(i)));
    return RingAutomorphism::from_cofactors(a.monoid(), std::min(a.order_bound(), b.order_bound()), std::move(u));
}

// theta(z^m) = f^{<n, r(m)>} z^m applied to a series, with powers of f cached by the caller.
inline TruncatedSeries apply_crossing(PowerCache& f_powers, const LatticeVector& normal, const TruncatedSeries& s) {
    TruncatedSeries out(s.shape(), s.order_bound());
    for (const auto& [mono, coeff] : s.terms()) {
        Int e = 0;
        for (int i = 0; i < mono.m_rank(); ++i) e += normal[i] * mono.m(i);
        TruncatedSeries term = TruncatedSeries::monomial(s.shape(), s.order_bound(), mono, coeff);
        if (e != 0) term = term * f_powers.get(e);
        out += term;
    }
    return out;
}

// Crossing automorphism of a wall with function f and oriented normal n (which must annihilate the
// wall's tangent space).
inline RingAutomorphism cross_wall(const TruncatedSeries& f, const LatticeVector& normal) {
    const auto& P = f.shape();
    PowerCache powers(f);
    std::vector<TruncatedSeries> u;
    for (int i = 0; i < P.m_rank; ++i) u.push_back(powers.get(normal.at(i)));
    return RingAutomorphism::from_cofactors(P, f.order_bound(), std::move(u));
}

// theta_wall o current, computed without forming theta_wall's cofactors separately.
inline RingAutomorphism cross_after(const RingAutomorphism& current, const TruncatedSeries& f, const LatticeVector& normal) {
    PowerCache powers(f.truncated(current.order_bound()));
    std::vector<TruncatedSeries> u;
    for (int i = 0; i < current.monoid().m_rank; ++i)
        u.push_back(powers.get(normal[i]) * apply_crossing(powers, normal, current.cofactor(i)));
    return RingAutomorphism::from_cofactors(current.monoid(), current.order_bound(), std::move(u));
}

struct LogTerm {
    PMonomial monomial;
    RatVector covector;  // n with theta = exp(sum c z^m d_n), the scalar c absorbed into n
};

using LogDerivationSum = std::vector<LogTerm>;

// Leading part of log(theta) when theta = id mod m^k: the order-k terms of the cofactors.
inline LogDerivationSum automorphism_log(const RingAutomorphism& theta, int k) {
    const auto& P = theta.monoid();
    if (theta.deviation_order() < k) fail("NotCloseToIdentity", "automorphism is not the identity below order " + std::to_string(k));
    std::map<PMonomial, RatVector> acc;
    for (int j = 0; j < P.m_rank; ++j)
        for (const auto& [mono, c] : theta.cofactor(j).terms()) {
            if (mono.order() != k) continue;
            auto& v = acc.try_emplace(mono, RatVector(P.m_rank)).first->second;
            v[j] = c;
        }
    LogDerivationSum out;
    for (const auto& [mono, n] : acc) {
        Rational pairing = 0;
        for (int i = 0; i < P.m_rank; ++i) pairing += n[i] * static_cast<long>(mono.m(i));
        if (sgn(pairing) != 0)
            fail("NonPerpendicularLog", "log term " + to_string(mono.m_part()) + " has <n, r(m)> != 0");
        out.push_back({mono, n});
    }
    return out;
}

// exp(D) for the derivation D = sum n z^m d_n, evaluated as sum_j D^j(z^{e_i}) / j!.
inline RingAutomorphism exp_derivation(const ExponentMonoid& P, int order, const LogDerivationSum& sum) {
    std::vector<TruncatedSeries> u;
    for (int i = 0; i < P.m_rank; ++i) {
        TruncatedSeries x = TruncatedSeries::monomial(P, order, z_power(P, unit_vector(P.m_rank, i)));
        TruncatedSeries total = x, power = x;
        mpz_class fact = 1;
        for (int j = 1; j <= order; ++j) {
            TruncatedSeries next(P, order);
            for (const auto& [mono, c] : power.terms())
                for (const auto& t : sum) {
                    Rational pairing = 0;
                    for (int a = 0; a < P.m_rank; ++a) pairing += t.covector[a] * static_cast<long>(mono.m(a));
                    if (sgn(pairing) != 0) next.add_term(mono * t.monomial, c * pairing);
                }
            power = next;
            if (power.is_zero()) break;
            fact *= j;
            total += power * Rational(mpz_class(1), fact);
        }
        u.push_back(TruncatedSeries::monomial(P, order, z_power(P, -unit_vector(P.m_rank, i))) * total);
    }
    return RingAutomorphism::from_cofactors(P, order, std::move(u));
}

}  // namespace wallcross
