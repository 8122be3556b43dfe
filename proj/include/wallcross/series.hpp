#pragma once

#include <map>
#include <utility>

#include "errors.hpp"
#include "rational.hpp"

namespace wallcross {

// Sparse truncated series over a graded monomial type. Mono must provide
//   typename Mono::Shape, static Mono one(const Shape&), int order() const,
//   Mono operator*(const Mono&, const Mono&), operator<, operator==.
template <class Mono>
class BasicSeries {
public:
    using Shape = typename Mono::Shape;
    using TermMap = std::map<Mono, Rational>;

    BasicSeries() = default;
    BasicSeries(Shape shape, int order_bound) : shape_(std::move(shape)), order_(order_bound) {}

    static BasicSeries constant(const Shape& shape, int order_bound, const Rational& c) {
        BasicSeries s(shape, order_bound);
        s.add_term(Mono::one(shape), c);
        return s;
    }
    static BasicSeries one(const Shape& shape, int order_bound) { return constant(shape, order_bound, 1); }
    static BasicSeries monomial(const Shape& shape, int order_bound, const Mono& m, const Rational& c = 1) {
        BasicSeries s(shape, order_bound);
        s.add_term(m, c);
        return s;
    }

    const Shape& shape() const { return shape_; }
    int order_bound() const { return order_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_one() const {
        if (terms_.size() != 1) return false;
        const auto& [m, c] = *terms_.begin();
        return m == Mono::one(shape_) && c == 1;
    }

    Rational coefficient(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Mono& m, const Rational& c) {
        if (m.order() > order_ || sgn(c) == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    // Lowest order of a stored term, or order_bound + 1 for the zero series.
    int valuation() const {
        int v = order_ + 1;
        for (const auto& [m, c] : terms_) v = std::min(v, m.order());
        return v;
    }

    BasicSeries truncated(int k) const {
        BasicSeries s(shape_, std::min(k, order_));
        for (const auto& [m, c] : terms_)
            if (m.order() <= s.order_) s.terms_.emplace(m, c);
        return s;
    }

    // Same terms, reinterpreted with order bound k (terms above k dropped).
    BasicSeries rebound(int k) const {
        BasicSeries s(shape_, k);
        for (const auto& [m, c] : terms_)
            if (m.order() <= k) s.terms_.emplace(m, c);
        return s;
    }

    // Terms of exactly the given order.
    BasicSeries homogeneous_part(int k) const {
        BasicSeries s(shape_, order_);
        for (const auto& [m, c] : terms_)
            if (m.order() == k) s.terms_.emplace(m, c);
        return s;
    }

    BasicSeries& operator+=(const BasicSeries& o) {
        check(o);
        if (o.order_ < order_) *this = truncated(o.order_);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    BasicSeries& operator-=(const BasicSeries& o) {
        check(o);
        if (o.order_ < order_) *this = truncated(o.order_);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    BasicSeries& operator*=(const Rational& q) {
        if (sgn(q) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= q;
        return *this;
    }

    friend BasicSeries operator+(BasicSeries a, const BasicSeries& b) { return a += b; }
    friend BasicSeries operator-(BasicSeries a, const BasicSeries& b) { return a -= b; }
    friend BasicSeries operator-(BasicSeries a) { return a *= Rational(-1); }
    friend BasicSeries operator*(BasicSeries a, const Rational& q) { return a *= q; }
    friend BasicSeries operator*(const Rational& q, BasicSeries a) { return a *= q; }

    friend BasicSeries operator*(const BasicSeries& a, const BasicSeries& b) {
        a.check(b);
        BasicSeries r(a.shape_, std::min(a.order_, b.order_));
        for (const auto& [ma, ca] : a.terms_) {
            int oa = ma.order();
            if (oa > r.order_) continue;
            for (const auto& [mb, cb] : b.terms_) {
                if (oa + mb.order() > r.order_) continue;
                r.add_term(ma * mb, ca * cb);
            }
        }
        return r;
    }
    BasicSeries& operator*=(const BasicSeries& o) { return *this = *this * o; }

    friend bool operator==(const BasicSeries& a, const BasicSeries& b) {
        return a.shape_ == b.shape_ && a.order_ == b.order_ && a.terms_ == b.terms_;
    }

    // Equality of the truncations at the smaller order bound.
    bool agrees_with(const BasicSeries& o) const {
        int k = std::min(order_, o.order_);
        return truncated(k).terms_ == o.truncated(k).terms_;
    }

    // The order-zero part, the constant coefficient, and whether the order-zero part is that constant.
    Rational constant_term() const { return coefficient(Mono::one(shape_)); }
    bool order_zero_is_constant() const {
        for (const auto& [m, c] : terms_)
            if (m.order() == 0 && !(m == Mono::one(shape_))) return false;
        return true;
    }

private:
    void check(const BasicSeries& o) const {
        if (!(shape_ == o.shape_)) fail("MonoidMismatch", "series over different monoids");
    }

    Shape shape_{};
    int order_ = 0;
    TermMap terms_;
};

template <class Mono>
BasicSeries<Mono> inverse(const BasicSeries<Mono>& f) {
    Rational c = f.constant_term();
    if (sgn(c) == 0 || !f.order_zero_is_constant()) fail("NotAUnit", "series is not a unit");
    using S = BasicSeries<Mono>;
    S g = f * (1 / c) - S::one(f.shape(), f.order_bound());  // nilpotent
    S result = S::one(f.shape(), f.order_bound());
    S power = result;
    S neg_g = -g;
    for (int j = 1; j <= f.order_bound(); ++j) {
        power = power * neg_g;
        if (power.is_zero()) break;
        result += power;
    }
    return result * (1 / c);
}

template <class Mono>
BasicSeries<Mono> log_unit(const BasicSeries<Mono>& f) {
    if (f.constant_term() != 1 || !f.order_zero_is_constant())
        fail("BadConstantTerm", "log requires constant term 1");
    using S = BasicSeries<Mono>;
    S g = f - S::one(f.shape(), f.order_bound());
    S result(f.shape(), f.order_bound());
    S power = S::one(f.shape(), f.order_bound());
    for (int j = 1; j <= f.order_bound(); ++j) {
        power = power * g;
        if (power.is_zero()) break;
        result += power * Rational(j % 2 == 1 ? 1 : -1, j);
    }
    return result;
}

template <class Mono>
BasicSeries<Mono> exp_nilpotent(const BasicSeries<Mono>& g) {
    for (const auto& [m, c] : g.terms())
        if (m.order() == 0) fail("BadConstantTerm", "exp requires a series without order-zero terms");
    using S = BasicSeries<Mono>;
    S result = S::one(g.shape(), g.order_bound());
    S power = result;
    mpz_class fact = 1;
    for (int j = 1; j <= g.order_bound(); ++j) {
        power = power * g;
        if (power.is_zero()) break;
        fact *= j;
        result += power * Rational(mpz_class(1), fact);
    }
    return result;
}

template <class Mono>
BasicSeries<Mono> pow(const BasicSeries<Mono>& f, long e) {
    using S = BasicSeries<Mono>;
    if (e < 0) return pow(inverse(f), -e);
    S result = S::one(f.shape(), f.order_bound());
    S base = f;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

}  // namespace wallcross
