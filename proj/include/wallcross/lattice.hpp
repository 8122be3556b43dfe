#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace wallcross {

using Int = std::int64_t;
using LatticeVector = std::vector<Int>;
using IntMatrix = std::vector<LatticeVector>;  // row-major, rows are vectors
using RatVector = std::vector<Rational>;

inline Int add_checked(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) fail("Overflow", "integer addition overflow");
    return r;
}

inline Int mul_checked(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) fail("Overflow", "integer multiplication overflow");
    return r;
}

inline Int gcd_of(const LatticeVector& v) {
    Int g = 0;
    for (Int x : v) g = std::gcd(g, x);
    return g;
}

inline bool is_zero(const LatticeVector& v) {
    return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
}

inline LatticeVector primitive(LatticeVector v) {
    Int g = gcd_of(v);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

inline bool is_primitive(const LatticeVector& v) { return gcd_of(v) == 1; }

inline Int dot(const LatticeVector& a, const LatticeVector& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = add_checked(s, mul_checked(a[i], b[i]));
    return s;
}

inline LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
    LatticeVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = add_checked(a[i], b[i]);
    return r;
}

inline LatticeVector operator-(const LatticeVector& a) {
    LatticeVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) { return a + (-b); }

inline LatticeVector operator*(Int c, const LatticeVector& a) {
    LatticeVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul_checked(c, a[i]);
    return r;
}

inline LatticeVector unit_vector(int n, int i) {
    LatticeVector e(n, 0);
    e[i] = 1;
    return e;
}

inline IntMatrix identity_matrix(int n) {
    IntMatrix m;
    for (int i = 0; i < n; ++i) m.push_back(unit_vector(n, i));
    return m;
}

inline std::string to_string(const LatticeVector& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

// Clears denominators and divides by the content.
inline LatticeVector primitive_integer(const RatVector& v) {
    mpz_class l = 1;
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> z;
    mpz_class g = 0;
    for (const auto& q : v) {
        mpz_class a = q.get_num() * (l / q.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
        z.push_back(a);
    }
    LatticeVector out;
    for (auto& a : z) {
        if (g != 0) a /= g;
        if (!a.fits_slong_p()) fail("Overflow", "lattice coordinate exceeds 64 bits");
        out.push_back(a.get_si());
    }
    return out;
}

namespace detail {

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<RatVector>& a, std::size_t ncols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
        std::size_t p = row;
        while (p < a.size() && sgn(a[p][col]) == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        Rational inv = 1 / a[row][col];
        for (auto& x : a[row]) x *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || sgn(a[r][col]) == 0) continue;
            Rational f = a[r][col];
            for (std::size_t c = col; c < ncols; ++c) a[r][c] -= f * a[row][c];
        }
        pivots.push_back(col);
        ++row;
    }
    a.resize(row);
    return pivots;
}

inline std::vector<RatVector> to_rational(const IntMatrix& m, std::size_t n) {
    std::vector<RatVector> r;
    for (const auto& row : m) {
        RatVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = Rational(static_cast<long>(row[i]));
        r.push_back(std::move(v));
    }
    return r;
}

}  // namespace detail

inline int rank_of(const IntMatrix& rows, std::size_t n) {
    auto a = detail::to_rational(rows, n);
    return static_cast<int>(detail::rref(a, n).size());
}

// Rational basis of {x : rows . x = 0}.
inline std::vector<RatVector> rational_nullspace(const std::vector<RatVector>& rows, std::size_t n) {
    auto a = rows;
    auto pivots = detail::rref(a, n);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RatVector v(n);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

inline std::vector<RatVector> rational_nullspace(const IntMatrix& rows, std::size_t n) {
    return rational_nullspace(detail::to_rational(rows, n), n);
}

// Solves x . basis = v for x when v lies in the row span; returns false otherwise.
inline bool solve_in_span(const IntMatrix& basis, const LatticeVector& v, RatVector& x) {
    std::size_t k = basis.size(), n = v.size();
    std::vector<RatVector> aug(n, RatVector(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) aug[i][j] = Rational(static_cast<long>(basis[j][i]));
        aug[i][k] = Rational(static_cast<long>(v[i]));
    }
    auto pivots = detail::rref(aug, k + 1);
    if (!pivots.empty() && pivots.back() == k) return false;
    x.assign(k, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][k];
    return true;
}

inline Rational determinant(const IntMatrix& m) {
    std::size_t n = m.size();
    auto a = detail::to_rational(m, n);
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(a[p][c]) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (sgn(a[r][c]) == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

inline IntMatrix inverse_unimodular(const IntMatrix& m) {
    std::size_t n = m.size();
    std::vector<RatVector> a(n, RatVector(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(static_cast<long>(m[i][j]));
        a[i][n + i] = 1;
    }
    detail::rref(a, 2 * n);
    IntMatrix inv(n, LatticeVector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& q = a[i][n + j];
            if (q.get_den() != 1) fail("Internal", "matrix is not unimodular");
            inv[i][j] = q.get_num().get_si();
        }
    return inv;
}

struct SmithForm {
    IntMatrix d;  // m x n diagonal
    IntMatrix u;  // m x m unimodular
    IntMatrix v;  // n x n unimodular, with u * a * v = d
    std::size_t rank = 0;
};

// Smith normal form by alternating row and column reduction.
inline SmithForm smith_form(const IntMatrix& a, std::size_t n) {
    std::size_t m = a.size();
    SmithForm s;
    s.d = a;
    s.u = identity_matrix(static_cast<int>(m));
    s.v = identity_matrix(static_cast<int>(n));
    auto& d = s.d;
    auto row_op = [&](std::size_t i, std::size_t j, Int c) {  // row_i += c row_j
        for (std::size_t k = 0; k < n; ++k) d[i][k] = add_checked(d[i][k], mul_checked(c, d[j][k]));
        for (std::size_t k = 0; k < m; ++k) s.u[i][k] = add_checked(s.u[i][k], mul_checked(c, s.u[j][k]));
    };
    auto col_op = [&](std::size_t i, std::size_t j, Int c) {  // col_i += c col_j
        for (std::size_t k = 0; k < m; ++k) d[k][i] = add_checked(d[k][i], mul_checked(c, d[k][j]));
        for (std::size_t k = 0; k < n; ++k) s.v[k][i] = add_checked(s.v[k][i], mul_checked(c, s.v[k][j]));
    };
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(d[i], d[j]);
        std::swap(s.u[i], s.u[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < m; ++k) std::swap(d[k][i], d[k][j]);
        for (std::size_t k = 0; k < n; ++k) std::swap(s.v[k][i], s.v[k][j]);
    };
    auto negate_row = [&](std::size_t i) {
        for (auto& x : d[i]) x = -x;
        for (auto& x : s.u[i]) x = -x;
    };

    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        // pick the smallest nonzero entry in the remaining block as pivot
        bool found = false;
        std::size_t pr = 0, pc = 0;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (d[i][j] != 0 && (!found || std::abs(d[i][j]) < std::abs(d[pr][pc]))) {
                    found = true;
                    pr = i;
                    pc = j;
                }
        if (!found) break;
        swap_rows(t, pr);
        swap_cols(t, pc);
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d[i][t] == 0) continue;
                Int q = d[i][t] / d[t][t];
                row_op(i, t, -q);
                if (d[i][t] != 0) {
                    swap_rows(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d[t][j] == 0) continue;
                Int q = d[t][j] / d[t][t];
                col_op(j, t, -q);
                if (d[t][j] != 0) {
                    swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            // divisibility condition on the remaining block
            bool fixed = true;
            for (std::size_t i = t + 1; i < m && fixed; ++i)
                for (std::size_t j = t + 1; j < n && fixed; ++j)
                    if (d[i][j] % d[t][t] != 0) {
                        row_op(t, i, 1);
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (d[t][t] < 0) negate_row(t);
    }
    s.rank = t;
    return s;
}

// Row-style Hermite normal form of the lattice spanned by the rows; zero rows dropped.
inline IntMatrix hermite_form(IntMatrix a, std::size_t n) {
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < a.size(); ++col) {
        for (;;) {
            std::size_t p = a.size();
            for (std::size_t r = row; r < a.size(); ++r)
                if (a[r][col] != 0 && (p == a.size() || std::abs(a[r][col]) < std::abs(a[p][col]))) p = r;
            if (p == a.size()) break;
            std::swap(a[p], a[row]);
            bool done = true;
            for (std::size_t r = row + 1; r < a.size(); ++r) {
                if (a[r][col] == 0) continue;
                Int q = a[r][col] / a[row][col];
                a[r] = a[r] - q * a[row];
                if (a[r][col] != 0) done = false;
            }
            if (done) break;
        }
        if (row >= a.size() || a[row][col] == 0) continue;
        if (a[row][col] < 0) a[row] = -a[row];
        for (std::size_t r = 0; r < row; ++r) {
            Int q = a[r][col] / a[row][col];
            if (a[r][col] - q * a[row][col] < 0) --q;
            if (q != 0) a[r] = a[r] - q * a[row];
        }
        ++row;
    }
    a.resize(row);
    return a;
}

// Z-basis (Hermite form) of {x in Z^n : rows . x = 0}.
inline IntMatrix integer_kernel(const IntMatrix& rows, std::size_t n) {
    if (rows.empty()) return identity_matrix(static_cast<int>(n));
    auto s = smith_form(rows, n);
    IntMatrix basis;
    for (std::size_t j = s.rank; j < n; ++j) {
        LatticeVector col(n);
        for (std::size_t k = 0; k < n; ++k) col[k] = s.v[k][j];
        basis.push_back(col);
    }
    return hermite_form(basis, n);
}

// Z-basis of (Q-span of rows) intersected with Z^n.
inline IntMatrix saturation(const IntMatrix& rows, std::size_t n) {
    IntMatrix nonzero;
    for (const auto& r : rows)
        if (!is_zero(r)) nonzero.push_back(r);
    if (nonzero.empty()) return {};
    auto k = integer_kernel(nonzero, n);
    if (k.empty()) return identity_matrix(static_cast<int>(n));
    return integer_kernel(k, n);
}

// Index of the lattice spanned by the rows inside its saturation.
inline Int torsion_index(const IntMatrix& rows, std::size_t n) {
    if (rows.empty()) return 1;
    auto s = smith_form(rows, n);
    Int prod = 1;
    for (std::size_t i = 0; i < s.rank; ++i) prod = mul_checked(prod, s.d[i][i]);
    return prod;
}

// Splitting Z^n = L + complement for a saturated sublattice L, used for quotient maps M -> M/L.
class QuotientChart {
public:
    QuotientChart() = default;

    QuotientChart(const IntMatrix& sublattice, std::size_t n) : n_(n) {
        auto sat = saturation(sublattice, n);
        r_ = sat.size();
        if (r_ == 0) {
            v_ = identity_matrix(static_cast<int>(n));
        } else {
            v_ = smith_form(sat, n).v;
        }
        vinv_ = inverse_unimodular(v_);
    }

    std::size_t ambient_rank() const { return n_; }
    std::size_t sub_rank() const { return r_; }
    std::size_t quotient_rank() const { return n_ - r_; }

    LatticeVector project(const LatticeVector& m) const {
        LatticeVector q(n_ - r_, 0);
        for (std::size_t k = r_; k < n_; ++k)
            for (std::size_t i = 0; i < n_; ++i) q[k - r_] = add_checked(q[k - r_], mul_checked(m[i], v_[i][k]));
        return q;
    }

    // Covector on M that restricts to the given covector on M/L.
    LatticeVector lift_covector(const LatticeVector& nu) const {
        LatticeVector n(n_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t k = 0; k < nu.size(); ++k) n[i] = add_checked(n[i], mul_checked(v_[i][r_ + k], nu[k]));
        return n;
    }

    LatticeVector section(const LatticeVector& q) const {
        LatticeVector m(n_, 0);
        for (std::size_t k = 0; k < q.size(); ++k) m = m + q[k] * vinv_[r_ + k];
        return m;
    }

    // Swaps two quotient coordinates, reversing the quotient orientation.
    void swap_quotient_axes(std::size_t a, std::size_t b) {
        for (std::size_t i = 0; i < n_; ++i) std::swap(v_[i][r_ + a], v_[i][r_ + b]);
        std::swap(vinv_[r_ + a], vinv_[r_ + b]);
    }

private:
    std::size_t n_ = 0, r_ = 0;
    IntMatrix v_, vinv_;
};

}  // namespace wallcross
