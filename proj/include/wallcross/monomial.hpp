#pragma once

#include <array>
#include <cctype>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "lattice.hpp"
#include "series.hpp"

namespace wallcross {

constexpr int kMaxMRank = 4;
constexpr int kMaxTRank = 12;

// P = M + sum_i N^{s_i}; one t-block per blowup ray, one generator per component.
struct ExponentMonoid {
    int m_rank = 0;
    std::vector<int> t_blocks;

    ExponentMonoid() = default;
    ExponentMonoid(int m, std::vector<int> blocks) : m_rank(m), t_blocks(std::move(blocks)) {
        if (m_rank < 1 || m_rank > kMaxMRank) fail("ConfigError", "lattice rank must be between 1 and 4");
        for (int s : t_blocks)
            if (s < 1) fail("ConfigError", "t-blocks must have size at least 1");
        if (t_rank() > kMaxTRank) fail("ConfigError", "too many t-generators");
    }

    int t_rank() const { return std::accumulate(t_blocks.begin(), t_blocks.end(), 0); }

    // Position of t_{ij} in the flat t-vector.
    int t_index(int block, int component) const {
        int k = 0;
        for (int b = 0; b < block; ++b) k += t_blocks[b];
        return k + component;
    }
    int block_of(int t_index) const {
        for (std::size_t b = 0; b < t_blocks.size(); ++b) {
            if (t_index < t_blocks[b]) return static_cast<int>(b);
            t_index -= t_blocks[b];
        }
        fail("Internal", "t-index out of range");
    }

    friend bool operator==(const ExponentMonoid& a, const ExponentMonoid& b) {
        return a.m_rank == b.m_rank && a.t_blocks == b.t_blocks;
    }
};

class PMonomial {
public:
    using Shape = ExponentMonoid;

    PMonomial() = default;
    PMonomial(const LatticeVector& m, const std::vector<int>& t) : mr_(static_cast<std::uint8_t>(m.size())),
                                                                  tr_(static_cast<std::uint8_t>(t.size())) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] > INT32_MAX || m[i] < INT32_MIN) fail("Overflow", "monomial exponent too large");
            e_[i] = static_cast<std::int32_t>(m[i]);
        }
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] < 0) fail("Internal", "negative t-exponent");
            e_[kMaxMRank + i] = t[i];
        }
    }

    static PMonomial one(const ExponentMonoid& p) { return PMonomial(LatticeVector(p.m_rank, 0), std::vector<int>(p.t_rank(), 0)); }

    int m_rank() const { return mr_; }
    int t_rank() const { return tr_; }
    Int m(int i) const { return e_[i]; }
    int t(int i) const { return e_[kMaxMRank + i]; }

    LatticeVector m_part() const {
        LatticeVector v(mr_);
        for (int i = 0; i < mr_; ++i) v[i] = e_[i];
        return v;
    }
    std::vector<int> t_part() const {
        std::vector<int> v(tr_);
        for (int i = 0; i < tr_; ++i) v[i] = e_[kMaxMRank + i];
        return v;
    }

    int order() const {
        int s = 0;
        for (int i = 0; i < tr_; ++i) s += e_[kMaxMRank + i];
        return s;
    }

    friend PMonomial operator*(const PMonomial& a, const PMonomial& b) {
        PMonomial r = a;
        for (int i = 0; i < kMaxMRank + kMaxTRank; ++i) r.e_[i] += b.e_[i];
        return r;
    }

    // Lexicographic on (t-vector, m-vector).
    friend bool operator<(const PMonomial& a, const PMonomial& b) {
        for (int i = 0; i < kMaxTRank; ++i)
            if (a.e_[kMaxMRank + i] != b.e_[kMaxMRank + i]) return a.e_[kMaxMRank + i] < b.e_[kMaxMRank + i];
        for (int i = 0; i < kMaxMRank; ++i)
            if (a.e_[i] != b.e_[i]) return a.e_[i] < b.e_[i];
        return false;
    }
    friend bool operator==(const PMonomial& a, const PMonomial& b) { return a.e_ == b.e_; }

private:
    std::array<std::int32_t, kMaxMRank + kMaxTRank> e_{};
    std::uint8_t mr_ = 0, tr_ = 0;
};

using TruncatedSeries = BasicSeries<PMonomial>;

// r: P -> M
inline LatticeVector r_image(const PMonomial& p) { return p.m_part(); }

inline PMonomial z_power(const ExponentMonoid& p, const LatticeVector& m) {
    return PMonomial(m, std::vector<int>(p.t_rank(), 0));
}

// Splits f = prod_m f_m, each f_m supported on monomials with r-image in R>0 m (m primitive),
// or with r-image zero for m = 0, building the factors order by order.
inline std::map<LatticeVector, TruncatedSeries> factor_by_direction(const TruncatedSeries& f) {
    if (f.constant_term() != 1 || !f.order_zero_is_constant())
        fail("BadConstantTerm", "factorization requires constant term 1");
    const auto& P = f.shape();
    const int K = f.order_bound();
    std::map<LatticeVector, TruncatedSeries> factors;
    for (int k = 1; k <= K; ++k) {
        TruncatedSeries prod = TruncatedSeries::one(P, k);
        for (const auto& [d, g] : factors) prod = prod * g.truncated(k);
        TruncatedSeries diff = f.truncated(k) - prod;
        for (const auto& [mono, c] : diff.terms()) {
            if (mono.order() != k) fail("Internal", "factorization residue below the current order");
            LatticeVector d = primitive(r_image(mono));
            auto it = factors.find(d);
            if (it == factors.end()) it = factors.emplace(d, TruncatedSeries::one(P, K)).first;
            it->second.add_term(mono, c);
        }
    }
    for (auto it = factors.begin(); it != factors.end();)
        it = it->second.is_one() ? factors.erase(it) : std::next(it);
    return factors;
}

// Display names for the M basis and the t-generators.
struct VariableNames {
    std::vector<std::string> m;
    std::vector<std::string> t;

    static VariableNames defaults(const ExponentMonoid& p) {
        VariableNames v;
        const char* base[] = {"x", "y", "z", "w"};
        for (int i = 0; i < p.m_rank; ++i) v.m.push_back(base[i]);
        bool singletons = std::all_of(p.t_blocks.begin(), p.t_blocks.end(), [](int s) { return s == 1; });
        for (std::size_t b = 0; b < p.t_blocks.size(); ++b)
            for (int j = 0; j < p.t_blocks[b]; ++j)
                v.t.push_back(singletons ? "t" + std::to_string(b + 1) : "t" + std::to_string(b + 1) + "_" + std::to_string(j + 1));
        return v;
    }
};

namespace detail {

inline std::string power_string(const std::string& var, Int e) {
    if (e == 1) return var;
    return var + "^" + std::to_string(e);
}

// Joins "coefficient*body" terms as "a + b - c".
inline std::string join_terms(const std::vector<std::pair<Rational, std::string>>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [c, body] : terms) {
        Rational a = abs(c);
        std::string piece;
        if (body.empty())
            piece = a.get_str();
        else if (a == 1)
            piece = body;
        else
            piece = a.get_str() + "*" + body;
        if (first)
            out += (sgn(c) < 0 ? "-" : "") + piece;
        else
            out += (sgn(c) < 0 ? " - " : " + ") + piece;
        first = false;
    }
    return out;
}

}  // namespace detail

inline std::string monomial_body(const PMonomial& mono, const VariableNames& names) {
    std::string s;
    auto append = [&](const std::string& piece) { s += (s.empty() ? "" : "*") + piece; };
    for (int i = 0; i < mono.t_rank(); ++i)
        if (mono.t(i) != 0) append(detail::power_string(names.t.at(i), mono.t(i)));
    for (int i = 0; i < mono.m_rank(); ++i)
        if (mono.m(i) != 0) append(detail::power_string(names.m.at(i), mono.m(i)));
    return s;
}

inline std::string render(const TruncatedSeries& f, const VariableNames& names) {
    std::vector<std::pair<Rational, std::string>> terms;
    for (const auto& [m, c] : f.terms()) terms.emplace_back(c, monomial_body(m, names));
    return detail::join_terms(terms);
}

inline std::string render(const TruncatedSeries& f) { return render(f, VariableNames::defaults(f.shape())); }

// Parses expressions such as "1 + t2*y - 1/2*t1^2*x^2*y^-1".
inline TruncatedSeries parse_series(const std::string& text, const ExponentMonoid& p, int order,
                                    const VariableNames& names) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto error = [&](const std::string& what) -> void {
        fail("ParseError", what + " at position " + std::to_string(pos) + " in \"" + text + "\"");
    };
    auto read_int = [&]() -> Int {
        skip();
        bool neg = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) error("expected integer");
        Int v = std::stoll(text.substr(start, pos - start));
        return neg ? -v : v;
    };
    TruncatedSeries result(p, order);
    skip();
    bool first = true;
    while (pos < text.size()) {
        int sign = 1;
        skip();
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            error("expected + or -");
        }
        first = false;
        Rational coeff(sign);
        LatticeVector m(p.m_rank, 0);
        std::vector<int> t(p.t_rank(), 0);
        for (;;) {
            skip();
            if (pos >= text.size()) error("unexpected end of input");
            if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
                Int num = read_int();
                Int den = 1;
                skip();
                if (pos < text.size() && text[pos] == '/') {
                    ++pos;
                    den = read_int();
                    if (den == 0) error("zero denominator");
                }
                coeff *= make_rational(num, den);
            } else if (std::isalpha(static_cast<unsigned char>(text[pos]))) {
                std::size_t start = pos;
                while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
                std::string var = text.substr(start, pos - start);
                Int e = 1;
                skip();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    e = read_int();
                }
                bool found = false;
                for (std::size_t i = 0; i < names.m.size() && !found; ++i)
                    if (names.m[i] == var) {
                        m[i] += e;
                        found = true;
                    }
                for (std::size_t i = 0; i < names.t.size() && !found; ++i)
                    if (names.t[i] == var) {
                        if (e < 0) error("negative power of " + var);
                        t[i] += static_cast<int>(e);
                        found = true;
                    }
                if (!found) error("unknown variable " + var);
            } else {
                error("unexpected character");
            }
            skip();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        result.add_term(PMonomial(m, t), coeff);
        skip();
    }
    return result;
}

inline TruncatedSeries parse_series(const std::string& text, const ExponentMonoid& p, int order) {
    return parse_series(text, p, order, VariableNames::defaults(p));
}

}  // namespace wallcross
