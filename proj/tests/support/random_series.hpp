#pragma once

#include <random>

#include "wallcross/series.hpp"
#include "wallcross/monomial.hpp"

namespace fixtures {

// 1 + a few random terms of positive t-order over a rank 2 or 3 lattice with two t-generators.
inline wallcross::TruncatedSeries random_unit(std::mt19937& rng, int max_order = 5) {
    using namespace wallcross;
    int n = 2 + static_cast<int>(rng() % 2);
    int order = 1 + static_cast<int>(rng() % max_order);
    ExponentMonoid P(n, {1, 1});
    auto f = TruncatedSeries::one(P, order);
    int terms = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < terms; ++i) {
        std::vector<int> t(2);
        do {
            t[0] = static_cast<int>(rng() % 3);
            t[1] = static_cast<int>(rng() % 3);
        } while (t[0] + t[1] == 0 || t[0] + t[1] > order);
        LatticeVector m(n);
        for (auto& v : m) v = static_cast<Int>(rng() % 5) - 2;
        long num = static_cast<long>(rng() % 7) - 3;
        long den = 1 + static_cast<long>(rng() % 3);
        f.add_term(PMonomial(m, t), make_rational(num, den));
    }
    return f;
}

}  // namespace fixtures
