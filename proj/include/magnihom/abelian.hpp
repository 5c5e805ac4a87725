#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "magnihom/rational.hpp"

namespace magnihom {

/// Finitely generated abelian group: free rank plus torsion coefficients
/// forming a divisibility chain t_1 | t_2 | ..., each > 1.
struct HomologyGroup {
    std::size_t rank = 0;
    std::vector<Int> torsion;

    bool is_zero() const { return rank == 0 && torsion.empty(); }

    friend bool operator==(const HomologyGroup& a, const HomologyGroup& b) {
        return a.rank == b.rank && a.torsion == b.torsion;
    }
    friend bool operator!=(const HomologyGroup& a, const HomologyGroup& b) { return !(a == b); }
};

namespace detail {

inline std::map<Int, std::vector<std::size_t>> prime_power_table(const std::vector<Int>& factors) {
    // prime -> exponents collected across all factors
    std::map<Int, std::vector<std::size_t>> table;
    for (Int f : factors) {
        if (f < 0) f = -f;
        for (Int p = 2; p * p <= f; ++p) {
            if (f % p != 0) continue;
            std::size_t e = 0;
            while (f % p == 0) {
                f /= p;
                ++e;
            }
            table[p].push_back(e);
        }
        if (f > 1) table[f].push_back(1);
    }
    return table;
}

}  // namespace detail

/// Renormalizes an arbitrary multiset of integers > 1 into the canonical
/// divisibility chain presenting the same group.  Torsion of a direct sum
/// is the reassembly of all prime-power components.
inline std::vector<Int> normalize_torsion(const std::vector<Int>& factors) {
    auto table = detail::prime_power_table(factors);
    std::size_t chain_len = 0;
    for (auto& [p, exps] : table) {
        std::sort(exps.begin(), exps.end(), std::greater<>());
        chain_len = std::max(chain_len, exps.size());
    }
    // slot 0 collects the largest exponent of each prime and becomes the
    // LAST invariant factor
    std::vector<Int> result(chain_len, Int(1));
    for (const auto& [p, exps] : table)
        for (std::size_t s = 0; s < exps.size(); ++s) {
            Int pw = 1;
            for (std::size_t e = 0; e < exps[s]; ++e) pw *= p;
            result[s] *= pw;
        }
    std::reverse(result.begin(), result.end());
    return result;
}

inline HomologyGroup direct_sum(const HomologyGroup& a, const HomologyGroup& b) {
    HomologyGroup out;
    out.rank = a.rank + b.rank;
    std::vector<Int> all = a.torsion;
    all.insert(all.end(), b.torsion.begin(), b.torsion.end());
    out.torsion = normalize_torsion(all);
    return out;
}

/// Builds the group presented by given ambient rank and relation invariant
/// factors: Z^(ambient - #nonzero factors) + sum of Z/f for factors > 1.
inline HomologyGroup group_from_presentation(std::size_t ambient_rank,
                                             const std::vector<Int>& relation_factors) {
    HomologyGroup g;
    g.rank = ambient_rank - relation_factors.size();
    std::vector<Int> tors;
    for (const Int& f : relation_factors)
        if (f > 1) tors.push_back(f);
    g.torsion = normalize_torsion(tors);
    return g;
}

}  // namespace magnihom
