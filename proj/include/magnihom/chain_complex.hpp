#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "magnihom/abelian.hpp"
#include "magnihom/matrix.hpp"
#include "magnihom/metric_space.hpp"

namespace magnihom {

/// The set P^l_n(a,b) of proper n-chains of length l from a to b, sorted in
/// the canonical (lexicographic) order so it can serve as an ordered basis
/// of the free abelian group C^l_n(a,b).
struct ChainBasis {
    std::size_t degree = 0;
    Rational length;
    PointId a = 0, b = 0;
    std::vector<Chain> chains;

    std::size_t size() const { return chains.size(); }

    /// Index of a chain in the basis; nullopt when absent.
    std::optional<std::size_t> index_of(const Chain& c) const {
        auto it = std::lower_bound(chains.begin(), chains.end(), c);
        if (it == chains.end() || !(*it == c)) return std::nullopt;
        return static_cast<std::size_t>(it - chains.begin());
    }
};

/// Integer linear combination of chains; zero coefficients are never stored.
struct FormalSum {
    std::map<Chain, Int> coefficients;

    void add(const Chain& c, const Int& k) {
        if (k == 0) return;
        auto [it, inserted] = coefficients.try_emplace(c, k);
        if (!inserted) {
            it->second += k;
            if (it->second == 0) coefficients.erase(it);
        }
    }

    bool empty() const { return coefficients.empty(); }

    friend bool operator==(const FormalSum& x, const FormalSum& y) {
        return x.coefficients == y.coefficients;
    }
};

/// All proper n-chains of length exactly l from a to b, in canonical order.
/// Depth-first extension from a toward b; a prefix is abandoned as soon as
/// its accumulated length plus d(current, b) exceeds l.
inline ChainBasis enumerate_chains(const FiniteMetricSpace& m, std::size_t n,
                                   const Rational& length, PointId a, PointId b) {
    ChainBasis basis;
    basis.degree = n;
    basis.length = length;
    basis.a = a;
    basis.b = b;
    if (length < 0) return basis;

    if (n == 0) {
        if (a == b && length == 0) basis.chains.push_back(Chain{a});
        return basis;
    }

    std::vector<PointId> prefix{a};
    Rational acc = 0;
    auto extend = [&](auto&& self) -> void {
        const PointId last = prefix.back();
        if (prefix.size() == n) {  // next point must be b
            if (last != b && acc + m.distance(last, b) == length) {
                prefix.push_back(b);
                basis.chains.push_back(Chain{prefix});
                prefix.pop_back();
            }
            return;
        }
        for (PointId x = 0; x < m.size(); ++x) {
            if (x == last) continue;
            const Rational step = m.distance(last, x);
            if (acc + step + m.distance(x, b) > length) continue;
            prefix.push_back(x);
            acc += step;
            self(self);
            acc -= step;
            prefix.pop_back();
        }
    };
    extend(extend);
    std::sort(basis.chains.begin(), basis.chains.end());
    return basis;
}

/// Every length l with P^l_n(a,b) nonempty, sorted ascending.
inline std::vector<Rational> length_spectrum(const FiniteMetricSpace& m, std::size_t n,
                                             PointId a, PointId b) {
    std::set<Rational> lengths;
    if (n == 0) {
        if (a == b) lengths.insert(Rational(0));
        return {lengths.begin(), lengths.end()};
    }
    std::vector<PointId> prefix{a};
    Rational acc = 0;
    auto extend = [&](auto&& self) -> void {
        const PointId last = prefix.back();
        if (prefix.size() == n) {
            if (last != b) lengths.insert(acc + m.distance(last, b));
            return;
        }
        for (PointId x = 0; x < m.size(); ++x) {
            if (x == last) continue;
            acc += m.distance(last, x);
            prefix.push_back(x);
            self(self);
            prefix.pop_back();
            acc -= m.distance(prefix.back(), x);
        }
    };
    extend(extend);
    return {lengths.begin(), lengths.end()};
}

/// Boundary of one chain: sum over smooth interior positions i of
/// (-1)^i times the chain with point i removed.
template <class Space>
FormalSum boundary(const Space& m, const Chain& c, const Int& coeff = 1) {
    FormalSum out;
    for (std::size_t i = 1; i + 1 < c.points.size(); ++i) {
        if (!between(m, c.points[i - 1], c.points[i], c.points[i + 1])) continue;
        out.add(c.face(i), (i % 2 == 0) ? coeff : -coeff);
    }
    return out;
}

template <class Space>
FormalSum boundary(const Space& m, const FormalSum& s) {
    FormalSum out;
    for (const auto& [c, k] : s.coefficients)
        for (const auto& [f, kk] : boundary(m, c, k).coefficients) out.add(f, kk);
    return out;
}

/// Matrix of the boundary operator from basis_n to basis_nm1.  Column j
/// expands the boundary of the j-th chain of basis_n.
inline IntMatrix boundary_matrix(const FiniteMetricSpace& m, const ChainBasis& basis_n,
                                 const ChainBasis& basis_nm1) {
    if (basis_n.length != basis_nm1.length || basis_n.a != basis_nm1.a ||
        basis_n.b != basis_nm1.b || basis_n.degree != basis_nm1.degree + 1)
        throw std::invalid_argument("boundary_matrix: incompatible bases");
    IntMatrix out(basis_nm1.size(), basis_n.size());
    for (std::size_t j = 0; j < basis_n.size(); ++j) {
        const FormalSum db = boundary(m, basis_n.chains[j]);
        for (const auto& [face, k] : db.coefficients) {
            auto row = basis_nm1.index_of(face);
            if (!row)
                throw std::logic_error("boundary_matrix: face missing from codomain basis");
            out.at(*row, j) = k;
        }
    }
    return out;
}

/// Homology of one (n, l, a, b) summand plus the dimensions that go into it.
struct HomologySummand {
    HomologyGroup group;
    std::size_t dim_chains = 0;      // |P^l_n(a,b)|
    std::size_t dim_boundaries = 0;  // rank of the boundary from degree n+1
};

/// H^l_n(a,b) = ker(d_n) / im(d_{n+1}), computed by Smith normal form.
inline HomologySummand homology(const FiniteMetricSpace& m, std::size_t n,
                                const Rational& length, PointId a, PointId b) {
    HomologySummand out;
    const ChainBasis basis_n = enumerate_chains(m, n, length, a, b);
    out.dim_chains = basis_n.size();
    if (basis_n.size() == 0) return out;

    std::size_t rank_dn = 0;
    if (n >= 1) {
        const ChainBasis below = enumerate_chains(m, n - 1, length, a, b);
        if (below.size() > 0) rank_dn = matrix_rank(boundary_matrix(m, basis_n, below));
    }
    const ChainBasis above = enumerate_chains(m, n + 1, length, a, b);
    std::vector<Int> factors;
    if (above.size() > 0) {
        const SmithResult s = smith_normal_form(boundary_matrix(m, above, basis_n));
        factors = s.invariant_factors;
    }
    out.dim_boundaries = factors.size();
    out.group.rank = basis_n.size() - rank_dn - factors.size();
    for (const Int& f : factors)
        if (f > 1) out.group.torsion.push_back(f);
    out.group.torsion = normalize_torsion(out.group.torsion);
    return out;
}

/// H^l_n(X): direct sum over all ordered endpoint pairs.
inline HomologyGroup homology_total(const FiniteMetricSpace& m, std::size_t n,
                                    const Rational& length) {
    HomologyGroup total;
    for (PointId a = 0; a < m.size(); ++a)
        for (PointId b = 0; b < m.size(); ++b)
            total = direct_sum(total, homology(m, n, length, a, b).group);
    return total;
}

}  // namespace magnihom
