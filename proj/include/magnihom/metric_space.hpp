#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "magnihom/rational.hpp"

namespace magnihom {

/// Index of a point in a FiniteMetricSpace.
using PointId = std::size_t;

/// A chain is a finite sequence of points <x_0, ..., x_n>; a chain with
/// n+1 entries has degree n.  It is proper when adjacent entries differ.
struct Chain {
    std::vector<PointId> points;

    Chain() = default;
    Chain(std::initializer_list<PointId> pts) : points(pts) {}
    explicit Chain(std::vector<PointId> pts) : points(std::move(pts)) {}

    std::size_t degree() const { return points.size() - 1; }
    PointId front() const { return points.front(); }
    PointId back() const { return points.back(); }

    bool proper() const {
        for (std::size_t i = 1; i < points.size(); ++i)
            if (points[i] == points[i - 1]) return false;
        return !points.empty();
    }

    /// Chain with entry at position i removed.
    Chain face(std::size_t i) const {
        Chain c(*this);
        c.points.erase(c.points.begin() + static_cast<std::ptrdiff_t>(i));
        return c;
    }

    friend bool operator==(const Chain& a, const Chain& b) { return a.points == b.points; }
    friend bool operator!=(const Chain& a, const Chain& b) { return !(a == b); }
    /// Canonical order: lexicographic by point index.
    friend bool operator<(const Chain& a, const Chain& b) { return a.points < b.points; }
};

/// A finite metric space with exact rational distances.
struct FiniteMetricSpace {
    std::vector<std::string> labels;
    std::vector<std::vector<Rational>> dist;

    std::size_t size() const { return dist.size(); }
    const Rational& distance(PointId i, PointId j) const { return dist[i][j]; }
};

/// Outcome of checking the metric axioms on a candidate distance matrix.
struct MetricValidation {
    bool ok = true;
    std::string reason;      // empty when ok
    PointId i = 0, j = 0, k = 0;  // witnesses of the first violation
};

/// Checks squareness, zero diagonal, symmetry, positivity off the diagonal,
/// and the triangle inequality; returns the first violated axiom.
inline MetricValidation validate_metric(const FiniteMetricSpace& m) {
    const std::size_t n = m.dist.size();
    for (std::size_t i = 0; i < n; ++i)
        if (m.dist[i].size() != n)
            return {false, "matrix is not square", i, 0, 0};
    if (!m.labels.empty() && m.labels.size() != n)
        return {false, "label count does not match matrix size", 0, 0, 0};
    for (PointId i = 0; i < n; ++i)
        if (m.dist[i][i] != 0)
            return {false, "nonzero diagonal", i, i, 0};
    for (PointId i = 0; i < n; ++i)
        for (PointId j = i + 1; j < n; ++j) {
            if (m.dist[i][j] != m.dist[j][i])
                return {false, "asymmetry", i, j, 0};
            if (m.dist[i][j] <= 0)
                return {false, "nonpositive off-diagonal entry", i, j, 0};
        }
    for (PointId i = 0; i < n; ++i)
        for (PointId j = 0; j < n; ++j)
            for (PointId k = 0; k < n; ++k)
                if (m.dist[i][k] > m.dist[i][j] + m.dist[j][k])
                    return {false, "triangle inequality violation", i, k, j};
    return {};
}

/// Sum of consecutive distances; a 0-chain has length 0.
template <class Space>
Rational chain_length(const Space& m, const Chain& c) {
    Rational total = 0;
    for (std::size_t i = 1; i < c.points.size(); ++i)
        total += m.distance(c.points[i - 1], c.points[i]);
    return total;
}

/// y lies strictly between x and z: x != y != z and d(x,y) + d(y,z) = d(x,z).
template <class Space, class P>
bool between(const Space& m, const P& x, const P& y, const P& z) {
    if (x == y || y == z) return false;
    return m.distance(x, y) + m.distance(y, z) == m.distance(x, z);
}

/// Number of smooth interior points of a proper chain: positions i with
/// x_{i-1} < x_i < x_{i+1}.  Endpoints are always singular.
template <class Space>
std::size_t smoothness_count(const Space& m, const Chain& c) {
    if (!c.proper())
        throw std::invalid_argument("smoothness_count: chain is not proper");
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < c.points.size(); ++i)
        if (between(m, c.points[i - 1], c.points[i], c.points[i + 1])) ++count;
    return count;
}

/// A proper 3-chain <x_0,x_1,x_2,x_3> is a 4-cut when x_0 < x_1 < x_2,
/// x_1 < x_2 < x_3, and its length exceeds d(x_0, x_3).
template <class Space>
bool is_four_cut(const Space& m, const Chain& c) {
    if (c.points.size() != 4)
        throw std::invalid_argument("is_four_cut: chain must have exactly 4 entries");
    if (!c.proper())
        throw std::invalid_argument("is_four_cut: chain is not proper");
    if (!between(m, c.points[0], c.points[1], c.points[2])) return false;
    if (!between(m, c.points[1], c.points[2], c.points[3])) return false;
    return chain_length(m, c) > m.distance(c.points[0], c.points[3]);
}

/// Applies a permutation to the space: point i of the result is point
/// perm[i] of the input.  Used by the relabeling-invariance tests.
inline FiniteMetricSpace relabel(const FiniteMetricSpace& m, const std::vector<PointId>& perm) {
    const std::size_t n = m.size();
    FiniteMetricSpace out;
    out.labels.resize(n);
    out.dist.assign(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        out.labels[i] = m.labels.empty() ? std::string() : m.labels[perm[i]];
        for (std::size_t j = 0; j < n; ++j) out.dist[i][j] = m.dist[perm[i]][perm[j]];
    }
    return out;
}

}  // namespace magnihom
