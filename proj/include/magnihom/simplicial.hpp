#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "magnihom/abelian.hpp"
#include "magnihom/chain_complex.hpp"
#include "magnihom/matrix.hpp"
#include "magnihom/metric_space.hpp"

namespace magnihom {

/// Simplicial complex on the points strictly between a and b.  A subset
/// {x_1,...,x_p} is a simplex when, listed in the betweenness order, the
/// full length equality d(a,x_1) + d(x_1,x_2) + ... + d(x_p,b) = d(a,b)
/// holds.  Simplices are stored in that order, which also orients them.
struct SimplicialComplexA {
    PointId a = 0, b = 0;
    std::vector<PointId> vertices;  // sorted by point id
    // simplices[p] lists the p-simplices as betweenness-ordered vertex
    // tuples, sorted lexicographically
    std::vector<std::vector<std::vector<PointId>>> simplices;

    std::size_t dimension() const { return simplices.empty() ? 0 : simplices.size() - 1; }
    std::size_t count(std::size_t dim) const {
        return dim < simplices.size() ? simplices[dim].size() : 0;
    }
};

/// Builds A(a,b) by extending geodesic vertex sequences: a tuple extends by
/// y exactly when last < y < b, which reaches every simplex because faces
/// of geodesic chains are geodesic.  Downward closure is automatic.
inline SimplicialComplexA build_A(const FiniteMetricSpace& m, PointId a, PointId b,
                                  std::size_t max_dim = static_cast<std::size_t>(-1)) {
    if (a == b) throw std::invalid_argument("build_A: endpoints must be distinct");
    SimplicialComplexA c;
    c.a = a;
    c.b = b;
    for (PointId x = 0; x < m.size(); ++x)
        if (between(m, a, x, b)) c.vertices.push_back(x);
    if (c.vertices.empty()) return c;

    c.simplices.emplace_back();
    for (PointId x : c.vertices) c.simplices[0].push_back({x});
    while (c.simplices.size() <= max_dim) {
        std::vector<std::vector<PointId>> next;
        for (const auto& s : c.simplices.back())
            for (PointId y : c.vertices)
                if (between(m, s.back(), y, b)) {
                    auto t = s;
                    t.push_back(y);
                    next.push_back(std::move(t));
                }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        c.simplices.push_back(std::move(next));
    }
    return c;
}

/// Matrix of the oriented boundary C_p(A) -> C_{p-1}(A), with the sign of
/// dropping the i-th vertex (1-based) equal to (-1)^i.  This matches the
/// magnitude boundary on chains <a, x_1, ..., x_p, b> position for
/// position, so the degree-shift comparison of the two complexes is a
/// literal matrix equality.
inline IntMatrix simplicial_boundary_A(const SimplicialComplexA& c, std::size_t p) {
    const std::size_t nc = c.count(p);
    const std::size_t nr = p == 0 ? 0 : c.count(p - 1);
    IntMatrix out(nr, nc);
    if (p == 0) return out;
    const auto& below = c.simplices[p - 1];
    for (std::size_t j = 0; j < nc; ++j) {
        const auto& s = c.simplices[p][j];
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::vector<PointId> face(s);
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
            auto it = std::lower_bound(below.begin(), below.end(), face);
            const std::size_t row = static_cast<std::size_t>(it - below.begin());
            out.at(row, j) += ((i + 1) % 2 == 0) ? 1 : -1;
        }
    }
    return out;
}

/// Reduced simplicial homology of A(a,b) in degree k, via Smith normal
/// form.  Degree 0 uses the augmentation e([x]) = 1; an empty complex is
/// zero in every degree.
inline HomologyGroup reduced_homology_A(const SimplicialComplexA& c, std::size_t k) {
    HomologyGroup out;
    const std::size_t dim_k = c.count(k);
    if (dim_k == 0) return out;

    std::size_t rank_down = 0;
    if (k == 0) {
        rank_down = 1;  // augmentation onto Z
    } else {
        rank_down = matrix_rank(simplicial_boundary_A(c, k));
    }
    std::vector<Int> factors;
    if (c.count(k + 1) > 0)
        factors = smith_normal_form(simplicial_boundary_A(c, k + 1)).invariant_factors;
    out.rank = dim_k - rank_down - factors.size();
    for (const Int& f : factors)
        if (f > 1) out.torsion.push_back(f);
    out.torsion = normalize_torsion(out.torsion);
    return out;
}

/// The frame of a proper chain: what is left after deleting all smooth
/// points (smoothness judged in the original chain).  May be improper.
template <class Space>
Chain frame(const Space& m, const Chain& c) {
    Chain out;
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        const bool interior = i > 0 && i + 1 < c.points.size();
        if (interior && between(m, c.points[i - 1], c.points[i], c.points[i + 1])) continue;
        out.points.push_back(c.points[i]);
    }
    return out;
}

/// Membership in P^l_3(phi): the chain is proper, has length l, and its
/// frame is exactly phi.
inline bool in_p3_with_frame(const FiniteMetricSpace& m, const Chain& c, const Rational& length,
                             const Chain& phi) {
    if (c.points.size() != 4 || !c.proper()) return false;
    if (chain_length(m, c) != length) return false;
    return frame(m, c) == phi;
}

/// The 1-dimensional complex B^l(a,b) of Definition 3.2.
struct GraphComplexB {
    Rational length;
    PointId a = 0, b = 0;
    std::vector<PointId> vertices;  // sorted by point id
    // edges oriented by the betweenness order of Definition 3.2(c):
    // first component precedes second
    std::vector<std::pair<PointId, PointId>> edges;
};

inline GraphComplexB build_B(const FiniteMetricSpace& m, const Rational& length, PointId a,
                             PointId b) {
    if (length <= m.distance(a, b))
        throw std::invalid_argument("build_B: requires l > d(a,b)");
    GraphComplexB c;
    c.length = length;
    c.a = a;
    c.b = b;

    // condition (i): l = d(a, phi) + d(phi, b)
    std::vector<PointId> level;
    for (PointId phi = 0; phi < m.size(); ++phi)
        if (m.distance(a, phi) + m.distance(phi, b) == length) level.push_back(phi);

    // condition (ii): no x forms a 3-chain of frame <a, phi, b>
    auto has_x = [&](PointId phi) {
        const Chain fr{a, phi, b};
        for (PointId x = 0; x < m.size(); ++x) {
            if (in_p3_with_frame(m, Chain{a, x, phi, b}, length, fr)) return true;
            if (in_p3_with_frame(m, Chain{a, phi, x, b}, length, fr)) return true;
        }
        return false;
    };
    std::vector<PointId> q_set, q_bad;  // satisfy (i)+(ii) / satisfy (i) but fail (ii)
    for (PointId phi : level) (has_x(phi) ? q_bad : q_set).push_back(phi);

    // two points of the level set are adjacent when they appear together in
    // a 3-chain of frame <a, b>, in either order
    const Chain frame_ab{a, b};
    auto adjacent = [&](PointId phi, PointId psi) {
        return in_p3_with_frame(m, Chain{a, phi, psi, b}, length, frame_ab) ||
               in_p3_with_frame(m, Chain{a, psi, phi, b}, length, frame_ab);
    };

    // condition (iii): drop phi when it is adjacent to a point failing (ii)
    for (PointId phi : q_set) {
        bool excluded = false;
        for (PointId psi : q_bad)
            if (adjacent(phi, psi)) {
                excluded = true;
                break;
            }
        if (!excluded) c.vertices.push_back(phi);
    }

    for (std::size_t i = 0; i < c.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < c.vertices.size(); ++j) {
            const PointId phi = c.vertices[i], psi = c.vertices[j];
            if (in_p3_with_frame(m, Chain{a, phi, psi, b}, length, frame_ab))
                c.edges.emplace_back(phi, psi);
            else if (in_p3_with_frame(m, Chain{a, psi, phi, b}, length, frame_ab))
                c.edges.emplace_back(psi, phi);
        }
    return c;
}

/// H_0 of B: free of rank equal to the number of connected components.
inline HomologyGroup h0_B(const GraphComplexB& c) {
    std::vector<std::size_t> parent(c.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto vertex_index = [&](PointId v) {
        return static_cast<std::size_t>(
            std::lower_bound(c.vertices.begin(), c.vertices.end(), v) - c.vertices.begin());
    };
    for (const auto& [u, v] : c.edges) {
        const std::size_t ru = find(vertex_index(u)), rv = find(vertex_index(v));
        if (ru != rv) parent[ru] = rv;
    }
    std::size_t components = 0;
    for (std::size_t i = 0; i < parent.size(); ++i)
        if (find(i) == i) ++components;
    return HomologyGroup{components, {}};
}

}  // namespace magnihom
