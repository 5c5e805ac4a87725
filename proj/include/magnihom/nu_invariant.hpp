#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "magnihom/geodesics.hpp"
#include "magnihom/graph_chains.hpp"
#include "magnihom/metric_graph.hpp"

namespace magnihom {

/// The four ways a 3-chain <a,x,y,b> can be regular with respect to a
/// reference geodesic f, judged by how the x -> y geodesic meets Im f.
enum class RegularCase {
    touches_end = 1,    // meets f only at y
    touches_start = 2,  // meets f only at x
    inside = 3,         // lies entirely on f
    disjoint = 4,       // does not meet f
};

struct RegularPiece {
    GraphPoint x, y;
    RegularCase kind = RegularCase::disjoint;
};

/// Closed parameter intervals of h on which h(t) lies in the image of f,
/// merged and sorted.  Image intersection is parameter-free on f: offsets
/// are compared edge by edge, and shared vertices are caught through the
/// breakpoints of both traces.
inline std::vector<std::pair<Rational, Rational>> image_overlap_intervals(
    const MetricGraph& g, const GeodesicPath& h, const GeodesicPath& f) {
    std::vector<std::pair<Rational, Rational>> raw;

    for (std::size_t i = 0; i < h.segments.size(); ++i) {
        const PathSegment& sh = h.segments[i];
        const Rational h_lo = std::min(sh.from, sh.to), h_hi = std::max(sh.from, sh.to);
        const bool fwd = sh.to > sh.from;
        for (const PathSegment& sf : f.segments) {
            if (sf.edge != sh.edge) continue;
            const Rational f_lo = std::min(sf.from, sf.to), f_hi = std::max(sf.from, sf.to);
            const Rational lo = std::max(h_lo, f_lo), hi = std::min(h_hi, f_hi);
            if (lo > hi) continue;
            // map the offset range back to h parameters
            const Rational t_lo = fwd ? h.breaks[i] + (lo - sh.from) : h.breaks[i] + (sh.from - hi);
            const Rational t_hi = fwd ? h.breaks[i] + (hi - sh.from) : h.breaks[i] + (sh.from - lo);
            raw.emplace_back(t_lo, t_hi);
        }
    }

    std::set<GraphPoint> f_vertices;
    for (const Rational& t : f.breaks) {
        const GraphPoint pt = f.point_at(g, t);
        if (pt.at_vertex) f_vertices.insert(pt);
    }
    for (const Rational& t : h.breaks) {
        const GraphPoint pt = h.point_at(g, t);
        if (pt.at_vertex && f_vertices.count(pt)) raw.emplace_back(t, t);
    }

    std::sort(raw.begin(), raw.end());
    std::vector<std::pair<Rational, Rational>> merged;
    for (const auto& iv : raw) {
        if (!merged.empty() && iv.first <= merged.back().second) {
            if (iv.second > merged.back().second) merged.back().second = iv.second;
        } else {
            merged.push_back(iv);
        }
    }
    return merged;
}

/// Subdivides the unique geodesic h from x to y at the endpoints of
/// h^{-1}(Im f) and classifies each piece.  Every returned piece is
/// f-regular; a piece touching f at both ends, or a non-unique geodesic
/// anywhere along the way, certifies a violation of the uniqueness
/// assumption and raises.
inline std::vector<RegularPiece> decompose_f_regular(const MetricGraph& g, const GeodesicPath& f,
                                                     const GraphPoint& x, const GraphPoint& y) {
    if (x == y) throw std::invalid_argument("decompose_f_regular: degenerate pair x = y");
    const auto geods = enumerate_geodesics(g, x, y);
    if (geods.size() != 1)
        throw std::runtime_error("decompose_f_regular: non-unique geodesic between subdivision "
                                 "points (uniqueness assumption violated)");
    const GeodesicPath& h = geods.front();
    const auto intervals = image_overlap_intervals(g, h, f);

    std::set<Rational> cut{Rational(0), h.length};
    for (const auto& [lo, hi] : intervals) {
        cut.insert(lo);
        cut.insert(hi);
    }
    auto interval_containing = [&](const Rational& t) -> const std::pair<Rational, Rational>* {
        for (const auto& iv : intervals)
            if (iv.first <= t && t <= iv.second) return &iv;
        return nullptr;
    };

    std::vector<RegularPiece> pieces;
    Rational prev;
    bool first = true;
    for (const Rational& t : cut) {
        if (!first && prev < t) {
            RegularPiece piece;
            piece.x = h.point_at(g, prev);
            piece.y = h.point_at(g, t);
            const auto* left = interval_containing(prev);
            const auto* right = interval_containing(t);
            const bool whole = left && t <= left->second;
            if (whole)
                piece.kind = RegularCase::inside;
            else if (left && right)
                throw std::runtime_error("decompose_f_regular: piece touches the reference "
                                         "geodesic at both ends (uniqueness assumption violated)");
            else if (right)
                piece.kind = RegularCase::touches_end;
            else if (left)
                piece.kind = RegularCase::touches_start;
            else
                piece.kind = RegularCase::disjoint;
            // assumption is checked lazily at every pair the subdivision touches
            if (piece.x != x || piece.y != y)
                if (enumerate_geodesics(g, piece.x, piece.y).size() != 1)
                    throw std::runtime_error(
                        "decompose_f_regular: non-unique geodesic between subdivision points "
                        "(uniqueness assumption violated)");
            pieces.push_back(piece);
        }
        prev = t;
        first = false;
    }
    return pieces;
}

/// nu_f on a formal sum of 3-chains sharing f's endpoints and length
/// d(a,b): each chain is subdivided into f-regular pieces, pieces that
/// meet f only at their end count 1, and coefficients weigh the totals.
inline Int nu_f(const MetricGraph& g, const GeodesicPath& f, const GraphFormalSum& gamma) {
    const GraphPoint a = f.source, b = f.target;
    const Rational d = graph_distance(g, a, b);
    if (f.length != d) throw std::invalid_argument("nu_f: reference path is not a geodesic");
    Int total = 0;
    for (const auto& [chain, coeff] : gamma.coefficients) {
        if (chain.size() != 4 || !is_proper(chain))
            throw std::invalid_argument("nu_f: cycle entries must be proper 3-chains");
        if (chain.front() != a || chain.back() != b)
            throw std::invalid_argument("nu_f: chain endpoints differ from the reference's");
        if (graph_chain_length(g, chain) != d)
            throw std::invalid_argument("nu_f: chain length differs from d(a,b)");
        Int count = 0;
        for (const auto& piece : decompose_f_regular(g, f, chain[1], chain[2]))
            if (piece.kind == RegularCase::touches_end) ++count;
        total += coeff * count;
    }
    return total;
}

}  // namespace magnihom
