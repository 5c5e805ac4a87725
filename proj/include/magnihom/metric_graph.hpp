#pragma once

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "magnihom/rational.hpp"

namespace magnihom {

/// A metric graph: a weighted multigraph whose points include every edge
/// interior.  Multi-edges and self-loops of positive length are allowed.
struct MetricGraph {
    struct Edge {
        std::size_t u = 0, v = 0;
        Rational len;
    };
    std::vector<std::string> vertex_labels;
    std::vector<Edge> edges;

    std::size_t vertex_count() const { return vertex_labels.size(); }
};

/// A point of the metric-graph continuum: either a vertex or an interior
/// point of an edge at offset t from the edge's u endpoint, 0 < t < len.
/// The canonical representation is unique: endpoint offsets normalize to
/// the vertex form.
struct GraphPoint {
    bool at_vertex = true;
    std::size_t vertex = 0;  // when at_vertex
    std::size_t edge = 0;    // when interior
    Rational offset;         // when interior

    static GraphPoint make_vertex(std::size_t v) {
        GraphPoint p;
        p.at_vertex = true;
        p.vertex = v;
        return p;
    }

    static GraphPoint on_edge(const MetricGraph& g, std::size_t edge, const Rational& t) {
        const auto& e = g.edges.at(edge);
        if (t < 0 || t > e.len)
            throw std::invalid_argument("GraphPoint: offset outside the edge");
        if (t == 0) return make_vertex(e.u);
        if (t == e.len) return make_vertex(e.v);
        GraphPoint p;
        p.at_vertex = false;
        p.edge = edge;
        p.offset = t;
        return p;
    }

    friend bool operator==(const GraphPoint& a, const GraphPoint& b) {
        if (a.at_vertex != b.at_vertex) return false;
        if (a.at_vertex) return a.vertex == b.vertex;
        return a.edge == b.edge && a.offset == b.offset;
    }
    friend bool operator!=(const GraphPoint& a, const GraphPoint& b) { return !(a == b); }
    friend bool operator<(const GraphPoint& a, const GraphPoint& b) {
        if (a.at_vertex != b.at_vertex) return a.at_vertex;  // vertices first
        if (a.at_vertex) return a.vertex < b.vertex;
        return std::tie(a.edge, a.offset) < std::tie(b.edge, b.offset);
    }
};

/// Exact single-source shortest path distances over the vertex skeleton.
/// The graphs are small, so a quadratic scan is simpler than a heap and
/// trivially deterministic.
inline std::vector<Rational> vertex_distances(const MetricGraph& g, std::size_t source) {
    const std::size_t n = g.vertex_count();
    std::vector<Rational> dist(n);
    std::vector<bool> has(n, false), done(n, false);
    dist[source] = 0;
    has[source] = true;
    for (std::size_t iter = 0; iter < n; ++iter) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v)
            if (has[v] && !done[v] && (best == n || dist[v] < dist[best])) best = v;
        if (best == n) break;
        done[best] = true;
        for (const auto& e : g.edges) {
            if (e.u == best && (!has[e.v] || dist[best] + e.len < dist[e.v])) {
                dist[e.v] = dist[best] + e.len;
                has[e.v] = true;
            }
            if (e.v == best && (!has[e.u] || dist[best] + e.len < dist[e.u])) {
                dist[e.u] = dist[best] + e.len;
                has[e.u] = true;
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (!has[v]) throw std::invalid_argument("metric graph is not connected");
    return dist;
}

inline bool is_connected(const MetricGraph& g) {
    if (g.vertex_count() == 0) return false;
    try {
        vertex_distances(g, 0);
    } catch (const std::invalid_argument&) {
        return false;
    }
    return true;
}

namespace detail {

/// (vertex, arc length from the point to that vertex) anchors of a point.
inline std::vector<std::pair<std::size_t, Rational>> point_anchors(const MetricGraph& g,
                                                                   const GraphPoint& p) {
    if (p.at_vertex) return {{p.vertex, Rational(0)}};
    const auto& e = g.edges[p.edge];
    return {{e.u, p.offset}, {e.v, e.len - p.offset}};
}

}  // namespace detail

/// Exact distance in the continuum graph.  Interior points are resolved
/// through their edge endpoints, plus the direct along-edge route when the
/// two points share an edge.
inline Rational graph_distance(const MetricGraph& g, const GraphPoint& p, const GraphPoint& q) {
    if (p == q) return Rational(0);
    bool have = false;
    Rational best;
    if (!p.at_vertex && !q.at_vertex && p.edge == q.edge) {
        best = p.offset < q.offset ? Rational(q.offset - p.offset) : Rational(p.offset - q.offset);
        have = true;
    }
    for (const auto& [pv, pd] : detail::point_anchors(g, p)) {
        const auto dist = vertex_distances(g, pv);
        for (const auto& [qv, qd] : detail::point_anchors(g, q)) {
            const Rational cand = pd + dist[qv] + qd;
            if (!have || cand < best) {
                best = cand;
                have = true;
            }
        }
    }
    return best;
}

/// Adapter giving a MetricGraph the distance interface the chain-level
/// predicates (between, smoothness, boundary) expect.
struct GraphMetric {
    const MetricGraph* graph;
    explicit GraphMetric(const MetricGraph& g) : graph(&g) {}
    Rational distance(const GraphPoint& p, const GraphPoint& q) const {
        return graph_distance(*graph, p, q);
    }
};

}  // namespace magnihom
