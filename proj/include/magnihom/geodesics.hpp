#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "magnihom/metric_graph.hpp"

namespace magnihom {

/// One monotone run along an edge, from offset `from` to offset `to`
/// (both measured from the edge's u endpoint, from != to).
struct PathSegment {
    std::size_t edge = 0;
    Rational from, to;

    friend bool operator==(const PathSegment& a, const PathSegment& b) {
        return a.edge == b.edge && a.from == b.from && a.to == b.to;
    }
};

/// An arclength-parameterized shortest path through the graph continuum.
/// breaks[i] is the parameter at which segment i starts; breaks.back() is
/// the total length.  Every geodesic in a metric graph is simple, so the
/// trace never covers an edge segment twice.
struct GeodesicPath {
    GraphPoint source, target;
    Rational length;
    std::vector<PathSegment> segments;
    std::vector<Rational> breaks;

    GraphPoint point_at(const MetricGraph& g, const Rational& t) const {
        if (t < 0 || t > length) throw std::invalid_argument("point_at: parameter out of range");
        if (segments.empty()) return source;
        std::size_t i = 0;
        while (i + 1 < segments.size() && breaks[i + 1] < t) ++i;
        const PathSegment& s = segments[i];
        const Rational local = t - breaks[i];
        const Rational offset = s.to > s.from ? Rational(s.from + local) : Rational(s.from - local);
        return GraphPoint::on_edge(g, s.edge, offset);
    }

    friend bool operator==(const GeodesicPath& a, const GeodesicPath& b) {
        return a.source == b.source && a.target == b.target && a.segments == b.segments;
    }
    friend bool operator!=(const GeodesicPath& a, const GeodesicPath& b) { return !(a == b); }
};

namespace detail {

// The graph with p and q inserted as explicit nodes (degree-2 splits of
// their edges), used to enumerate shortest paths between continuum points.
struct SplitGraph {
    struct SEdge {
        std::size_t a = 0, b = 0;
        Rational len;
        std::size_t orig = 0;  // original edge
        Rational o_a, o_b;     // offsets of nodes a and b on that edge
    };
    std::size_t node_count = 0;
    std::vector<SEdge> sedges;
    std::vector<std::vector<std::pair<std::size_t, bool>>> incident;  // (sedge, leaves via a?)
    std::size_t p_node = 0, q_node = 0;
};

inline SplitGraph build_split_graph(const MetricGraph& g, const GraphPoint& p,
                                    const GraphPoint& q) {
    SplitGraph s;
    s.node_count = g.vertex_count();
    auto new_node = [&]() { return s.node_count++; };
    std::size_t p_node = p.at_vertex ? p.vertex : new_node();
    std::size_t q_node = q.at_vertex ? q.vertex : (q == p ? p_node : new_node());
    s.p_node = p_node;
    s.q_node = q_node;

    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const auto& e = g.edges[k];
        std::vector<std::pair<Rational, std::size_t>> cuts{{Rational(0), e.u}, {e.len, e.v}};
        if (!p.at_vertex && p.edge == k) cuts.emplace_back(p.offset, p_node);
        const bool q_is_p = q == p;
        if (!q.at_vertex && q.edge == k && !q_is_p) cuts.emplace_back(q.offset, q_node);
        std::sort(cuts.begin(), cuts.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (std::size_t i = 1; i < cuts.size(); ++i)
            s.sedges.push_back({cuts[i - 1].second, cuts[i].second,
                                cuts[i].first - cuts[i - 1].first, k, cuts[i - 1].first,
                                cuts[i].first});
    }
    s.incident.resize(s.node_count);
    for (std::size_t i = 0; i < s.sedges.size(); ++i) {
        s.incident[s.sedges[i].a].emplace_back(i, true);
        if (s.sedges[i].b != s.sedges[i].a) s.incident[s.sedges[i].b].emplace_back(i, false);
    }
    return s;
}

inline std::vector<Rational> split_distances(const SplitGraph& s, std::size_t source) {
    const std::size_t n = s.node_count;
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
        for (const auto& e : s.sedges) {
            if (e.a == best && (!has[e.b] || dist[best] + e.len < dist[e.b])) {
                dist[e.b] = dist[best] + e.len;
                has[e.b] = true;
            }
            if (e.b == best && (!has[e.a] || dist[best] + e.len < dist[e.a])) {
                dist[e.a] = dist[best] + e.len;
                has[e.a] = true;
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (!has[v]) throw std::invalid_argument("metric graph is not connected");
    return dist;
}

inline GeodesicPath path_from_sedges(const MetricGraph& g, const GraphPoint& p,
                                     const GraphPoint& q,
                                     const std::vector<std::pair<std::size_t, bool>>& walk,
                                     const SplitGraph& s) {
    GeodesicPath path;
    path.source = p;
    path.target = q;
    for (const auto& [idx, forward] : walk) {
        const auto& se = s.sedges[idx];
        PathSegment seg{se.orig, forward ? se.o_a : se.o_b, forward ? se.o_b : se.o_a};
        if (!path.segments.empty()) {
            PathSegment& prev = path.segments.back();
            const bool same_dir = (prev.to > prev.from) == (seg.to > seg.from);
            if (prev.edge == seg.edge && prev.to == seg.from && same_dir) {
                prev.to = seg.to;
                continue;
            }
        }
        path.segments.push_back(seg);
    }
    path.breaks.assign(1, Rational(0));
    for (const auto& seg : path.segments) {
        const Rational step = seg.to > seg.from ? Rational(seg.to - seg.from)
                                                : Rational(seg.from - seg.to);
        path.breaks.push_back(path.breaks.back() + step);
    }
    path.length = path.breaks.back();
    return path;
}

}  // namespace detail

/// All geodesics joining p to q, as distinct traces in deterministic
/// (depth-first, edge-ordered) order.  The set is finite: a shortest path
/// is determined by its edge sequence.
inline std::vector<GeodesicPath> enumerate_geodesics(const MetricGraph& g, const GraphPoint& p,
                                                     const GraphPoint& q) {
    if (p == q) {
        GeodesicPath trivial;
        trivial.source = trivial.target = p;
        trivial.length = 0;
        trivial.breaks = {Rational(0)};
        return {trivial};
    }
    const auto s = detail::build_split_graph(g, p, q);
    const auto from_p = detail::split_distances(s, s.p_node);
    const auto to_q = detail::split_distances(s, s.q_node);
    const Rational total = from_p[s.q_node];

    std::vector<GeodesicPath> out;
    std::vector<std::pair<std::size_t, bool>> walk;
    auto visit = [&](auto&& self, std::size_t node) -> void {
        if (node == s.q_node) {
            out.push_back(detail::path_from_sedges(g, p, q, walk, s));
            return;
        }
        for (const auto& [idx, via_a] : s.incident[node]) {
            const auto& se = s.sedges[idx];
            const std::size_t next = via_a ? se.b : se.a;
            if (from_p[node] + se.len + to_q[next] != total) continue;
            walk.emplace_back(idx, via_a);
            self(self, next);
            walk.pop_back();
        }
    };
    visit(visit, s.p_node);
    return out;
}

/// Whether the point lies on the image of the path.
inline bool on_path(const MetricGraph& g, const GeodesicPath& path, const GraphPoint& pt) {
    if (path.source == pt || path.target == pt) return true;
    for (std::size_t i = 0; i < path.segments.size(); ++i) {
        const PathSegment& s = path.segments[i];
        if (pt.at_vertex) {
            if (path.point_at(g, path.breaks[i]) == pt ||
                path.point_at(g, path.breaks[i + 1]) == pt)
                return true;
        } else if (s.edge == pt.edge && std::min(s.from, s.to) <= pt.offset &&
                   pt.offset <= std::max(s.from, s.to)) {
            return true;
        }
    }
    return false;
}

/// Witness t in (0, d) with f(t) = h(t), if the two geodesics meet at a
/// common interior parameter; nullopt otherwise.  This is the relation ~
/// generating the equivalence on Geod(a,b): equality must hold at the same
/// parameter, so image overlap at mismatched times does not count.
inline std::optional<Rational> same_parameter_meeting(const MetricGraph& g, const GeodesicPath& f,
                                                      const GeodesicPath& h) {
    if (f.length != h.length || f.length == 0) return std::nullopt;
    const Rational& d = f.length;
    std::set<Rational> ts(f.breaks.begin(), f.breaks.end());
    ts.insert(h.breaks.begin(), h.breaks.end());

    for (const Rational& t : ts)
        if (t > 0 && t < d && f.point_at(g, t) == h.point_at(g, t)) return t;

    auto segment_covering = [](const GeodesicPath& path, const Rational& t0, const Rational& t1)
        -> const PathSegment* {
        for (std::size_t i = 0; i < path.segments.size(); ++i)
            if (path.breaks[i] <= t0 && t1 <= path.breaks[i + 1])
                return &path.segments[i];
        return nullptr;
    };
    auto affine = [](const GeodesicPath& path, const PathSegment* s) {
        const std::size_t i = static_cast<std::size_t>(s - path.segments.data());
        const Rational slope = s->to > s->from ? 1 : -1;
        return std::pair<Rational, Rational>(s->from - slope * path.breaks[i], slope);
    };

    Rational prev;
    bool first = true;
    for (const Rational& t : ts) {
        if (!first) {
            const Rational t0 = prev, t1 = t;
            const PathSegment* sf = segment_covering(f, t0, t1);
            const PathSegment* sh = segment_covering(h, t0, t1);
            if (sf && sh && sf->edge == sh->edge) {
                const auto [cf, mf] = affine(f, sf);
                const auto [ch, mh] = affine(h, sh);
                if (mf == mh) {
                    if (cf == ch) {
                        const Rational mid = (t0 + t1) / 2;
                        if (mid > 0 && mid < d) return mid;
                    }
                } else {
                    const Rational tstar = (ch - cf) / (mf - mh);
                    if (tstar >= t0 && tstar <= t1 && tstar > 0 && tstar < d) return tstar;
                }
            }
        }
        prev = t;
        first = false;
    }
    return std::nullopt;
}

/// Geodesics from a to b partitioned into the equivalence classes
/// generated by same-parameter meetings.
struct GeodesicClasses {
    std::vector<GeodesicPath> geodesics;
    std::vector<std::size_t> class_index;  // per geodesic, numbered by first appearance
    std::size_t class_count = 0;
};

inline GeodesicClasses pi0_geodesics(const MetricGraph& g, const GraphPoint& p,
                                     const GraphPoint& q) {
    GeodesicClasses out;
    out.geodesics = enumerate_geodesics(g, p, q);
    const std::size_t n = out.geodesics.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (same_parameter_meeting(g, out.geodesics[i], out.geodesics[j])) {
                const std::size_t ri = find(i), rj = find(j);
                if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
            }
    out.class_index.resize(n);
    std::map<std::size_t, std::size_t> renumber;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        auto [it, inserted] = renumber.try_emplace(root, renumber.size());
        out.class_index[i] = it->second;
    }
    out.class_count = renumber.size();
    return out;
}

/// rank H^{d(a,b)}_2(a,b) on a geodesic space: |pi0(Geod(a,b))| - 1.
inline std::size_t h2_rank_geodesic(const MetricGraph& g, const GraphPoint& a,
                                    const GraphPoint& b) {
    return pi0_geodesics(g, a, b).class_count - 1;
}

/// Concatenates a geodesic x -> y with one y -> z.  Requires x < y < z in
/// the graph metric, which makes the concatenation a shortest path.
inline GeodesicPath geodesic_through(const MetricGraph& g, const GraphPoint& x,
                                     const GraphPoint& y, const GraphPoint& z) {
    const Rational dxy = graph_distance(g, x, y);
    const Rational dyz = graph_distance(g, y, z);
    const Rational dxz = graph_distance(g, x, z);
    if (x == y || y == z || dxy + dyz != dxz)
        throw std::invalid_argument("geodesic_through: y is not strictly between x and z");
    const GeodesicPath first = enumerate_geodesics(g, x, y).front();
    const GeodesicPath second = enumerate_geodesics(g, y, z).front();

    GeodesicPath path;
    path.source = x;
    path.target = z;
    path.segments = first.segments;
    for (const auto& seg : second.segments) {
        if (!path.segments.empty()) {
            PathSegment& prev = path.segments.back();
            const bool same_dir = (prev.to > prev.from) == (seg.to > seg.from);
            if (prev.edge == seg.edge && prev.to == seg.from && same_dir) {
                prev.to = seg.to;
                continue;
            }
        }
        path.segments.push_back(seg);
    }
    path.breaks.assign(1, Rational(0));
    for (const auto& seg : path.segments) {
        const Rational step = seg.to > seg.from ? Rational(seg.to - seg.from)
                                                : Rational(seg.from - seg.to);
        path.breaks.push_back(path.breaks.back() + step);
    }
    path.length = path.breaks.back();
    if (path.length != dxz) throw std::logic_error("geodesic_through: concatenation not shortest");
    return path;
}

/// Non-branching certificate over a sample of point pairs: no two distinct
/// geodesics of any sampled pair may meet at a common interior parameter.
struct NonBranchingReport {
    bool ok = true;
    GraphPoint p, q;                      // witnesses when a violation is found
    std::size_t first = 0, second = 0;    // indices of the violating geodesics
    Rational t;                           // shared parameter
};

inline NonBranchingReport check_non_branching(
    const MetricGraph& g, const std::vector<std::pair<GraphPoint, GraphPoint>>& sample) {
    for (const auto& [p, q] : sample) {
        const auto paths = enumerate_geodesics(g, p, q);
        for (std::size_t i = 0; i < paths.size(); ++i)
            for (std::size_t j = i + 1; j < paths.size(); ++j)
                if (auto t = same_parameter_meeting(g, paths[i], paths[j]))
                    return {false, p, q, i, j, *t};
    }
    return {};
}

/// Checks that every probe pair (x, y) with a < x < y < b admits exactly
/// one geodesic; pairs outside the betweenness range are skipped.
struct UniqueGeodesicReport {
    bool ok = true;
    std::size_t checked = 0;
    GraphPoint x, y;        // witnesses when not unique
    std::size_t count = 0;  // geodesic count at the witness
};

inline UniqueGeodesicReport check_unique_between_geodesics(
    const MetricGraph& g, const GraphPoint& a, const GraphPoint& b,
    const std::vector<std::pair<GraphPoint, GraphPoint>>& probes) {
    if (a == b) throw std::invalid_argument("check_unique_between_geodesics: a = b");
    UniqueGeodesicReport report;
    const GraphMetric metric(g);
    for (const auto& [x, y] : probes) {
        if (!between(metric, a, x, y) || !between(metric, x, y, b)) continue;
        ++report.checked;
        const auto paths = enumerate_geodesics(g, x, y);
        if (paths.size() != 1) {
            report.ok = false;
            report.x = x;
            report.y = y;
            report.count = paths.size();
            return report;
        }
    }
    return report;
}

}  // namespace magnihom
