#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "magnihom/abelian.hpp"
#include "magnihom/gamma_cycles.hpp"
#include "magnihom/graph_chains.hpp"
#include "magnihom/metric_graph.hpp"
#include "magnihom/metric_space.hpp"
#include "magnihom/simplicial.hpp"

namespace magnihom {

using Json = nlohmann::ordered_json;

/// Reads a rational from a JSON value: "p/q" or integer strings, or plain
/// JSON integers.  Floating-point values are rejected outright.
inline Rational rational_from_json(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Int(j.get<long long>()));
    if (j.is_number_unsigned()) return Rational(Int(j.get<unsigned long long>()));
    if (j.is_number_float())
        throw std::invalid_argument("floating-point value rejected: " + j.dump());
    throw std::invalid_argument("expected a rational, got: " + j.dump());
}

/// Metric-space document: {"labels": [...], "dist": [["0","3/2",...], ...]}.
inline FiniteMetricSpace metric_space_from_json(const Json& j) {
    FiniteMetricSpace m;
    if (j.contains("labels"))
        for (const auto& label : j.at("labels")) m.labels.push_back(label.get<std::string>());
    if (!j.contains("dist") || !j.at("dist").is_array())
        throw std::invalid_argument("metric document needs a \"dist\" matrix");
    for (const auto& row : j.at("dist")) {
        m.dist.emplace_back();
        for (const auto& entry : row) m.dist.back().push_back(rational_from_json(entry));
    }
    if (m.labels.empty())
        for (std::size_t i = 0; i < m.dist.size(); ++i) m.labels.push_back("p" + std::to_string(i));
    return m;
}

inline Json metric_space_to_json(const FiniteMetricSpace& m) {
    Json j;
    j["labels"] = m.labels;
    Json rows = Json::array();
    for (const auto& row : m.dist) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(format_rational(x));
        rows.push_back(std::move(r));
    }
    j["dist"] = std::move(rows);
    return j;
}

/// Metric-graph document: {"vertices":[...], "edges":[{"u":0,"v":1,"len":"p/q"}]}.
inline MetricGraph metric_graph_from_json(const Json& j) {
    MetricGraph g;
    if (!j.contains("vertices") || !j.contains("edges"))
        throw std::invalid_argument("graph document needs \"vertices\" and \"edges\"");
    for (const auto& v : j.at("vertices")) g.vertex_labels.push_back(v.get<std::string>());
    for (const auto& e : j.at("edges")) {
        MetricGraph::Edge edge;
        edge.u = e.at("u").get<std::size_t>();
        edge.v = e.at("v").get<std::size_t>();
        edge.len = rational_from_json(e.at("len"));
        if (edge.u >= g.vertex_count() || edge.v >= g.vertex_count())
            throw std::invalid_argument("edge endpoint out of range");
        if (edge.len <= 0) throw std::invalid_argument("edge lengths must be positive");
        g.edges.push_back(edge);
    }
    if (!is_connected(g)) throw std::invalid_argument("metric graph must be connected");
    return g;
}

inline Json metric_graph_to_json(const MetricGraph& g) {
    Json j;
    j["vertices"] = g.vertex_labels;
    Json edges = Json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"u", e.u}, {"v", e.v}, {"len", format_rational(e.len)}});
    j["edges"] = std::move(edges);
    return j;
}

/// Graph points serialize as {"vertex": i} or {"edge": k, "t": "p/q"}.
inline GraphPoint graph_point_from_json(const MetricGraph& g, const Json& j) {
    if (j.contains("vertex")) {
        const auto v = j.at("vertex").get<std::size_t>();
        if (v >= g.vertex_count()) throw std::invalid_argument("vertex index out of range");
        return GraphPoint::make_vertex(v);
    }
    if (j.contains("edge"))
        return GraphPoint::on_edge(g, j.at("edge").get<std::size_t>(),
                                   rational_from_json(j.at("t")));
    throw std::invalid_argument("graph point needs \"vertex\" or \"edge\"+\"t\": " + j.dump());
}

inline Json graph_point_to_json(const GraphPoint& p) {
    if (p.at_vertex) return Json{{"vertex", p.vertex}};
    return Json{{"edge", p.edge}, {"t", format_rational(p.offset)}};
}

/// Chain/cycle documents for the nu-f and gamma commands: a list of
/// {"coefficient": k, "points": [GraphPoint, ...]} entries.
inline GraphFormalSum graph_formal_sum_from_json(const MetricGraph& g, const Json& j) {
    GraphFormalSum sum;
    for (const auto& term : j) {
        const auto& cj = term.at("coefficient");
        if (cj.is_number_float())
            throw std::invalid_argument("coefficients must be integers: " + cj.dump());
        const Int coeff = cj.is_string() ? Int(cj.get<std::string>())
                                         : Int(cj.get<long long>());
        GraphChain chain;
        for (const auto& pt : term.at("points")) chain.push_back(graph_point_from_json(g, pt));
        sum.add(chain, coeff);
    }
    return sum;
}

inline Json graph_formal_sum_to_json(const GraphFormalSum& s) {
    Json j = Json::array();
    for (const auto& [chain, coeff] : s.coefficients) {
        Json pts = Json::array();
        for (const auto& p : chain) pts.push_back(graph_point_to_json(p));
        j.push_back({{"coefficient", coeff.str()}, {"points", std::move(pts)}});
    }
    return j;
}

inline Json homology_group_to_json(const HomologyGroup& g) {
    Json torsion = Json::array();
    for (const Int& t : g.torsion) torsion.push_back(t.str());
    return Json{{"rank", g.rank}, {"torsion", std::move(torsion)}};
}

inline Json complex_a_to_json(const SimplicialComplexA& c) {
    Json j;
    j["a"] = c.a;
    j["b"] = c.b;
    j["vertices"] = c.vertices;
    Json simplices = Json::array();
    for (const auto& level : c.simplices)
        for (const auto& s : level) simplices.push_back(s);
    j["simplices"] = std::move(simplices);
    return j;
}

inline Json complex_b_to_json(const GraphComplexB& c) {
    Json j;
    j["length"] = format_rational(c.length);
    j["a"] = c.a;
    j["b"] = c.b;
    j["vertices"] = c.vertices;
    Json edges = Json::array();
    for (const auto& [u, v] : c.edges) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j;
}

inline Json geodesic_to_json(const GeodesicPath& p) {
    Json j;
    j["length"] = format_rational(p.length);
    Json segs = Json::array();
    for (const auto& s : p.segments)
        segs.push_back({{"edge", s.edge},
                        {"from", format_rational(s.from)},
                        {"to", format_rational(s.to)}});
    j["segments"] = std::move(segs);
    return j;
}

}  // namespace magnihom
