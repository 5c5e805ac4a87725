#pragma once

#include <random>
#include <string>
#include <vector>

#include "magnihom/metric_graph.hpp"
#include "magnihom/metric_space.hpp"

namespace magnihom {

/// Seeded random metric space: a symmetric positive integer matrix pushed
/// through its all-pairs shortest-path closure, which forces the triangle
/// inequality while keeping entries integral.
inline FiniteMetricSpace random_metric_space(std::size_t n, std::uint64_t seed,
                                             unsigned max_entry = 6) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> entry(1, max_entry);
    FiniteMetricSpace m;
    m.labels.resize(n);
    m.dist.assign(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        m.labels[i] = "p" + std::to_string(i);
        for (std::size_t j = i + 1; j < n; ++j) m.dist[i][j] = m.dist[j][i] = Rational(entry(rng));
    }
    // Floyd-Warshall closure
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (m.dist[i][k] + m.dist[k][j] < m.dist[i][j])
                    m.dist[i][j] = m.dist[i][k] + m.dist[k][j];
    return m;
}

/// The skeleton of a cube with edge length r, vertices numbered 1..8 as in
/// the standard fixture: vertex i of the graph is cube vertex i+1, with
/// vertex 1 adjacent to 2, 3, 4 and vertex 8 adjacent to 5, 6, 7.
inline MetricGraph cube_graph(const Rational& r = 1) {
    MetricGraph g;
    for (int i = 1; i <= 8; ++i) g.vertex_labels.push_back(std::to_string(i));
    const std::vector<std::pair<std::size_t, std::size_t>> edges{
        {1, 2}, {1, 3}, {1, 4}, {2, 6}, {2, 7}, {3, 5},
        {3, 7}, {4, 5}, {4, 6}, {5, 8}, {6, 8}, {7, 8}};
    for (const auto& [u, v] : edges) g.edges.push_back({u - 1, v - 1, r});
    return g;
}

/// The vertex metric of a graph: exact shortest-path distances between
/// all vertices, as a finite metric space.
inline FiniteMetricSpace vertex_metric_space(const MetricGraph& g) {
    const std::size_t n = g.vertex_count();
    FiniteMetricSpace m;
    m.labels = g.vertex_labels;
    m.dist.assign(n, std::vector<Rational>(n));
    for (std::size_t v = 0; v < n; ++v) {
        const auto row = vertex_distances(g, v);
        for (std::size_t w = 0; w < n; ++w) m.dist[v][w] = row[w];
    }
    return m;
}

/// Circle of circumference 2L as a metric graph: two vertices joined by
/// two parallel arcs of length L.  The vertices are an antipodal pair.
inline MetricGraph two_arc_circle(const Rational& arc = 1) {
    MetricGraph g;
    g.vertex_labels = {"A", "B"};
    g.edges.push_back({0, 1, arc});
    g.edges.push_back({0, 1, arc});
    return g;
}

/// A small tree (uniquely geodesic fixture): a path 0-1-2 with branches
/// 1-3 and 2-4 of assorted lengths.
inline MetricGraph sample_tree() {
    MetricGraph g;
    g.vertex_labels = {"0", "1", "2", "3", "4"};
    g.edges.push_back({0, 1, Rational(1)});
    g.edges.push_back({1, 2, Rational(2)});
    g.edges.push_back({1, 3, Rational(1)});
    g.edges.push_back({2, 4, Rational(3, 2)});
    return g;
}

/// Cycle graph C_n with unit edges; its vertex metric is the standard
/// discrete circle.
inline MetricGraph cycle_graph(std::size_t n, const Rational& len = 1) {
    MetricGraph g;
    for (std::size_t i = 0; i < n; ++i) g.vertex_labels.push_back(std::to_string(i));
    for (std::size_t i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n, len});
    return g;
}

/// The seeded corpora the acceptance suite runs on.
inline std::vector<FiniteMetricSpace> acceptance_corpus_small() {
    std::vector<FiniteMetricSpace> out;
    for (std::uint64_t i = 0; i < 30; ++i)
        out.push_back(random_metric_space(4 + i % 3, 0xC0FFEE00 + i));
    return out;
}

inline std::vector<FiniteMetricSpace> acceptance_corpus_seven() {
    std::vector<FiniteMetricSpace> out;
    for (std::uint64_t i = 0; i < 20; ++i)
        out.push_back(random_metric_space(7, 0xC0FFEE80 + i));
    return out;
}

}  // namespace magnihom
