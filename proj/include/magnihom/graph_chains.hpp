#pragma once

#include <map>
#include <vector>

#include "magnihom/metric_graph.hpp"
#include "magnihom/metric_space.hpp"

namespace magnihom {

/// Chains whose entries are points of the graph continuum.
using GraphChain = std::vector<GraphPoint>;

inline bool is_proper(const GraphChain& c) {
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] == c[i - 1]) return false;
    return !c.empty();
}

inline Rational graph_chain_length(const MetricGraph& g, const GraphChain& c) {
    Rational total = 0;
    for (std::size_t i = 1; i < c.size(); ++i) total += graph_distance(g, c[i - 1], c[i]);
    return total;
}

/// Integer linear combination of graph chains.
struct GraphFormalSum {
    std::map<GraphChain, Int> coefficients;

    void add(const GraphChain& c, const Int& k) {
        if (k == 0) return;
        auto [it, inserted] = coefficients.try_emplace(c, k);
        if (!inserted) {
            it->second += k;
            if (it->second == 0) coefficients.erase(it);
        }
    }

    bool empty() const { return coefficients.empty(); }

    friend bool operator==(const GraphFormalSum& x, const GraphFormalSum& y) {
        return x.coefficients == y.coefficients;
    }
};

inline GraphFormalSum negate(const GraphFormalSum& s) {
    GraphFormalSum out;
    for (const auto& [c, k] : s.coefficients) out.coefficients.emplace(c, -k);
    return out;
}

/// Magnitude boundary on graph chains: drop each smooth interior point
/// with sign (-1)^i.  Distances are resolved exactly on the continuum.
inline GraphFormalSum graph_boundary(const MetricGraph& g, const GraphChain& c,
                                     const Int& coeff = 1) {
    const GraphMetric metric(g);
    GraphFormalSum out;
    for (std::size_t i = 1; i + 1 < c.size(); ++i) {
        if (!between(metric, c[i - 1], c[i], c[i + 1])) continue;
        GraphChain face(c);
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        out.add(face, (i % 2 == 0) ? coeff : -coeff);
    }
    return out;
}

inline GraphFormalSum graph_boundary(const MetricGraph& g, const GraphFormalSum& s) {
    GraphFormalSum out;
    for (const auto& [c, k] : s.coefficients)
        for (const auto& [f, kk] : graph_boundary(g, c, k).coefficients) out.add(f, kk);
    return out;
}

}  // namespace magnihom
