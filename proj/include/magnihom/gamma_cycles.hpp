#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "magnihom/geodesics.hpp"
#include "magnihom/graph_chains.hpp"
#include "magnihom/metric_graph.hpp"

namespace magnihom {

/// The paired points x_i, x'_i attached to a frame <phi_0, ..., phi_q>.
struct AdmissibleSet {
    std::vector<GraphPoint> x, xp;
};

/// Checks the defining betweenness conditions of an admissible set:
/// phi_{i-1} < x_i < phi_i and phi_{i-1} < x'_i < phi_i for every slot,
/// and no point of slot i reaches slot i+1 through phi_i.
inline bool check_admissible(const MetricGraph& g, const std::vector<GraphPoint>& frame,
                             const AdmissibleSet& adm) {
    const std::size_t q = frame.size() - 1;
    if (frame.size() < 2 || adm.x.size() != q || adm.xp.size() != q)
        throw std::invalid_argument("check_admissible: slot count does not match the frame");
    const GraphMetric metric(g);
    for (std::size_t i = 0; i < q; ++i) {
        if (!between(metric, frame[i], adm.x[i], frame[i + 1])) return false;
        if (!between(metric, frame[i], adm.xp[i], frame[i + 1])) return false;
    }
    for (std::size_t i = 0; i + 1 < q; ++i)
        for (const GraphPoint& left : {adm.x[i], adm.xp[i]})
            for (const GraphPoint& right : {adm.x[i + 1], adm.xp[i + 1]})
                if (between(metric, left, frame[i + 1], right)) return false;
    return true;
}

/// The 2q-cycle <phi_0, x_1 - x'_1, phi_1, ..., x_q - x'_q, phi_q>: the
/// product of the difference slots expands into 2^q signed chains.  The
/// result is a cycle on the nose, which is asserted at build time.
inline GraphFormalSum build_gamma_cycle(const MetricGraph& g,
                                        const std::vector<GraphPoint>& frame,
                                        const AdmissibleSet& adm) {
    if (!check_admissible(g, frame, adm))
        throw std::invalid_argument("build_gamma_cycle: the set is not admissible");
    const std::size_t q = frame.size() - 1;
    GraphFormalSum gamma;
    for (std::size_t mask = 0; mask < (std::size_t{1} << q); ++mask) {
        GraphChain chain;
        int sign = 1;
        chain.push_back(frame[0]);
        for (std::size_t i = 0; i < q; ++i) {
            const bool primed = (mask >> i) & 1;
            chain.push_back(primed ? adm.xp[i] : adm.x[i]);
            if (primed) sign = -sign;
            chain.push_back(frame[i + 1]);
        }
        gamma.add(chain, sign);
    }
    if (!graph_boundary(g, gamma).empty())
        throw std::logic_error("build_gamma_cycle: expansion is not a cycle");
    return gamma;
}

/// Rank contribution of a finite anchor set, following the even-degree
/// closed form for non-branching geodesic spaces: the sum over anchor
/// tuples phi_0, ..., phi_q with d(phi_{i-1}, phi_i) = l_i > 0 and
/// l_1 + ... + l_q = l of the products prod_i (|Geod(phi_{i-1}, phi_i)| - 1).
///
/// When `start` is set, phi_0 is pinned to it, giving the contribution of
/// the summands based at that point.  The result is the exact rank only
/// when the anchors exhaust all points realizing the compositions; anchor
/// pairs violating the non-branching assumption raise.
inline Int nonbranching_rank(const MetricGraph& g, const Rational& length, std::size_t q,
                             const std::vector<GraphPoint>& anchors,
                             const std::optional<GraphPoint>& start = std::nullopt) {
    if (q == 0) throw std::invalid_argument("nonbranching_rank: q must be positive");
    const std::size_t n = anchors.size();
    std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n));
    std::vector<std::vector<Int>> extra(n, std::vector<Int>(n));  // |Geod| - 1
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto paths = enumerate_geodesics(g, anchors[i], anchors[j]);
            for (std::size_t s = 0; s < paths.size(); ++s)
                for (std::size_t t = s + 1; t < paths.size(); ++t)
                    if (same_parameter_meeting(g, paths[s], paths[t]))
                        throw std::runtime_error(
                            "nonbranching_rank: anchors violate the non-branching assumption");
            dist[i][j] = dist[j][i] = graph_distance(g, anchors[i], anchors[j]);
            extra[i][j] = extra[j][i] = Int(paths.size()) - 1;
        }

    Int total = 0;
    auto walk = [&](auto&& self, std::size_t at, std::size_t depth, const Rational& remaining,
                    const Int& product) -> void {
        if (depth == q) {
            if (remaining == 0) total += product;
            return;
        }
        for (std::size_t next = 0; next < n; ++next) {
            if (next == at || dist[at][next] == 0 || dist[at][next] > remaining) continue;
            if (extra[at][next] == 0) continue;
            self(self, next, depth + 1, remaining - dist[at][next], product * extra[at][next]);
        }
    };
    for (std::size_t first = 0; first < n; ++first) {
        if (start && !(anchors[first] == *start)) continue;
        walk(walk, first, 0, length, Int(1));
    }
    return total;
}

}  // namespace magnihom
