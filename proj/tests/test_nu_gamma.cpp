#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "magnihom/chain_complex.hpp"
#include "magnihom/corpus.hpp"
#include "magnihom/gamma_cycles.hpp"
#include "magnihom/nu_invariant.hpp"
#include "test_support.hpp"

using namespace magnihom;

namespace {

GraphPoint V(std::size_t v) { return GraphPoint::make_vertex(v); }

// reference geodesic on the cube from vertex 1 to vertex 8 passing through
// the listed intermediate vertices
GeodesicPath cube_geodesic_through(const MetricGraph& g, std::size_t mid1, std::size_t mid2) {
    for (const auto& path : enumerate_geodesics(g, V(0), V(7)))
        if (path.point_at(g, Rational(1)) == V(mid1) && path.point_at(g, Rational(2)) == V(mid2))
            return path;
    throw std::logic_error("no such cube geodesic");
}

// the 6-term cycle gamma in C^{3r}_3(1,8) on the cube, vertex numbering as
// in the figure: <a,2,7,b> - <a,3,7,b> + <a,3,5,b> - <a,4,5,b> + <a,4,6,b>
// - <a,2,6,b>
GraphFormalSum cube_six_term_cycle() {
    GraphFormalSum gamma;
    auto chain = [](std::size_t x, std::size_t y) {
        return GraphChain{V(0), V(x - 1), V(y - 1), V(7)};
    };
    gamma.add(chain(2, 7), 1);
    gamma.add(chain(3, 7), -1);
    gamma.add(chain(3, 5), 1);
    gamma.add(chain(4, 5), -1);
    gamma.add(chain(4, 6), 1);
    gamma.add(chain(2, 6), -1);
    return gamma;
}

}  // namespace

TEST_CASE("image overlap intervals") {
    const auto g = cube_graph();
    const auto f = cube_geodesic_through(g, 1, 6);  // 1-2-7-8
    SECTION("a geodesic inside f overlaps along its whole domain") {
        const auto h = enumerate_geodesics(g, V(1), V(6)).front();  // edge 2-7
        const auto ivs = image_overlap_intervals(g, h, f);
        REQUIRE(ivs.size() == 1);
        REQUIRE(ivs.front() == std::pair<Rational, Rational>{Rational(0), Rational(1)});
    }
    SECTION("a disjoint geodesic has no overlap") {
        const auto h = enumerate_geodesics(g, V(2), V(4)).front();  // edge 3-5
        REQUIRE(image_overlap_intervals(g, h, f).empty());
    }
    SECTION("an end-touching geodesic overlaps in a single point") {
        const auto h = enumerate_geodesics(g, V(2), V(6)).front();  // edge 3-7
        const auto ivs = image_overlap_intervals(g, h, f);
        REQUIRE(ivs.size() == 1);
        REQUIRE(ivs.front() == std::pair<Rational, Rational>{Rational(1), Rational(1)});
    }
}

TEST_CASE("decompose_f_regular classifies the four cases") {
    const auto g = cube_graph();
    const auto f = cube_geodesic_through(g, 1, 6);  // 1-2-7-8
    SECTION("disjoint") {
        const auto pieces = decompose_f_regular(g, f, V(2), V(4));
        REQUIRE(pieces.size() == 1);
        REQUIRE(pieces.front().kind == RegularCase::disjoint);
    }
    SECTION("inside") {
        const auto pieces = decompose_f_regular(g, f, V(1), V(6));
        REQUIRE(pieces.size() == 1);
        REQUIRE(pieces.front().kind == RegularCase::inside);
    }
    SECTION("touches only its end") {
        const auto pieces = decompose_f_regular(g, f, V(2), V(6));
        REQUIRE(pieces.size() == 1);
        REQUIRE(pieces.front().kind == RegularCase::touches_end);
    }
    SECTION("touches only its start") {
        const auto pieces = decompose_f_regular(g, f, V(1), V(5));
        REQUIRE(pieces.size() == 1);
        REQUIRE(pieces.front().kind == RegularCase::touches_start);
    }
    SECTION("degenerate pair is rejected") {
        REQUIRE_THROWS_AS(decompose_f_regular(g, f, V(2), V(2)), std::invalid_argument);
    }
}

TEST_CASE("a transversal crossing splits into end- and start-touching pieces") {
    // path a-u-b with a second route between the midpoints: f runs along
    // the straight path; h = unique geodesic x->y crosses it at one point
    MetricGraph g;
    g.vertex_labels = {"a", "u", "b", "s", "t"};
    g.edges.push_back({0, 1, Rational(1)});  // a-u
    g.edges.push_back({1, 2, Rational(1)});  // u-b
    g.edges.push_back({3, 1, Rational(1)});  // s-u
    g.edges.push_back({1, 4, Rational(1)});  // u-t
    const auto f = enumerate_geodesics(g, V(0), V(2)).front();
    const auto pieces = decompose_f_regular(g, f, V(3), V(4));
    REQUIRE(pieces.size() == 2);
    REQUIRE(pieces[0].kind == RegularCase::touches_end);
    REQUIRE(pieces[0].y == V(1));
    REQUIRE(pieces[1].kind == RegularCase::touches_start);
}

TEST_CASE("nu_f of the cube six-term cycle is -1") {
    const auto g = cube_graph();
    const auto gamma = cube_six_term_cycle();
    // gamma is a cycle on the nose
    REQUIRE(graph_boundary(g, gamma).empty());
    const auto f = cube_geodesic_through(g, 1, 6);  // through cube vertices 2 and 7
    REQUIRE(nu_f(g, f, gamma) == -1);
}

TEST_CASE("nu_f with other reference geodesics stays well defined") {
    const auto g = cube_graph();
    const auto gamma = cube_six_term_cycle();
    // the class of gamma pairs to +-1 against every reference: nu_f only
    // sees the winding of the hexagonal cycle around the reference route
    for (const auto& f : enumerate_geodesics(g, V(0), V(7))) {
        const Int v = nu_f(g, f, gamma);
        REQUIRE((v == 1 || v == -1));
    }
}

TEST_CASE("nu_f vanishes on boundaries") {
    const auto g = cube_graph();
    const auto f = cube_geodesic_through(g, 1, 6);
    const auto geodesics = enumerate_geodesics(g, V(0), V(7));
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<std::size_t> pick_geo(0, geodesics.size() - 1);
    std::uniform_int_distribution<int> pick_num(1, 11);
    for (int trial = 0; trial < 20; ++trial) {
        // beta = <a, h(t1), h(t2), h(t3), b> for increasing parameters on a
        // random geodesic h: a 4-chain of length d(a,b)
        const auto& h = geodesics[pick_geo(rng)];
        std::set<Rational> ts;
        while (ts.size() < 3) ts.insert(Rational(pick_num(rng), 4));
        GraphChain beta{V(0)};
        for (const Rational& t : ts) beta.push_back(h.point_at(g, t));
        beta.push_back(V(7));
        REQUIRE(is_proper(beta));
        REQUIRE(graph_chain_length(g, beta) == 3);

        const auto boundary = graph_boundary(g, beta);
        REQUIRE_FALSE(boundary.empty());
        REQUIRE(nu_f(g, f, boundary) == 0);
    }
}

TEST_CASE("nu_f is invariant under refining the subdivision") {
    // <a, x, y, b> vs its refinement by an extra between point z:
    // <a,x,z,b> + <a,z,y,b> differs from <a,x,y,b> by the boundary of
    // <a,x,z,y,b>, so nu_f agrees on both
    const auto g = cube_graph();
    const auto f = cube_geodesic_through(g, 1, 6);
    const auto geodesics = enumerate_geodesics(g, V(0), V(7));
    for (const auto& h : geodesics) {
        GraphFormalSum coarse;
        coarse.add({V(0), h.point_at(g, Rational(1, 2)), h.point_at(g, Rational(5, 2)), V(7)}, 1);
        GraphFormalSum fine;
        fine.add({V(0), h.point_at(g, Rational(1, 2)), h.point_at(g, Rational(3, 2)), V(7)}, 1);
        fine.add({V(0), h.point_at(g, Rational(3, 2)), h.point_at(g, Rational(5, 2)), V(7)}, 1);
        REQUIRE(nu_f(g, f, coarse) == nu_f(g, f, fine));
    }
}

TEST_CASE("nu_f validates its inputs") {
    const auto g = cube_graph();
    const auto f = cube_geodesic_through(g, 1, 6);
    GraphFormalSum bad;
    bad.add({V(0), V(1), V(2), V(6)}, 1);  // endpoint differs from f's
    REQUIRE_THROWS_AS(nu_f(g, f, bad), std::invalid_argument);
    GraphFormalSum wrong_length;
    wrong_length.add({V(0), V(1), V(0), V(7)}, 1);
    REQUIRE_THROWS_AS(nu_f(g, f, wrong_length), std::invalid_argument);
}

TEST_CASE("admissible sets") {
    const auto circle = two_arc_circle();  // vertices A=0, B=1, arcs of length 1
    const auto on_arc = [&](std::size_t arc, const Rational& t) {
        return GraphPoint::on_edge(circle, arc, t);
    };
    SECTION("q = 1: any two distinct interior choices work") {
        const AdmissibleSet adm{{on_arc(0, Rational(1, 2))}, {on_arc(1, Rational(1, 2))}};
        REQUIRE(check_admissible(circle, {V(0), V(1)}, adm));
    }
    SECTION("q = 2 around the circle needs the quarter-point trick") {
        const std::vector<GraphPoint> frame{V(0), V(1), V(0)};
        // all four points a quarter-arc from A, so no pair reaches the
        // opposite slot through B
        const AdmissibleSet good{{on_arc(0, Rational(1, 4)), on_arc(0, Rational(1, 4))},
                                 {on_arc(1, Rational(1, 4)), on_arc(1, Rational(1, 4))}};
        REQUIRE(check_admissible(circle, frame, good));
        // midpoints on opposite arcs pass through B: not admissible
        const AdmissibleSet bad{{on_arc(0, Rational(1, 2)), on_arc(1, Rational(1, 2))},
                                {on_arc(1, Rational(1, 2)), on_arc(0, Rational(1, 2))}};
        REQUIRE_FALSE(check_admissible(circle, frame, bad));
    }
    SECTION("points outside the slot are rejected") {
        const AdmissibleSet adm{{V(0)}, {on_arc(1, Rational(1, 2))}};
        REQUIRE_FALSE(check_admissible(circle, {V(0), V(1)}, adm));
    }
}

TEST_CASE("gamma cycles") {
    const auto circle = two_arc_circle();
    const auto on_arc = [&](std::size_t arc, const Rational& t) {
        return GraphPoint::on_edge(circle, arc, t);
    };
    SECTION("q = 1 expands to two signed chains") {
        const AdmissibleSet adm{{on_arc(0, Rational(1, 2))}, {on_arc(1, Rational(1, 2))}};
        const auto gamma = build_gamma_cycle(circle, {V(0), V(1)}, adm);
        REQUIRE(gamma.coefficients.size() == 2);
        REQUIRE(gamma.coefficients.at({V(0), on_arc(0, Rational(1, 2)), V(1)}) == 1);
        REQUIRE(gamma.coefficients.at({V(0), on_arc(1, Rational(1, 2)), V(1)}) == -1);
    }
    SECTION("q = 2 expands to the four-term signed sum and is a cycle") {
        const std::vector<GraphPoint> frame{V(0), V(1), V(0)};
        const AdmissibleSet adm{{on_arc(0, Rational(1, 4)), on_arc(0, Rational(1, 4))},
                                {on_arc(1, Rational(1, 4)), on_arc(1, Rational(1, 4))}};
        const auto gamma = build_gamma_cycle(circle, frame, adm);
        REQUIRE(gamma.coefficients.size() == 4);
        Int sum = 0;
        for (const auto& [chain, k] : gamma.coefficients) {
            REQUIRE((k == 1 || k == -1));
            sum += k;
        }
        REQUIRE(sum == 0);
        REQUIRE(graph_boundary(circle, gamma).empty());
    }
    SECTION("swapping a slot negates the cycle") {
        const std::vector<GraphPoint> frame{V(0), V(1), V(0)};
        const AdmissibleSet adm{{on_arc(0, Rational(1, 4)), on_arc(0, Rational(1, 4))},
                                {on_arc(1, Rational(1, 4)), on_arc(1, Rational(1, 4))}};
        AdmissibleSet swapped = adm;
        std::swap(swapped.x[1], swapped.xp[1]);
        const auto gamma = build_gamma_cycle(circle, frame, adm);
        const auto flipped = build_gamma_cycle(circle, frame, swapped);
        REQUIRE(flipped == negate(gamma));
    }
    SECTION("inadmissible input is rejected") {
        const AdmissibleSet adm{{V(0)}, {on_arc(1, Rational(1, 2))}};
        REQUIRE_THROWS_AS(build_gamma_cycle(circle, {V(0), V(1)}, adm), std::invalid_argument);
    }
}

TEST_CASE("gamma cycle maps to a cycle of the finite submodel") {
    // embed the graph points of the q = 1 gamma cycle into a finite metric
    // space and check the boundary matrix kills its coordinate vector
    const auto circle = two_arc_circle();
    const GraphPoint x = GraphPoint::on_edge(circle, 0, Rational(1, 2));
    const GraphPoint xp = GraphPoint::on_edge(circle, 1, Rational(1, 2));
    const std::vector<GraphPoint> pts{V(0), V(1), x, xp};

    FiniteMetricSpace sub;
    sub.labels = {"A", "B", "x", "xp"};
    sub.dist.assign(4, std::vector<Rational>(4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) sub.dist[i][j] = graph_distance(circle, pts[i], pts[j]);
    REQUIRE(validate_metric(sub).ok);

    const auto basis2 = enumerate_chains(sub, 2, Rational(1), 0, 1);
    const auto basis1 = enumerate_chains(sub, 1, Rational(1), 0, 1);
    const auto mat = boundary_matrix(sub, basis2, basis1);
    std::vector<Int> coords(basis2.size(), Int(0));
    coords[*basis2.index_of(Chain{0, 2, 1})] = 1;
    coords[*basis2.index_of(Chain{0, 3, 1})] = -1;
    for (const Int& entry : mat.apply(coords)) REQUIRE(entry == 0);
}

TEST_CASE("nonbranching rank calculator") {
    SECTION("trees contribute nothing in positive length") {
        const auto t = sample_tree();
        std::vector<GraphPoint> anchors;
        for (std::size_t v = 0; v < t.vertex_count(); ++v) anchors.push_back(V(v));
        for (int q = 1; q <= 3; ++q) {
            REQUIRE(nonbranching_rank(t, Rational(2), q, anchors) == 0);
            REQUIRE(nonbranching_rank(t, Rational(7, 2), q, anchors) == 0);
        }
    }
    SECTION("two-arc circle: one basis element per alternating anchor tuple") {
        const auto circle = two_arc_circle();  // arcs of length L = 1
        const std::vector<GraphPoint> anchors{V(0), V(1)};
        for (std::size_t q = 1; q <= 3; ++q) {
            REQUIRE(nonbranching_rank(circle, Rational(q), q, anchors, V(0)) == 1);
            // without a fixed start both antipodal starting points count
            REQUIRE(nonbranching_rank(circle, Rational(q), q, anchors) == 2);
        }
    }
    SECTION("unrealizable lengths give zero") {
        const auto circle = two_arc_circle();
        const std::vector<GraphPoint> anchors{V(0), V(1)};
        REQUIRE(nonbranching_rank(circle, Rational(1, 3), 1, anchors) == 0);
        REQUIRE(nonbranching_rank(circle, Rational(5), 2, anchors) == 0);
    }
    SECTION("branching anchors are rejected") {
        const auto g = cube_graph();
        const std::vector<GraphPoint> anchors{V(0), V(7)};
        REQUIRE_THROWS_AS(nonbranching_rank(g, Rational(3), 1, anchors), std::runtime_error);
    }
}
