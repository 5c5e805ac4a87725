#include <catch2/catch_amalgamated.hpp>

#include "magnihom/corpus.hpp"
#include "magnihom/io.hpp"

using namespace magnihom;

TEST_CASE("rational parsing") {
    REQUIRE(parse_rational("3/2") == Rational(3, 2));
    REQUIRE(parse_rational("-4/6") == Rational(-2, 3));
    REQUIRE(parse_rational("7") == Rational(7));
    REQUIRE(parse_rational("+7") == Rational(7));
    REQUIRE_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational(""), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational("3/"), std::invalid_argument);
    REQUIRE_THROWS_AS(parse_rational("3/0"), std::invalid_argument);
    REQUIRE(format_rational(Rational(3, 2)) == "3/2");
    REQUIRE(format_rational(Rational(-8, 4)) == "-2");
}

TEST_CASE("metric space documents") {
    const auto doc = Json::parse(R"({
        "labels": ["a", "b", "c"],
        "dist": [["0", "3/2", 2], ["3/2", "0", "1"], [2, "1", "0"]]
    })");
    const auto m = metric_space_from_json(doc);
    REQUIRE(m.size() == 3);
    REQUIRE(m.distance(0, 1) == Rational(3, 2));
    REQUIRE(m.distance(0, 2) == 2);
    REQUIRE(validate_metric(m).ok);

    // round trip
    const auto again = metric_space_from_json(metric_space_to_json(m));
    REQUIRE(again.dist == m.dist);
    REQUIRE(again.labels == m.labels);
}

TEST_CASE("floats in metric documents are rejected") {
    const auto doc = Json::parse(R"({"dist": [["0", 1.5], [1.5, "0"]]})");
    REQUIRE_THROWS_AS(metric_space_from_json(doc), std::invalid_argument);
}

TEST_CASE("metric graph documents") {
    const auto doc = Json::parse(R"({
        "vertices": ["A", "B"],
        "edges": [{"u": 0, "v": 1, "len": "1"}, {"u": 0, "v": 1, "len": "1"}]
    })");
    const auto g = metric_graph_from_json(doc);
    REQUIRE(g.vertex_count() == 2);
    REQUIRE(g.edges.size() == 2);
    const auto again = metric_graph_from_json(metric_graph_to_json(g));
    REQUIRE(again.vertex_labels == g.vertex_labels);
    REQUIRE(again.edges.size() == g.edges.size());

    SECTION("disconnected graphs are rejected") {
        const auto bad = Json::parse(R"({"vertices": ["A", "B", "C"],
                                         "edges": [{"u": 0, "v": 1, "len": "1"}]})");
        REQUIRE_THROWS_AS(metric_graph_from_json(bad), std::invalid_argument);
    }
    SECTION("nonpositive lengths are rejected") {
        const auto bad = Json::parse(R"({"vertices": ["A", "B"],
                                         "edges": [{"u": 0, "v": 1, "len": "0"}]})");
        REQUIRE_THROWS_AS(metric_graph_from_json(bad), std::invalid_argument);
    }
}

TEST_CASE("graph points and formal sums") {
    const auto g = two_arc_circle();
    const auto vertex = graph_point_from_json(g, Json::parse(R"({"vertex": 1})"));
    REQUIRE(vertex == GraphPoint::make_vertex(1));
    const auto interior = graph_point_from_json(g, Json::parse(R"({"edge": 0, "t": "1/2"})"));
    REQUIRE_FALSE(interior.at_vertex);
    REQUIRE(graph_point_from_json(g, graph_point_to_json(interior)) == interior);
    // endpoint offsets canonicalize to vertices
    const auto end = graph_point_from_json(g, Json::parse(R"({"edge": 0, "t": "1"})"));
    REQUIRE(end == GraphPoint::make_vertex(1));

    const auto cycle = Json::parse(R"([
        {"coefficient": 1, "points": [{"vertex": 0}, {"edge": 0, "t": "1/2"}, {"vertex": 1}]},
        {"coefficient": -1, "points": [{"vertex": 0}, {"edge": 1, "t": "1/2"}, {"vertex": 1}]}
    ])");
    const auto sum = graph_formal_sum_from_json(g, cycle);
    REQUIRE(sum.coefficients.size() == 2);
    const auto again = graph_formal_sum_from_json(g, graph_formal_sum_to_json(sum));
    REQUIRE(again == sum);
}

TEST_CASE("homology groups serialize deterministically") {
    HomologyGroup h{2, {Int(2), Int(6)}};
    REQUIRE(homology_group_to_json(h).dump() == R"({"rank":2,"torsion":["2","6"]})");
}
