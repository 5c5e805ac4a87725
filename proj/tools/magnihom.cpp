// magnihom: magnitude homology of finite metric spaces and metric graphs.
//
// Subcommands mirror the library: validate, spectrum, homology, complex-a,
// complex-b, spectral, oracles, and the graph family (geodesics, pi0,
// distance, nu-f, nonbranching, gamma-rank).  All numeric input and output
// is exact; output is deterministic for fixed inputs and flags.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "magnihom/chain_complex.hpp"
#include "magnihom/corpus.hpp"
#include "magnihom/gamma_cycles.hpp"
#include "magnihom/io.hpp"
#include "magnihom/nu_invariant.hpp"
#include "magnihom/simplicial.hpp"
#include "magnihom/spectral.hpp"

using namespace magnihom;

namespace {

std::size_t worker_count(std::size_t jobs) {
    std::size_t n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("MAGNIHOM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) n = static_cast<std::size_t>(v);
    }
    return std::min(n, std::max<std::size_t>(jobs, 1));
}

/// Runs fn(i) for i in [0, jobs) across workers; results are written into
/// slots, so assembly order is independent of scheduling.
void parallel_for(std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = worker_count(jobs);
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input: " + path);
    Json j;
    in >> j;
    return j;
}

struct SpaceSource {
    std::string path;
    std::size_t random_points = 0;
    std::uint64_t seed = 0;

    FiniteMetricSpace load() const {
        if (!path.empty()) {
            const auto m = metric_space_from_json(load_json(path));
            const auto report = validate_metric(m);
            if (!report.ok)
                throw std::runtime_error("input is not a metric space: " + report.reason);
            return m;
        }
        if (random_points > 0) return random_metric_space(random_points, seed);
        throw std::runtime_error("no input: give a metric document or --points with --seed");
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("input", path, "metric-space JSON document");
        cmd->add_option("--points", random_points, "generate a seeded random space instead");
        cmd->add_option("--seed", seed, "seed for --points");
    }
};

std::pair<PointId, PointId> parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw std::runtime_error("expected a pair like 0,7");
    return {static_cast<PointId>(std::stoul(text.substr(0, comma))),
            static_cast<PointId>(std::stoul(text.substr(comma + 1)))};
}

GraphPoint parse_graph_point(const MetricGraph& g, const std::string& text) {
    if (text.rfind("v:", 0) == 0) {
        const auto v = std::stoul(text.substr(2));
        if (v >= g.vertex_count()) throw std::runtime_error("vertex out of range: " + text);
        return GraphPoint::make_vertex(v);
    }
    if (text.rfind("e:", 0) == 0) {
        const auto at = text.find('@');
        if (at == std::string::npos)
            throw std::runtime_error("expected e:<edge>@<offset>: " + text);
        return GraphPoint::on_edge(g, std::stoul(text.substr(2, at - 2)),
                                   parse_rational(text.substr(at + 1)));
    }
    throw std::runtime_error("graph points look like v:3 or e:2@1/4: " + text);
}

std::vector<GraphPoint> parse_point_list(const MetricGraph& g, const std::string& text) {
    std::vector<GraphPoint> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_graph_point(g, item));
    return out;
}

std::vector<std::pair<GraphPoint, GraphPoint>> parse_pair_list(const MetricGraph& g,
                                                               const std::string& text) {
    std::vector<std::pair<GraphPoint, GraphPoint>> out;
    if (text == "all-vertices") {
        for (std::size_t u = 0; u < g.vertex_count(); ++u)
            for (std::size_t v = u + 1; v < g.vertex_count(); ++v)
                out.emplace_back(GraphPoint::make_vertex(u), GraphPoint::make_vertex(v));
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        const auto points = parse_point_list(g, item);
        if (points.size() != 2) throw std::runtime_error("pair needs two points: " + item);
        out.emplace_back(points[0], points[1]);
    }
    return out;
}

std::string torsion_text(const std::vector<Int>& torsion, bool truncate) {
    std::string out = "[";
    const std::size_t shown = truncate ? std::min<std::size_t>(torsion.size(), 8) : torsion.size();
    for (std::size_t i = 0; i < shown; ++i) {
        if (i) out += ",";
        out += torsion[i].str();
    }
    if (shown < torsion.size()) out += ",...";
    return out + "]";
}

void emit(const Json& j, const std::string& format) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    // table: flat key/value plus one line per row entry
    for (const auto& [key, value] : j.items()) {
        if (key == "rows" || key == "entries") continue;
        std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
                  << "\n";
    }
    if (j.contains("rows"))
        for (const auto& row : j.at("rows")) {
            std::string line;
            for (const auto& [key, value] : row.items()) {
                if (!line.empty()) line += "  ";
                std::string v;
                if (value.is_string())
                    v = value.get<std::string>();
                else if (key == "torsion") {
                    std::vector<Int> torsion;
                    for (const auto& t : value) torsion.emplace_back(t.get<std::string>());
                    v = torsion_text(torsion, true);
                } else
                    v = value.dump();
                line += key + "=" + v;
            }
            std::cout << line << "\n";
        }
}

Json homology_row(std::size_t n, const Rational& length, PointId a, PointId b,
                  const HomologySummand& h) {
    Json torsion = Json::array();
    for (const Int& t : h.group.torsion) torsion.push_back(t.str());
    return Json{{"n", n},
                {"length", format_rational(length)},
                {"a", a},
                {"b", b},
                {"rank", h.group.rank},
                {"torsion", std::move(torsion)},
                {"dim_chains", h.dim_chains},
                {"dim_boundaries", h.dim_boundaries}};
}

std::vector<std::pair<PointId, PointId>> selected_pairs(const FiniteMetricSpace& m,
                                                        const std::string& pair_text,
                                                        bool all_pairs) {
    std::vector<std::pair<PointId, PointId>> pairs;
    if (all_pairs || pair_text.empty()) {
        for (PointId a = 0; a < m.size(); ++a)
            for (PointId b = 0; b < m.size(); ++b) pairs.emplace_back(a, b);
    } else {
        pairs.push_back(parse_pair(pair_text));
    }
    return pairs;
}

int run_oracles(const FiniteMetricSpace& m, std::size_t max_n, const std::string& format) {
    struct Row {
        Json json;
        bool match = true;
    };
    std::vector<std::pair<PointId, PointId>> pairs;
    for (PointId a = 0; a < m.size(); ++a)
        for (PointId b = 0; b < m.size(); ++b)
            if (a != b) pairs.emplace_back(a, b);

    std::vector<std::vector<Row>> results(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t idx) {
        const auto [a, b] = pairs[idx];
        std::vector<Row>& rows = results[idx];
        const Rational d = m.distance(a, b);
        const auto complex = build_A(m, a, b);
        for (std::size_t n = 2; n <= std::min<std::size_t>(max_n, 4); ++n) {
            const auto direct = homology(m, n, d, a, b).group;
            const auto reduced = reduced_homology_A(complex, n - 2);
            Row row;
            row.match = direct == reduced;
            row.json = Json{{"check", "A"},          {"n", n},
                            {"length", format_rational(d)}, {"a", a},
                            {"b", b},                {"direct", homology_group_to_json(direct)},
                            {"oracle", homology_group_to_json(reduced)},
                            {"match", row.match}};
            rows.push_back(std::move(row));
        }
        for (const auto& length : length_spectrum(m, 2, a, b)) {
            if (length <= d) continue;
            const auto direct = homology(m, 2, length, a, b).group;
            const auto oracle = h0_B(build_B(m, length, a, b));
            Row row;
            row.match = direct == oracle;
            row.json = Json{{"check", "B"},
                            {"n", 2},
                            {"length", format_rational(length)},
                            {"a", a},
                            {"b", b},
                            {"direct", homology_group_to_json(direct)},
                            {"oracle", homology_group_to_json(oracle)},
                            {"match", row.match}};
            rows.push_back(std::move(row));
        }
        std::set<Rational> lengths;
        for (std::size_t n = 0; n <= max_n; ++n)
            for (const auto& l : length_spectrum(m, n, a, b)) lengths.insert(l);
        for (const auto& length : lengths) {
            const auto report = convergence_check(m, length, a, b, max_n);
            for (const auto& conv : report.rows) {
                Row row;
                row.match = conv.match;
                row.json = Json{{"check", "convergence"},
                                {"n", conv.n},
                                {"length", format_rational(length)},
                                {"a", a},
                                {"b", b},
                                {"direct", conv.direct_rank},
                                {"oracle", conv.graded_rank_sum},
                                {"match", row.match}};
                rows.push_back(std::move(row));
            }
        }
    });

    Json out;
    out["command"] = "oracles";
    out["max_n"] = max_n;
    bool all_match = true;
    Json rows = Json::array();
    for (const auto& bucket : results)
        for (const auto& row : bucket) {
            all_match = all_match && row.match;
            rows.push_back(row.json);
        }
    out["all_match"] = all_match;
    out["rows"] = std::move(rows);
    emit(out, format);
    return all_match ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"magnitude homology toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // parent options like --format may follow a subcommand
    std::string format = "json";
    app.add_option("--format", format, "output format: json or table")
        ->check(CLI::IsMember({"json", "table"}));

    // ---- validate ----------------------------------------------------
    auto* validate_cmd = app.add_subcommand("validate", "check the metric axioms");
    std::string validate_path;
    validate_cmd->add_option("input", validate_path, "metric-space JSON document")->required();

    // ---- spectrum ----------------------------------------------------
    auto* spectrum_cmd = app.add_subcommand("spectrum", "lengths with nonempty chain sets");
    SpaceSource spectrum_src;
    spectrum_src.attach(spectrum_cmd);
    std::size_t spectrum_n = 2;
    std::string spectrum_pair;
    bool spectrum_all = false;
    spectrum_cmd->add_option("--n", spectrum_n, "chain degree")->required();
    spectrum_cmd->add_option("--pair", spectrum_pair, "endpoint pair a,b");
    spectrum_cmd->add_flag("--all-pairs", spectrum_all, "every ordered pair");

    // ---- homology ----------------------------------------------------
    auto* homology_cmd = app.add_subcommand("homology", "magnitude homology groups");
    SpaceSource homology_src;
    homology_src.attach(homology_cmd);
    std::size_t homology_n = 2;
    std::vector<std::string> homology_lengths;
    bool homology_spectrum = false, homology_all = false, homology_total_flag = false;
    std::string homology_pair;
    homology_cmd->add_option("--n", homology_n, "homology degree")->required();
    homology_cmd->add_option("--length", homology_lengths, "length(s) l as p/q");
    homology_cmd->add_flag("--spectrum", homology_spectrum, "iterate the whole length spectrum");
    homology_cmd->add_option("--pair", homology_pair, "endpoint pair a,b");
    homology_cmd->add_flag("--all-pairs", homology_all, "every ordered pair");
    homology_cmd->add_flag("--total", homology_total_flag, "also report the direct sum H^l_n(X)");

    // ---- complex-a ----------------------------------------------------
    auto* ca_cmd = app.add_subcommand("complex-a", "the between-point simplicial complex A(a,b)");
    SpaceSource ca_src;
    ca_src.attach(ca_cmd);
    std::string ca_pair;
    std::size_t ca_max_n = 4;
    ca_cmd->add_option("--pair", ca_pair, "endpoint pair a,b")->required();
    ca_cmd->add_option("--max-n", ca_max_n, "top reduced-homology degree to report");

    // ---- complex-b ----------------------------------------------------
    auto* cb_cmd = app.add_subcommand("complex-b", "the 1-dimensional complex B^l(a,b)");
    SpaceSource cb_src;
    cb_src.attach(cb_cmd);
    std::string cb_pair, cb_length;
    cb_cmd->add_option("--pair", cb_pair, "endpoint pair a,b")->required();
    cb_cmd->add_option("--length", cb_length, "length l > d(a,b)")->required();

    // ---- spectral ------------------------------------------------------
    auto* sp_cmd = app.add_subcommand("spectral", "smoothness spectral sequence pages");
    SpaceSource sp_src;
    sp_src.attach(sp_cmd);
    std::string sp_pair, sp_length;
    std::size_t sp_max_n = 4, sp_max_r = 3;
    sp_cmd->add_option("--pair", sp_pair, "endpoint pair a,b")->required();
    sp_cmd->add_option("--length", sp_length, "length l")->required();
    sp_cmd->add_option("--max-n", sp_max_n, "top degree");
    sp_cmd->add_option("--max-r", sp_max_r, "last page to print");

    // ---- oracles -------------------------------------------------------
    auto* or_cmd = app.add_subcommand("oracles", "cross-check homology against A, B, and E^inf");
    SpaceSource or_src;
    or_src.attach(or_cmd);
    std::size_t or_max_n = 3;
    or_cmd->add_option("--max-n", or_max_n, "top degree for the convergence rows");

    // ---- graph ----------------------------------------------------------
    auto* graph_cmd = app.add_subcommand("graph", "metric-graph computations");
    graph_cmd->require_subcommand(1);
    std::string graph_path;
    graph_cmd->add_option("input", graph_path, "metric-graph JSON document")->required();

    auto* gg = graph_cmd->add_subcommand("geodesics", "enumerate all geodesics of a pair");
    std::string gg_pair;
    gg->add_option("--pair", gg_pair, "pair like v:0,v:7")->required();

    auto* gp = graph_cmd->add_subcommand("pi0", "geodesic classes of a pair");
    std::string gp_pair;
    gp->add_option("--pair", gp_pair, "pair like v:0,v:7")->required();

    auto* gd = graph_cmd->add_subcommand("distance", "exact distance between two points");
    std::string gd_pair;
    gd->add_option("--pair", gd_pair, "pair like v:0,e:2@1/4")->required();

    auto* gn = graph_cmd->add_subcommand("nu-f", "intersection invariant of a 3-cycle");
    std::string gn_pair, gn_cycle, gn_through, gn_probes;
    gn->add_option("--pair", gn_pair, "endpoints of the reference geodesic")->required();
    gn->add_option("--cycle", gn_cycle, "JSON file with the formal sum")->required();
    gn->add_option("--through", gn_through,
                   "points the reference geodesic must pass through (comma list)");
    gn->add_option("--probes", gn_probes,
                   "probe pairs for an eager uniqueness check (all-vertices or a ;-list)");

    auto* gb = graph_cmd->add_subcommand("nonbranching", "certify the non-branching assumption");
    std::string gb_pairs = "all-vertices";
    gb->add_option("--pairs", gb_pairs, "all-vertices or v:0,v:1;v:2,v:3");

    auto* gr = graph_cmd->add_subcommand("gamma-rank", "rank over a finite anchor set");
    std::string gr_length, gr_anchors, gr_start;
    std::size_t gr_q = 1;
    gr->add_option("--length", gr_length, "total length l")->required();
    gr->add_option("--q", gr_q, "half the homology degree (n = 2q)")->required();
    gr->add_option("--anchors", gr_anchors, "comma list of anchor points")->required();
    gr->add_option("--start", gr_start, "pin the first anchor of every tuple");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate_cmd) {
            const auto m = metric_space_from_json(load_json(validate_path));
            const auto report = validate_metric(m);
            Json out{{"command", "validate"}, {"ok", report.ok}};
            if (!report.ok) {
                out["reason"] = report.reason;
                out["i"] = report.i;
                out["j"] = report.j;
                out["k"] = report.k;
            }
            emit(out, format);
            return report.ok ? 0 : 1;
        }

        if (*spectrum_cmd) {
            const auto m = spectrum_src.load();
            Json rows = Json::array();
            for (const auto& [a, b] : selected_pairs(m, spectrum_pair, spectrum_all)) {
                Json lengths = Json::array();
                for (const auto& l : length_spectrum(m, spectrum_n, a, b))
                    lengths.push_back(format_rational(l));
                rows.push_back({{"a", a}, {"b", b}, {"lengths", std::move(lengths)}});
            }
            emit(Json{{"command", "spectrum"}, {"n", spectrum_n}, {"rows", std::move(rows)}},
                 format);
            return 0;
        }

        if (*homology_cmd) {
            if (homology_lengths.empty() && !homology_spectrum)
                throw std::runtime_error("give --length or --spectrum; no default is guessed");
            const auto m = homology_src.load();
            const auto pairs = selected_pairs(m, homology_pair, homology_all);
            struct Job {
                PointId a, b;
                Rational length;
            };
            std::vector<Job> jobs;
            std::set<Rational> all_lengths;
            for (const auto& [a, b] : pairs) {
                std::set<Rational> lengths;
                if (homology_spectrum)
                    for (const auto& l : length_spectrum(m, homology_n, a, b)) lengths.insert(l);
                for (const auto& text : homology_lengths) lengths.insert(parse_rational(text));
                for (const auto& l : lengths) {
                    jobs.push_back({a, b, l});
                    all_lengths.insert(l);
                }
            }
            std::vector<Json> rows(jobs.size());
            parallel_for(jobs.size(), [&](std::size_t i) {
                rows[i] = homology_row(homology_n, jobs[i].length, jobs[i].a, jobs[i].b,
                                       homology(m, homology_n, jobs[i].length, jobs[i].a,
                                                jobs[i].b));
            });
            Json out{{"command", "homology"}, {"n", homology_n}};
            out["rows"] = rows;
            if (homology_total_flag) {
                Json totals = Json::array();
                for (const auto& l : all_lengths) {
                    Json t = homology_group_to_json(homology_total(m, homology_n, l));
                    t["length"] = format_rational(l);
                    totals.push_back(std::move(t));
                }
                out["totals"] = std::move(totals);
            }
            emit(out, format);
            return 0;
        }

        if (*ca_cmd) {
            const auto m = ca_src.load();
            const auto [a, b] = parse_pair(ca_pair);
            const auto complex = build_A(m, a, b);
            Json out{{"command", "complex-a"}};
            out["complex"] = complex_a_to_json(complex);
            Json rows = Json::array();
            for (std::size_t k = 0; k + 2 <= ca_max_n; ++k) {
                Json row = homology_group_to_json(reduced_homology_A(complex, k));
                row["k"] = k;
                rows.push_back(std::move(row));
            }
            out["reduced_homology"] = std::move(rows);
            emit(out, format);
            return 0;
        }

        if (*cb_cmd) {
            const auto m = cb_src.load();
            const auto [a, b] = parse_pair(cb_pair);
            const auto complex = build_B(m, parse_rational(cb_length), a, b);
            Json out{{"command", "complex-b"}};
            out["complex"] = complex_b_to_json(complex);
            out["h0"] = homology_group_to_json(h0_B(complex));
            emit(out, format);
            return 0;
        }

        if (*sp_cmd) {
            const auto m = sp_src.load();
            const auto [a, b] = parse_pair(sp_pair);
            const Rational length = parse_rational(sp_length);
            Json out{{"command", "spectral"},
                     {"length", format_rational(length)},
                     {"a", a},
                     {"b", b}};
            auto page = e1_page(m, length, a, b, sp_max_n);
            Json pages = Json::array();
            for (std::size_t r = 1; r <= sp_max_r; ++r) {
                if (r > 1) page = page_advance(page);
                Json entries = Json::array();
                for (const auto& [key, entry] : page.entries) {
                    Json e{{"p", key.first}, {"q", key.second}, {"rank", entry.rank}};
                    Json torsion = Json::array();
                    for (const Int& t : entry.torsion) torsion.push_back(t.str());
                    e["torsion"] = std::move(torsion);
                    if (r == 1) {
                        Json blocks = Json::array();
                        for (const auto& block : frame_blocks(*page.complex, key.first,
                                                              key.second)) {
                            Json lens = Json::array();
                            for (const auto& l : block.length_tuple)
                                lens.push_back(format_rational(l));
                            blocks.push_back({{"frame", block.frame_chain.points},
                                              {"lengths", std::move(lens)},
                                              {"size", block.chain_indices.size()}});
                        }
                        e["blocks"] = std::move(blocks);
                    }
                    entries.push_back(std::move(e));
                }
                pages.push_back({{"r", r}, {"entries", std::move(entries)}});
            }
            out["pages"] = std::move(pages);
            const auto conv = convergence_check(m, length, a, b, sp_max_n);
            Json rows = Json::array();
            for (const auto& row : conv.rows)
                rows.push_back({{"n", row.n},
                                {"graded_rank_sum", row.graded_rank_sum},
                                {"direct_rank", row.direct_rank},
                                {"match", row.match}});
            out["convergence"] = std::move(rows);
            emit(out, format);
            return conv.ok ? 0 : 1;
        }

        if (*or_cmd) return run_oracles(or_src.load(), or_max_n, format);

        if (*graph_cmd) {
            const auto g = metric_graph_from_json(load_json(graph_path));
            if (*gd) {
                const auto pts = parse_point_list(g, gd_pair);
                if (pts.size() != 2) throw std::runtime_error("--pair needs two points");
                emit(Json{{"command", "graph-distance"},
                          {"distance", format_rational(graph_distance(g, pts[0], pts[1]))}},
                     format);
                return 0;
            }
            if (*gg) {
                const auto pts = parse_point_list(g, gg_pair);
                if (pts.size() != 2) throw std::runtime_error("--pair needs two points");
                const auto paths = enumerate_geodesics(g, pts[0], pts[1]);
                Json rows = Json::array();
                for (const auto& p : paths) rows.push_back(geodesic_to_json(p));
                emit(Json{{"command", "graph-geodesics"},
                          {"count", paths.size()},
                          {"rows", std::move(rows)}},
                     format);
                return 0;
            }
            if (*gp) {
                const auto pts = parse_point_list(g, gp_pair);
                if (pts.size() != 2) throw std::runtime_error("--pair needs two points");
                const auto classes = pi0_geodesics(g, pts[0], pts[1]);
                emit(Json{{"command", "graph-pi0"},
                          {"geodesics", classes.geodesics.size()},
                          {"classes", classes.class_count},
                          {"class_index", classes.class_index},
                          {"h2_rank", classes.class_count - 1}},
                     format);
                return 0;
            }
            if (*gn) {
                const auto pts = parse_point_list(g, gn_pair);
                if (pts.size() != 2) throw std::runtime_error("--pair needs two points");
                if (!gn_probes.empty()) {
                    const auto probe_report = check_unique_between_geodesics(
                        g, pts[0], pts[1], parse_pair_list(g, gn_probes));
                    if (!probe_report.ok)
                        throw std::runtime_error(
                            "uniqueness probe failed: a probed pair has " +
                            std::to_string(probe_report.count) + " geodesics");
                }
                const auto paths = enumerate_geodesics(g, pts[0], pts[1]);
                const GeodesicPath* reference = nullptr;
                if (gn_through.empty()) {
                    reference = &paths.front();
                } else {
                    const auto through = parse_point_list(g, gn_through);
                    for (const auto& p : paths) {
                        bool hits_all = true;
                        for (const auto& pt : through) hits_all = hits_all && on_path(g, p, pt);
                        if (hits_all) {
                            reference = &p;
                            break;
                        }
                    }
                    if (reference == nullptr)
                        throw std::runtime_error("no geodesic passes through the given points");
                }
                const auto cycle = graph_formal_sum_from_json(g, load_json(gn_cycle));
                emit(Json{{"command", "graph-nu-f"},
                          {"reference", geodesic_to_json(*reference)},
                          {"nu", nu_f(g, *reference, cycle).str()}},
                     format);
                return 0;
            }
            if (*gb) {
                const auto report = check_non_branching(g, parse_pair_list(g, gb_pairs));
                Json out{{"command", "graph-nonbranching"}, {"ok", report.ok}};
                if (!report.ok) {
                    out["pair"] = Json::array(
                        {graph_point_to_json(report.p), graph_point_to_json(report.q)});
                    out["first"] = report.first;
                    out["second"] = report.second;
                    out["t"] = format_rational(report.t);
                }
                emit(out, format);
                return report.ok ? 0 : 1;
            }
            if (*gr) {
                std::optional<GraphPoint> start;
                if (!gr_start.empty()) start = parse_graph_point(g, gr_start);
                const Int rank = nonbranching_rank(g, parse_rational(gr_length), gr_q,
                                                   parse_point_list(g, gr_anchors), start);
                emit(Json{{"command", "graph-gamma-rank"},
                          {"q", gr_q},
                          {"length", gr_length},
                          {"rank", rank.str()}},
                     format);
                return 0;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
