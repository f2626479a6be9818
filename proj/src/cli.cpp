#include "gstate/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gstate/complete_fast.hpp"
#include "gstate/constructions.hpp"
#include "gstate/errors.hpp"
#include "gstate/io.hpp"
#include "gstate/rankdp.hpp"
#include "gstate/statevector.hpp"
#include "gstate/transform.hpp"
#include "gstate/width.hpp"

namespace gstate {

std::optional<std::pair<std::string, Graph>> canonical_witness(size_t n, size_t k) {
    if (k >= n || (n * k) % 2) {
        return std::nullopt;
    }
    if (auto name = easy_family_name(n, k)) {
        return std::make_pair(*name, build_regular_easy(n, k));
    }
    if (auto plan = try_plan_hard_family(n, k)) {
        return std::make_pair(family_name(plan->kind), build_hard_family(*plan));
    }
    return std::nullopt;
}

std::vector<PhaseScanRow> phase_scan(size_t n, size_t k_min, size_t k_max, size_t exact_limit, int effort,
                                     uint64_t seed) {
    std::vector<PhaseScanRow> rows;
    for (size_t k = k_min; k <= k_max && k < n; k++) {
        if ((n * k) % 2 == 0) {
            PhaseScanRow row;
            row.k = k;
            row.n = n;
            rows.push_back(row);
        }
    }

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < rows.size(); i = next++) {
            auto &row = rows[i];
            auto start = std::chrono::steady_clock::now();
            auto witness = canonical_witness(row.n, row.k);
            if (!witness) {
                row.family = "none";
                continue;
            }
            row.family = witness->first;
            auto report = entanglement_width(witness->second, exact_limit, effort, seed);
            row.width = report.value;
            row.exact = report.exact;
            row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
        }
    };
    size_t threads = std::min<size_t>(rows.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (size_t t = 1; t < threads; t++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    return rows;
}

std::string phase_scan_csv(const std::vector<PhaseScanRow> &rows, bool timing) {
    std::ostringstream out;
    out << "k,n,family,width,exact,runtime_ms\n";
    for (const auto &r : rows) {
        out << r.k << "," << r.n << "," << r.family << ",";
        if (r.width) {
            out << *r.width;
        }
        out << "," << (r.exact ? "true" : "false") << ",";
        out << (timing ? r.runtime_ms : 0) << "\n";
    }
    return out.str();
}

std::string phase_scan_json(const std::vector<PhaseScanRow> &rows, bool timing) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &r : rows) {
        nlohmann::json row = {{"k", r.k},
                              {"n", r.n},
                              {"family", r.family},
                              {"width", nullptr},
                              {"exact", r.exact},
                              {"runtime_ms", timing ? r.runtime_ms : 0}};
        if (r.width) {
            row["width"] = *r.width;
        }
        out.push_back(row);
    }
    return out.dump(2) + "\n";
}

namespace {

/// Verification failure: reported, exit code 1.
struct VerificationFailed {};

size_t env_limit(const char *name, size_t fallback) {
    const char *value = std::getenv(name);
    if (!value || !*value) {
        return fallback;
    }
    try {
        size_t pos = 0;
        unsigned long long v = std::stoull(value, &pos);
        if (pos == std::string(value).size()) {
            return static_cast<size_t>(v);
        }
    } catch (const std::exception &) {
    }
    throw InvalidInput(std::string(name) + " must be a non-negative integer, got '" + value + "'");
}

Graph family_graph(const std::string &family, size_t n, size_t k, size_t m, size_t rows, size_t cols) {
    auto need = [&](bool ok, const std::string &what) {
        if (!ok) {
            throw InvalidInput("family '" + family + "' requires " + what);
        }
    };
    if (family == "matching") {
        need(n >= 2 && n % 2 == 0, "an even --n >= 2");
        return build_regular_easy(n, 1);
    }
    if (family == "cycle") {
        need(n >= 3, "--n >= 3");
        Graph g(n);
        for (size_t v = 0; v < n; v++) {
            g.set_edge(v, (v + 1) % n, true);
        }
        return g;
    }
    if (family == "complete") {
        need(n >= 1, "--n >= 1");
        return complement(Graph(n));
    }
    if (family == "complement-matching") {
        need(n >= 2 && n % 2 == 0, "an even --n >= 2");
        return complement(build_regular_easy(n, 1));
    }
    if (family == "complement-cycle") {
        need(n >= 3, "--n >= 3");
        return complement(family_graph("cycle", n, 0, 0, 0, 0));
    }
    if (family == "easy") {
        return build_regular_easy(n, k);
    }
    if (family == "grid" || family == "square-torus" || family == "hex" || family == "hex-torus") {
        if (m && !rows && !cols) {
            rows = cols = m;
        }
        need(rows >= 1 && cols >= 1, "--rows and --cols (or --m)");
        TorusSpec spec{rows, cols, LatticeKind::Square, Boundary::Open};
        if (family == "square-torus" || family == "hex-torus") {
            spec.boundary = Boundary::Torus;
        }
        if (family == "hex" || family == "hex-torus") {
            spec.lattice = LatticeKind::Hexagonal;
        }
        return build_lattice(spec);
    }
    if (family == "double-torus") {
        return build_double_torus(m, k);
    }
    if (family == "hard") {
        return build_hard_family(n, k);
    }
    throw InvalidInput("unknown family '" + family + "'");
}

std::string render_graph(const Graph &g, const std::string &format) {
    if (format == "json") {
        return graph_to_json(g).dump() + "\n";
    }
    if (format == "edgelist") {
        return to_edge_list(g);
    }
    if (format == "dot") {
        return to_dot(g);
    }
    throw InvalidInput("unknown graph format '" + format + "'");
}

void emit(const std::string &text, const std::string &path, std::ostream &out) {
    if (path.empty()) {
        out << text;
    } else {
        write_file(path, text);
    }
}

Graph load_graph(const std::string &path) { return parse_graph(read_file(path)); }

LocalRotations load_rotations(const std::string &path, size_t n) {
    if (path.empty()) {
        return LocalRotations(n);
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error &e) {
        throw InvalidInput(std::string("malformed rotations JSON: ") + e.what());
    }
    auto rot = rotations_from_json(j);
    if (rot.size() != n) {
        throw InvalidInput("rotations list has " + std::to_string(rot.size()) + " entries for " + std::to_string(n) +
                           " qubits");
    }
    return rot;
}

RankDecomposition load_or_build_decomposition(const Graph &g, const std::string &path, int effort, uint64_t seed) {
    if (path.empty()) {
        return heuristic_rank_decomposition(g, effort, seed).decomposition;
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error &e) {
        throw InvalidInput(std::string("malformed decomposition JSON: ") + e.what());
    }
    return decomposition_from_json(j, g);
}

bool is_complete(const Graph &g) { return is_k_regular(g, g.num_vertices() == 0 ? 0 : g.num_vertices() - 1); }

RewriteStep parse_step(const std::string &text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw InvalidInput("step '" + text + "' must look like lc:LABEL or delete:LABEL");
    }
    return {parse_rewrite_kind(text.substr(0, colon)), text.substr(colon + 1)};
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"k-regular graph states: construction, simulation, width and reductions", "gstate"};
    app.require_subcommand(1);

    size_t oracle_limit = kDefaultOracleLimit;
    size_t exact_limit = kDefaultExactLimit;
    try {
        oracle_limit = env_limit("GSTATE_ORACLE_LIMIT", oracle_limit);
        exact_limit = env_limit("GSTATE_EXACT_LIMIT", exact_limit);
    } catch (const InvalidInput &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    // shared option storage
    std::string family, format = "json", out_path, graph_path, rotations_path, engine = "oracle", x_bits,
                            decomposition_path;
    size_t n = 0, k = 0, m = 0, rows = 0, cols = 0, count = 1, random_trials = 100, k_min = 1, k_max = 0;
    uint64_t seed = 0;
    int effort = 2;
    double edge_phase = std::numbers::pi;
    std::vector<std::string> steps;
    bool no_timing = false;

    auto *construct = app.add_subcommand("construct", "build a graph family");
    construct->add_option("--family", family, "matching, cycle, complete, complement-matching, complement-cycle, "
                                              "easy, grid, square-torus, hex, hex-torus, double-torus, hard")
        ->required();
    construct->add_option("--n", n, "number of vertices");
    construct->add_option("--k", k, "degree");
    construct->add_option("--m", m, "side length");
    construct->add_option("--rows", rows);
    construct->add_option("--cols", cols);
    construct->add_option("--format", format)->check(CLI::IsMember({"json", "edgelist", "dot"}));
    construct->add_option("--out", out_path);

    auto *prob = app.add_subcommand("prob", "exact outcome probability");
    prob->add_option("--graph", graph_path)->required();
    prob->add_option("--rotations", rotations_path, "JSON list of {theta, phi}; identity when omitted");
    prob->add_option("--engine", engine)->check(CLI::IsMember({"oracle", "complete-fast", "rankdp"}));
    prob->add_option("--x", x_bits, "outcome bits, qubit 0 first")->required();
    prob->add_option("--edge-phase", edge_phase);
    prob->add_option("--decomposition", decomposition_path);
    prob->add_option("--oracle-limit", oracle_limit);
    prob->add_option("--effort", effort);
    prob->add_option("--seed", seed);

    auto *samp = app.add_subcommand("sample", "seeded measurement samples");
    samp->add_option("--graph", graph_path)->required();
    samp->add_option("--rotations", rotations_path);
    samp->add_option("--engine", engine)->check(CLI::IsMember({"oracle", "rankdp"}));
    samp->add_option("--count", count);
    samp->add_option("--seed", seed);
    samp->add_option("--decomposition", decomposition_path);
    samp->add_option("--oracle-limit", oracle_limit);
    samp->add_option("--effort", effort);

    auto *width = app.add_subcommand("width", "rank width (entanglement width in bits)");
    width->add_option("--graph", graph_path)->required();
    width->add_option("--exact-limit", exact_limit);
    width->add_option("--effort", effort);
    width->add_option("--seed", seed);
    width->add_option("--out", out_path, "write the decomposition JSON here");

    auto *transform = app.add_subcommand("transform", "apply lc / delete steps");
    transform->add_option("--graph", graph_path)->required();
    transform->add_option("--step", steps, "lc:LABEL or delete:LABEL, applied in order")->required();
    transform->add_option("--format", format)->check(CLI::IsMember({"json", "edgelist", "dot"}));
    transform->add_option("--out", out_path);

    auto *verify = app.add_subcommand("verify", "run a reduction or identity check");
    verify->require_subcommand(1);
    auto *v_duality = verify->add_subcommand("duality", "complement of the m x m grid to the (m-1) x (m-1) grid");
    v_duality->add_option("--m", m)->required();
    v_duality->add_option("--out", out_path, "write the certificate JSON here");
    auto *v_lc = verify->add_subcommand("lc", "local complementation as local Cliffords");
    auto *v_del = verify->add_subcommand("deletion", "deletion as a Z measurement");
    for (auto *sub : {v_lc, v_del}) {
        sub->add_option("--random", random_trials, "number of random (graph, vertex) trials");
        sub->add_option("--n", n, "vertices per random graph")->required();
        sub->add_option("--seed", seed);
        sub->add_option("--oracle-limit", oracle_limit);
    }
    auto *v_hard = verify->add_subcommand("hard-reduction", "hard family down to an open lattice");
    v_hard->add_option("--n", n)->required();
    v_hard->add_option("--k", k)->required();
    v_hard->add_option("--out", out_path, "write the certificate JSON here");

    auto *scan = app.add_subcommand("phase-scan", "width of the canonical witness for each k");
    scan->add_option("--n", n)->required();
    scan->add_option("--k-min", k_min);
    scan->add_option("--k-max", k_max, "defaults to n-1");
    scan->add_option("--exact-limit", exact_limit);
    scan->add_option("--effort", effort);
    scan->add_option("--seed", seed);
    scan->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    scan->add_flag("--no-timing", no_timing, "report runtime_ms as 0 for byte-stable output");
    scan->add_option("--out", out_path);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (construct->parsed()) {
            Graph g = family_graph(family, n, k, m, rows, cols);
            emit(render_graph(g, format), out_path, out);
            return 0;
        }

        if (prob->parsed()) {
            Graph g = load_graph(graph_path);
            auto rot = load_rotations(rotations_path, g.num_vertices());
            auto x = parse_outcome(x_bits);
            if (x.size() != g.num_vertices()) {
                throw InvalidInput("outcome has " + std::to_string(x.size()) + " bits for " +
                                   std::to_string(g.num_vertices()) + " qubits");
            }
            double p = 0;
            if (engine == "oracle") {
                p = std::norm(amplitude(g, functional_from_rotations(rot, x), oracle_limit, edge_phase));
            } else if (engine == "complete-fast") {
                if (!is_complete(g)) {
                    throw InvalidInput("engine complete-fast requires a complete graph");
                }
                p = probability_complete(rot, x, edge_phase);
            } else {
                if (edge_phase != std::numbers::pi) {
                    throw InvalidInput("engine rankdp supports only the CZ edge phase (pi)");
                }
                auto d = load_or_build_decomposition(g, decomposition_path, effort, seed);
                p = probability_via_decomposition(g, d, rot, x);
            }
            out << "{\"engine\": \"" << engine << "\", \"x\": \"" << x_bits << "\", \"p\": " << format_double(p)
                << "}\n";
            return 0;
        }

        if (samp->parsed()) {
            Graph g = load_graph(graph_path);
            auto rot = load_rotations(rotations_path, g.num_vertices());
            std::vector<std::vector<uint8_t>> draws;
            if (engine == "oracle") {
                draws = sample(g, rot, count, seed, oracle_limit);
            } else {
                auto d = load_or_build_decomposition(g, decomposition_path, effort, seed);
                draws = sample_via_chain(g, d, rot, count, seed);
            }
            nlohmann::json outcomes = nlohmann::json::array();
            for (const auto &s : draws) {
                outcomes.push_back(outcome_string(s));
            }
            nlohmann::json result = {{"engine", engine}, {"seed", seed}, {"outcomes", outcomes}};
            out << result.dump() << "\n";
            return 0;
        }

        if (width->parsed()) {
            Graph g = load_graph(graph_path);
            auto report = entanglement_width(g, exact_limit, effort, seed);
            auto dj = decomposition_to_json(report.decomposition, g);
            if (!out_path.empty()) {
                write_file(out_path, dj.dump(2) + "\n");
            }
            nlohmann::json result = {{"width", report.value}, {"exact", report.exact}, {"decomposition", dj}};
            out << result.dump() << "\n";
            return 0;
        }

        if (transform->parsed()) {
            Graph g = load_graph(graph_path);
            std::vector<RewriteStep> parsed;
            for (const auto &s : steps) {
                parsed.push_back(parse_step(s));
            }
            auto cert = apply_pipeline(g, parsed);
            emit(render_graph(cert.final, format), out_path, out);
            return 0;
        }

        if (v_duality->parsed()) {
            auto cert = duality_reduction(m);
            bool pass = replay_matches(cert) && same_labelled_graph(cert.final, duality_expected(m));
            if (!out_path.empty()) {
                write_file(out_path, certificate_to_json(cert).dump(2) + "\n");
            }
            out << "{\"check\": \"duality\", \"m\": " << m << ", \"steps\": " << cert.steps.size()
                << ", \"final_vertices\": " << cert.final.num_vertices() << ", \"pass\": " << bool_str(pass)
                << "}\n";
            if (!pass) {
                throw VerificationFailed{};
            }
            return 0;
        }

        if (v_lc->parsed() || v_del->parsed()) {
            bool lc = v_lc->parsed();
            if (n == 0) {
                throw InvalidInput("--n must be at least 1");
            }
            std::mt19937_64 rng(seed);
            double worst = lc ? 1.0 : 0.0;
            for (size_t t = 0; t < random_trials; t++) {
                Graph g = random_graph(n, 0.5, rng());
                size_t v = static_cast<size_t>(rng() % n);
                if (lc) {
                    worst = std::min(worst, check_lc_unitary(g, v, oracle_limit));
                } else {
                    worst = std::max(worst, check_deletion_projector(g, v, oracle_limit));
                }
            }
            bool pass = lc ? worst >= 1 - 1e-10 : worst <= 1e-10;
            out << "{\"check\": \"" << (lc ? "lc" : "deletion") << "\", \"trials\": " << random_trials
                << ", \"n\": " << n << ", \"seed\": " << seed << ", \""
                << (lc ? "min_fidelity" : "max_residual") << "\": " << format_double(worst)
                << ", \"pass\": " << bool_str(pass) << "}\n";
            if (!pass) {
                throw VerificationFailed{};
            }
            return 0;
        }

        if (v_hard->parsed()) {
            Graph g = build_hard_family(n, k);
            bool regular = is_k_regular(g, k);
            auto red = hard_family_reduction(g);
            bool pass = regular && replay_matches(red.certificate) && red.matches();
            if (!out_path.empty()) {
                write_file(out_path, certificate_to_json(red.certificate).dump(2) + "\n");
            }
            out << "{\"check\": \"hard-reduction\", \"n\": " << n << ", \"k\": " << k << ", \"family\": \""
                << family_name(plan_hard_family(n, k).kind) << "\", \"regular\": " << bool_str(regular)
                << ", \"steps\": " << red.certificate.steps.size()
                << ", \"final_vertices\": " << red.certificate.final.num_vertices()
                << ", \"pass\": " << bool_str(pass) << "}\n";
            if (!pass) {
                throw VerificationFailed{};
            }
            return 0;
        }

        if (scan->parsed()) {
            if (n == 0) {
                throw InvalidInput("--n must be at least 1");
            }
            if (k_max == 0) {
                k_max = n - 1;
            }
            if (k_min > k_max) {
                throw InvalidInput("--k-min exceeds --k-max");
            }
            if (format == "json" && scan->count("--format") == 0) {
                format = "csv";
            }
            auto table = phase_scan(n, k_min, k_max, exact_limit, effort, seed);
            emit(format == "csv" ? phase_scan_csv(table, !no_timing) : phase_scan_json(table, !no_timing), out_path,
                 out);
            return 0;
        }
    } catch (const VerificationFailed &) {
        err << "verification failed\n";
        return 1;
    } catch (const InvalidInput &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace gstate
