#include "nlgap/lab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

#include "nlgap/embedding.hpp"
#include "nlgap/error.hpp"
#include "nlgap/gamma.hpp"
#include "nlgap/graph.hpp"
#include "nlgap/io.hpp"
#include "nlgap/lab/config.hpp"
#include "nlgap/lab/experiments.hpp"
#include "nlgap/lab/records.hpp"
#include "nlgap/metric.hpp"
#include "nlgap/spectral.hpp"

namespace nlgap::lab {

namespace {

const std::vector<std::string> kCommands{"gen", "spectrum", "gamma", "gamma-sup", "embed", "experiment"};

std::string csv_line(const std::vector<Value>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += format_value(cells[i]);
    }
    return line + '\n';
}

Value opt(const std::optional<double>& x) { return x ? Value(*x) : Value(std::monostate{}); }

Value count(std::size_t x) { return Value(static_cast<std::int64_t>(x)); }

/// Writes to `path`, or to `out` when the path is empty.
void deliver(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

DistanceMatrix host_metric(const std::string& path) {
    const Graph h = read_edge_list_file(path);
    return all_pairs_distances(h);
}

struct GenArgs {
    std::size_t n = 0;
    std::size_t d = 0;
    std::uint64_t seed = 1;
    std::string out;
};

struct SupArgs {
    std::string graph;
    std::string host;
    std::size_t restarts = 4;
    std::size_t samples = 100;
    std::size_t max_moves = 100'000;
    double delta = 0.0;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::string out;
};

struct EmbedArgs {
    std::string host;
    std::uint64_t seed = 1;
    std::size_t repetitions = 0;
    std::string out;
};

struct ExperimentArgs {
    std::string name;
    std::string config;
    std::vector<std::string> settings;
    std::uint64_t seed = 1;
    std::size_t trials = 1;
    std::size_t workers = 1;
    std::string out;
};

int run_gen(const GenArgs& a, std::ostream& out) {
    Rng rng(a.seed);
    const SimpleSample s = sample_simple_regular(a.n, a.d, rng);
    deliver(a.out, write_edge_list(s.graph), out);
    return kExitOk;
}

int run_spectrum(const std::string& graph_path, const std::string& out_path, std::ostream& out) {
    const Graph g = read_edge_list_file(graph_path);
    const Spectrum s = eigenvalues(normalized_laplacian(g));
    const auto bound = spectral_diameter_bound(s, g.vertex_count());
    std::string text = "lambda1,lambda_max,lambda_bar,zero_multiplicity,residual,diameter_bound\n";
    text += csv_line({s.lambda1(), s.largest(), lambda_bar(s), count(s.zero_multiplicity(1e-8)), s.residual,
                      bound ? count(*bound) : Value(std::monostate{})});
    if (!out_path.empty()) {
        std::string values = "index,eigenvalue\n";
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) values += csv_line({count(i), s.eigenvalues[i]});
        write_text_file(out_path, values);
    }
    out << text;
    return kExitOk;
}

int run_gamma(const std::string& graph_path, const std::string& host_path, const std::string& map_path,
              std::ostream& out) {
    const Graph g = read_edge_list_file(graph_path);
    const DistanceMatrix dist = host_metric(host_path);
    const VertexMap f = read_vertex_map(read_text_file(map_path));
    const GammaReport r = gamma_value(g, dist, f);
    out << "gamma,pair_sum,edge_sum\n" << csv_line({opt(r.gamma), r.pair_sum, r.edge_sum});
    return kExitOk;
}

int run_gamma_sup(const SupArgs& a, bool has_delta, std::ostream& out) {
    const Graph g = read_edge_list_file(a.graph);
    const DistanceMatrix dist = host_metric(a.host);
    SearchStrategy s;
    s.restarts = a.restarts;
    s.samples = a.samples;
    s.max_moves = a.max_moves;
    if (has_delta) s.delta = a.delta;
    s.seed = a.seed;
    s.workers = a.workers;
    const SupEstimate est = gamma_sup_estimate(g, dist, s);
    out << "gamma,pair_sum,edge_sum,best_sampled,evaluated_samples,exhaustive\n"
        << csv_line({opt(est.report.gamma), est.report.pair_sum, est.report.edge_sum, opt(est.best_sampled),
                     count(est.evaluated_samples), count(est.exhaustive ? 1 : 0)});
    if (!a.out.empty() && est.best) write_text_file(a.out, write_vertex_map(*est.best));
    return kExitOk;
}

int run_embed(const EmbedArgs& a, bool has_repetitions, std::ostream& out) {
    const DistanceMatrix dist = host_metric(a.host);
    Rng rng(a.seed);
    const Embedding e = bourgain_embed(dist, rng, has_repetitions ? std::optional(a.repetitions) : std::nullopt);
    const DistortionReport r = distortion(dist, e);
    out << "dimension,max_expansion,max_contraction,distortion,collapsed_pairs\n"
        << csv_line({count(e.dimension()), r.max_expansion, r.max_contraction, r.distortion,
                     count(r.collapsed_pairs)});
    if (!a.out.empty()) write_text_file(a.out, e.to_tsv());
    return kExitOk;
}

int run_experiment_command(const ExperimentArgs& a, const CLI::App& sub, std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg = a.config.empty() ? ExperimentConfig{} : parse_config(read_text_file(a.config));
    cfg.name = a.name;
    for (const std::string& kv : a.settings) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw InvalidArgument("--set expects key=value, got '" + kv + "'");
        apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (sub.count("--seed")) cfg.seed = a.seed;
    if (sub.count("--trials")) cfg.trials = a.trials;
    if (sub.count("--workers")) cfg.workers = a.workers;
    if (sub.count("--out")) cfg.out = a.out;

    const ExperimentResult result = run_experiment(cfg);
    if (cfg.out.empty()) {
        out << records_csv(result) << summary_csv(result);
    } else {
        emit_results(result, cfg.out);
    }
    for (const std::string& f : result.failures()) err << "check failed: " << f << '\n';
    return result.passed() ? kExitOk : kExitChecksFailed;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    if (argc >= 2) {
        const std::string first = argv[1];
        if (!first.empty() && first[0] != '-' &&
            std::find(kCommands.begin(), kCommands.end(), first) == kCommands.end()) {
            err << "unknown subcommand '" << first << "'\n";
            return kExitUnknownCommand;
        }
    }

    CLI::App app{"Nonlinear spectral gap toolkit"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Sample a simple random d-regular graph");
    gen_cmd->add_option("--n", gen.n, "vertices")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--d", gen.d, "degree")->required();
    gen_cmd->add_option("--seed", gen.seed, "seed");
    gen_cmd->add_option("--out", gen.out, "edge-list output (stdout if omitted)");

    std::string spectrum_graph;
    std::string spectrum_out;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Normalized Laplacian spectrum of a graph");
    spectrum_cmd->add_option("--graph", spectrum_graph, "edge-list file")->required();
    spectrum_cmd->add_option("--out", spectrum_out, "eigenvalue CSV output");

    std::string gamma_graph;
    std::string gamma_host;
    std::string gamma_map;
    auto* gamma_cmd = app.add_subcommand("gamma", "gamma(G, d_H, f) for one map");
    gamma_cmd->add_option("--graph", gamma_graph, "edge list of G")->required();
    gamma_cmd->add_option("--host", gamma_host, "edge list of H")->required();
    gamma_cmd->add_option("--map", gamma_map, "vertex map file")->required();

    SupArgs sup;
    auto* sup_cmd = app.add_subcommand("gamma-sup", "Search for the largest gamma over maps");
    sup_cmd->add_option("--graph", sup.graph, "edge list of G")->required();
    sup_cmd->add_option("--host", sup.host, "edge list of H")->required();
    sup_cmd->add_option("--restarts", sup.restarts, "hill-climb restarts");
    sup_cmd->add_option("--samples", sup.samples, "random samples");
    sup_cmd->add_option("--max-moves", sup.max_moves, "move budget per climb");
    auto* delta_opt = sup_cmd->add_option("--delta", sup.delta, "restrict to F(delta)")->check(CLI::PositiveNumber);
    sup_cmd->add_option("--seed", sup.seed, "seed");
    sup_cmd->add_option("--workers", sup.workers, "threads")->check(CLI::PositiveNumber);
    sup_cmd->add_option("--out", sup.out, "best map output");

    EmbedArgs embed;
    auto* embed_cmd = app.add_subcommand("embed", "Bourgain embedding of a graph metric");
    embed_cmd->add_option("--host", embed.host, "edge list of H")->required();
    embed_cmd->add_option("--seed", embed.seed, "seed");
    auto* reps_opt = embed_cmd->add_option("--repetitions", embed.repetitions, "subsets per scale")
                         ->check(CLI::PositiveNumber);
    embed_cmd->add_option("--out", embed.out, "coordinates output (TSV)");

    ExperimentArgs exp;
    auto* exp_cmd = app.add_subcommand("experiment", "Run a named experiment");
    exp_cmd->add_option("name", exp.name, "experiment name")->required()->check(CLI::IsMember(experiment_names()));
    exp_cmd->add_option("--config", exp.config, "key = value config file");
    exp_cmd->add_option("--set", exp.settings, "override one config key (key=value)");
    exp_cmd->add_option("--seed", exp.seed, "master seed");
    exp_cmd->add_option("--trials", exp.trials, "trials per parameter combination")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--workers", exp.workers, "threads")->check(CLI::PositiveNumber);
    exp_cmd->add_option("--out", exp.out, "records CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        std::ostringstream o;
        std::ostringstream eo;
        const int code = app.exit(e, o, eo);
        out << o.str();
        err << eo.str();
        return code;
    } catch (const CLI::ConversionError& e) {
        err << e.what() << '\n';
        return kExitBadValue;
    } catch (const CLI::ValidationError& e) {
        err << e.what() << '\n';
        return kExitBadValue;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*gen_cmd) return run_gen(gen, out);
        if (*spectrum_cmd) return run_spectrum(spectrum_graph, spectrum_out, out);
        if (*gamma_cmd) return run_gamma(gamma_graph, gamma_host, gamma_map, out);
        if (*sup_cmd) return run_gamma_sup(sup, delta_opt->count() > 0, out);
        if (*embed_cmd) return run_embed(embed, reps_opt->count() > 0, out);
        if (*exp_cmd) return run_experiment_command(exp, *exp_cmd, out, err);
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const InvalidArgument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return kExitBadValue;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace nlgap::lab
