// corruptnet: command-line front end for the corruption-detection toolkit.
//
// Exit codes: 0 success, 1 usage error, 2 instance error (assumption
// violations like ImpossibleInstance), 3 work budget exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "corruptnet/certify.hpp"
#include "corruptnet/construct.hpp"
#include "corruptnet/detect.hpp"
#include "corruptnet/errors.hpp"
#include "corruptnet/experiment.hpp"
#include "corruptnet/generate.hpp"
#include "corruptnet/graph.hpp"
#include "corruptnet/puzzle.hpp"
#include "corruptnet/report.hpp"
#include "corruptnet/rng.hpp"

namespace cn = corruptnet;
using nlohmann::json;

namespace {

long long work_budget_from_env(long long fallback) {
    if (const char* env = std::getenv("CORRUPTNET_WORK_BUDGET")) {
        try {
            return std::stoll(env);
        } catch (...) {
            throw cn::UsageError("CORRUPTNET_WORK_BUDGET must be an integer");
        }
    }
    return fallback;
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw cn::UsageError("cannot write output file: " + path);
    out << text;
}

std::pair<long, long> parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) throw std::invalid_argument("no slash");
        const long num = std::stol(text.substr(0, slash));
        const long den = std::stol(text.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("denominator");
        return {num, den};
    } catch (...) {
        throw cn::UsageError("rational must look like p/q, got `" + text + "`");
    }
}

cn::Graph builtin_hard_graph(const std::string& name, int m) {
    std::vector<std::pair<int, int>> edges;
    if (name == "empty") {
    } else if (name == "path") {
        for (int i = 0; i + 1 < m; ++i) edges.emplace_back(i, i + 1);
    } else if (name == "cycle") {
        if (m < 3) throw cn::UsageError("cycle hard graph needs m >= 3");
        for (int i = 0; i < m; ++i) edges.emplace_back(i, (i + 1) % m);
    } else if (name == "matching") {
        for (int i = 0; i + 1 < m; i += 2) edges.emplace_back(i, i + 1);
    } else if (name.rfind("edges:", 0) == 0) {
        return cn::load_graph(name.substr(6));
    } else {
        throw cn::UsageError("hard graph must be empty|path|cycle|matching|edges:FILE");
    }
    return cn::Graph::undirected(m, std::move(edges));
}

cn::World make_world(const cn::Graph& g, std::optional<long> t_size, std::optional<double> t_frac,
                     uint64_t seed) {
    if (t_size.has_value() == t_frac.has_value())
        throw cn::UsageError("pass exactly one of --t-size and --t-frac");
    const long t = t_size ? *t_size : std::llround(*t_frac * g.n);
    if (t < 0 || t > g.n) throw cn::UsageError("|T| out of range");
    cn::Rng rng(seed);
    std::vector<int> ids(g.n);
    for (int i = 0; i < g.n; ++i) ids[i] = i;
    for (long i = 0; i < t; ++i) {
        const long j = i + static_cast<long>(rng.below(g.n - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(t);
    return cn::World::from_truthful(g.n, ids);
}

cn::Adversary make_adversary(const std::string& name, uint64_t seed) {
    if (name == "mirror-confusion") return cn::Adversary::mirror_confusion();
    if (name == "collude-praise") return cn::Adversary::collude_praise();
    if (name == "all-accuse") return cn::Adversary::all_accuse();
    if (name == "random") return cn::Adversary::random_verdicts(seed);
    throw cn::UsageError("adversary must be mirror-confusion|collude-praise|all-accuse|random");
}

std::string detection_text(const cn::DetectionResult& result) {
    std::ostringstream out;
    for (size_t v = 0; v < result.labels.size(); ++v)
        out << v << ' ' << cn::to_string(result.labels[v]) << ' '
            << cn::to_string(result.provenance[v]) << '\n';
    return out.str();
}

json cert_json(const cn::ExpanderCert& cert) {
    json j{{"criterion", cn::to_string(cert.criterion)},
           {"delta", cert.delta},
           {"verdict", cn::to_string(cert.verdict)},
           {"method", cn::to_string(cert.method)},
           {"detail", cert.detail}};
    if (cert.spectral_gap_value) j["spectral_gap"] = *cert.spectral_gap_value;
    if (cert.surrogate_threshold) j["surrogate_threshold"] = *cert.surrogate_threshold;
    if (!cert.witness.empty()) j["witness"] = cert.witness;
    return j;
}

struct GenerateArgs {
    std::string family;
    std::string base;
    int n = 0, d = 0, rows = 0, cols = 0, m = 0, k = 0;
    uint64_t seed = 0;
    int orient_k = 0;
    std::string output;
};

cn::GenSpec to_spec(const GenerateArgs& args) {
    cn::GenSpec spec;
    spec.family = cn::parse_family(args.family);
    spec.n = args.n;
    spec.d = args.d;
    spec.rows = args.rows;
    spec.cols = args.cols;
    spec.m = args.m;
    spec.k = args.k;
    spec.seed = args.seed;
    if (spec.family == cn::Family::Blowup) {
        if (args.base.empty()) throw cn::UsageError("blowup needs --base");
        spec.base = cn::parse_family(args.base);
    }
    return spec;
}

int run(int argc, char** argv) {
    CLI::App app{"corruption-detection toolkit"};
    app.require_subcommand(1);
    // flags override file values; sections name the subcommand, e.g.
    //   [experiment]
    //   trials=100
    app.fallthrough();
    app.set_config("--config", "", "read options from an INI file");

    // --- generate -----------------------------------------------------------
    GenerateArgs gen;
    auto* generate_cmd = app.add_subcommand("generate", "emit a graph in the text format");
    generate_cmd->add_option("--family", gen.family, "random-regular|grid|star|cycle|complete|blowup")
        ->required();
    generate_cmd->add_option("--base", gen.base, "base family for blowup");
    generate_cmd->add_option("--n", gen.n, "vertex count");
    generate_cmd->add_option("--d", gen.d, "degree");
    generate_cmd->add_option("--rows", gen.rows, "grid rows");
    generate_cmd->add_option("--cols", gen.cols, "grid cols");
    generate_cmd->add_option("--m", gen.m, "star leaves");
    generate_cmd->add_option("--k", gen.k, "blowup clique size");
    generate_cmd->add_option("--seed", gen.seed, "generation seed");
    generate_cmd->add_option("--orient", gen.orient_k,
                             "orient the (regular) result with E1 width k");
    generate_cmd->add_option("-o,--output", gen.output, "output file (default stdout)");
    generate_cmd->callback([&] {
        cn::Graph g = cn::generate(to_spec(gen));
        if (gen.orient_k > 0) g = cn::orient_eulerian(g, gen.orient_k, gen.seed).graph;
        write_output(cn::to_text(g), gen.output);
    });

    // --- certify ------------------------------------------------------------
    struct {
        std::string graph, criterion = "undirected-good", method = "auto", format = "text";
        double delta = 0.1;
        std::optional<double> threshold;
        std::optional<long long> budget;
    } cert_args;
    auto* certify_cmd = app.add_subcommand("certify", "check delta-goodness / delta-connectedness");
    certify_cmd->add_option("--graph", cert_args.graph)->required();
    certify_cmd->add_option("--delta", cert_args.delta)->required();
    certify_cmd->add_option("--criterion", cert_args.criterion,
                            "undirected-good|directed-good|delta-connected");
    certify_cmd->add_option("--method", cert_args.method, "auto|exhaustive|spectral");
    certify_cmd->add_option("--threshold", cert_args.threshold, "surrogate gap threshold override");
    certify_cmd->add_option("--budget", cert_args.budget, "exhaustive work budget");
    certify_cmd->add_option("--format", cert_args.format, "text|json");
    certify_cmd->callback([&] {
        const cn::Graph g = cn::load_graph(cert_args.graph);
        cn::Criterion criterion;
        if (cert_args.criterion == "undirected-good")
            criterion = cn::Criterion::UndirectedGood;
        else if (cert_args.criterion == "directed-good")
            criterion = cn::Criterion::DirectedGood;
        else if (cert_args.criterion == "delta-connected")
            criterion = cn::Criterion::DeltaConnected;
        else
            throw cn::UsageError("unknown criterion: " + cert_args.criterion);
        cn::CertifyOptions options;
        if (cert_args.method == "exhaustive")
            options.method = cn::CertifyOptions::Method::Exhaustive;
        else if (cert_args.method == "spectral")
            options.method = cn::CertifyOptions::Method::SpectralSurrogate;
        else if (cert_args.method != "auto")
            throw cn::UsageError("method must be auto|exhaustive|spectral");
        options.work_budget = work_budget_from_env(cert_args.budget.value_or(options.work_budget));
        options.surrogate_threshold = cert_args.threshold;
        const auto cert = cn::certify(g, cert_args.delta, criterion, options);
        if (cert_args.format == "json") {
            std::cout << cert_json(cert).dump(2) << '\n';
        } else {
            std::cout << cn::to_string(cert.criterion) << " delta=" << cert.delta << " verdict="
                      << cn::to_string(cert.verdict) << " method=" << cn::to_string(cert.method);
            if (cert.spectral_gap_value)
                std::cout << " gap=" << *cert.spectral_gap_value
                          << " threshold=" << *cert.surrogate_threshold;
            std::cout << '\n';
            if (!cert.detail.empty()) std::cout << cert.detail << '\n';
            for (const auto& set : cert.witness) {
                std::cout << "witness:";
                for (int v : set) std::cout << ' ' << v;
                std::cout << '\n';
            }
        }
        if (cert.verdict == cn::CertVerdict::NotAttempted)
            throw cn::BudgetExceededError("certification not attempted: " + cert.detail);
    });

    // --- simulate -----------------------------------------------------------
    struct {
        std::string graph, adversary = "collude-praise", world_in, world_out, reports_out;
        std::optional<long> t_size;
        std::optional<double> t_frac;
        uint64_t seed = 0;
    } sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "sample a world and generate reports");
    simulate_cmd->add_option("--graph", sim.graph)->required();
    simulate_cmd->add_option("--adversary", sim.adversary);
    simulate_cmd->add_option("--t-size", sim.t_size);
    simulate_cmd->add_option("--t-frac", sim.t_frac);
    simulate_cmd->add_option("--world", sim.world_in, "load the world instead of sampling");
    simulate_cmd->add_option("--world-out", sim.world_out);
    simulate_cmd->add_option("--reports-out", sim.reports_out, "default stdout");
    simulate_cmd->add_option("--seed", sim.seed);
    simulate_cmd->callback([&] {
        const cn::Graph g = cn::load_graph(sim.graph);
        const cn::World world = !sim.world_in.empty()
                                    ? cn::load_world(g.n, sim.world_in)
                                    : make_world(g, sim.t_size, sim.t_frac, cn::mix_seed(sim.seed, 1));
        const auto reports =
            cn::generate_reports(g, world, make_adversary(sim.adversary, cn::mix_seed(sim.seed, 2)));
        if (!sim.world_out.empty()) cn::save_world(world, sim.world_out);
        write_output(cn::to_text(g, reports), sim.reports_out);
    });

    // --- detect -------------------------------------------------------------
    struct {
        std::string graph, reports, mode = "general", format = "text";
        double delta = 0.1;
    } det;
    auto* detect_cmd = app.add_subcommand("detect", "label vertices from reports");
    detect_cmd->add_option("--graph", det.graph)->required();
    detect_cmd->add_option("--reports", det.reports)->required();
    detect_cmd->add_option("--mode", det.mode, "fast|general|connected");
    detect_cmd->add_option("--delta", det.delta, "delta (or eps for connected mode)")->required();
    detect_cmd->add_option("--format", det.format, "text|json");
    detect_cmd->callback([&] {
        const cn::Graph g = cn::load_graph(det.graph);
        const auto reports = cn::load_reports(g, det.reports);
        cn::DetectionResult result;
        if (det.mode == "connected") {
            const auto members = cn::detect_connected(g, reports, det.delta);
            result.labels.assign(g.n, cn::Label::Unknown);
            result.provenance.assign(g.n, cn::Provenance::None);
            for (int v : members) {
                result.labels[v] = cn::Label::Truthful;
                result.provenance[v] = cn::Provenance::GiantComponent;
            }
            result.mode_used = cn::DetectMode::Connected;
        } else if (det.mode == "fast" || det.mode == "general") {
            cn::DetectOptions options;
            options.search_budget = work_budget_from_env(options.search_budget);
            result = cn::detect(g, reports,
                                det.mode == "fast" ? cn::DetectMode::Fast : cn::DetectMode::General,
                                det.delta, options);
        } else {
            throw cn::UsageError("mode must be fast|general|connected");
        }
        if (det.format == "json") {
            json j{{"mode", cn::to_string(result.mode_used)},
                   {"fell_back", result.fell_back},
                   {"unknown", result.unknown_count()}};
            j["labels"] = json::array();
            for (size_t v = 0; v < result.labels.size(); ++v)
                j["labels"].push_back({{"v", v},
                                       {"label", cn::to_string(result.labels[v])},
                                       {"provenance", cn::to_string(result.provenance[v])}});
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << detection_text(result);
        }
    });

    // --- gadget -------------------------------------------------------------
    struct {
        int n = 0, m = 0;
        std::string a = "1/4", b = "1/8", hard = "path", prefix = "gadget";
    } gad;
    auto* gadget_cmd = app.add_subcommand("gadget", "build a hardness-reduction fixture");
    gadget_cmd->add_option("--n", gad.n)->required();
    gadget_cmd->add_option("--m", gad.m)->required();
    gadget_cmd->add_option("--a", gad.a, "rational p/q, b < a < 1/2");
    gadget_cmd->add_option("--b", gad.b, "rational p/q");
    gadget_cmd->add_option("--hard", gad.hard, "empty|path|cycle|matching|edges:FILE");
    gadget_cmd->add_option("--out-prefix", gad.prefix);
    gadget_cmd->callback([&] {
        const auto [a_num, a_den] = parse_rational(gad.a);
        const auto [b_num, b_den] = parse_rational(gad.b);
        const cn::Graph h = builtin_hard_graph(gad.hard, gad.m);
        const auto spec = cn::make_gadget_fixture(gad.n, gad.m, a_num, a_den, b_num, b_den, h);
        const auto inst = cn::build_np_gadget(spec);
        cn::save_graph(inst.graph, gad.prefix + ".graph");
        cn::save_reports(inst.graph, inst.reports, gad.prefix + ".reports");
        json manifest{{"n", gad.n},
                      {"m", gad.m},
                      {"a", gad.a},
                      {"b", gad.b},
                      {"hard_graph", gad.hard},
                      {"v1", inst.v1},
                      {"v2", inst.v2},
                      {"v3", inst.v3},
                      {"alpha_H", cn::independence_number_bruteforce(h)},
                      {"graph_file", gad.prefix + ".graph"},
                      {"reports_file", gad.prefix + ".reports"}};
        std::ofstream out(gad.prefix + ".json");
        if (!out) throw cn::UsageError("cannot write manifest");
        out << manifest.dump(2) << '\n';
        std::cout << "wrote " << gad.prefix << ".{graph,reports,json}\n";
    });

    // --- scenarios ----------------------------------------------------------
    struct {
        std::string graph, separator, prefix = "scenario";
        int rows = 0, cols = 0;
        bool middle_row = false, middle_column = false;
        double eps = 0.4;
    } sc;
    auto* scenarios_cmd = app.add_subcommand("scenarios", "build a separator scenario family");
    scenarios_cmd->add_option("--graph", sc.graph, "graph file (or use --rows/--cols)");
    scenarios_cmd->add_option("--rows", sc.rows);
    scenarios_cmd->add_option("--cols", sc.cols);
    scenarios_cmd->add_flag("--middle-row", sc.middle_row);
    scenarios_cmd->add_flag("--middle-column", sc.middle_column);
    scenarios_cmd->add_option("--separator", sc.separator, "comma-separated vertex ids");
    scenarios_cmd->add_option("--eps", sc.eps)->required();
    scenarios_cmd->add_option("--out-prefix", sc.prefix);
    scenarios_cmd->callback([&] {
        cn::Graph g;
        std::vector<int> separator;
        if (!sc.graph.empty()) {
            g = cn::load_graph(sc.graph);
        } else if (sc.rows > 0 && sc.cols > 0) {
            g = cn::make_grid(sc.rows, sc.cols);
        } else {
            throw cn::UsageError("pass --graph or --rows/--cols");
        }
        if (sc.middle_row)
            separator = cn::grid_middle_row(sc.rows, sc.cols);
        else if (sc.middle_column)
            separator = cn::grid_middle_column(sc.rows, sc.cols);
        else if (!sc.separator.empty()) {
            std::istringstream in(sc.separator);
            std::string token;
            while (std::getline(in, token, ',')) separator.push_back(std::stoi(token));
        } else {
            throw cn::UsageError("pass --separator or --middle-row/--middle-column");
        }
        const auto family = cn::build_separator_scenarios(g, separator, sc.eps);
        cn::save_graph(family.graph, sc.prefix + ".graph");
        json manifest{{"n", g.n},
                      {"eps", family.eps},
                      {"separator", family.separator},
                      {"components", family.components},
                      {"indistinguishable", cn::verify_indistinguishable(family)},
                      {"graph_file", sc.prefix + ".graph"}};
        if (!family.reports.empty()) {
            cn::save_reports(family.graph, family.reports[0], sc.prefix + ".reports");
            manifest["reports_file"] = sc.prefix + ".reports";
        }
        manifest["world_files"] = json::array();
        for (size_t i = 0; i < family.worlds.size(); ++i) {
            const std::string path = sc.prefix + ".world" + std::to_string(i);
            cn::save_world(family.worlds[i], path);
            manifest["world_files"].push_back(path);
        }
        std::ofstream out(sc.prefix + ".json");
        if (!out) throw cn::UsageError("cannot write manifest");
        out << manifest.dump(2) << '\n';
        std::cout << "wrote " << sc.prefix << ".{graph,reports,worldN,json}; scenarios="
                  << family.worlds.size() << '\n';
    });

    // --- puzzle -------------------------------------------------------------
    struct {
        int n = 100, t = 51;
        bool verify = false, minimal = false, do_run = false;
        uint64_t seed = 0;
        std::string adversary = "random";
    } puz;
    auto* puzzle_cmd = app.add_subcommand("puzzle", "the adaptive machine-testing game");
    puzzle_cmd->add_option("--n", puz.n)->required();
    puzzle_cmd->add_option("--t", puz.t)->required();
    puzzle_cmd->add_flag("--verify", puz.verify, "exhaustive game-tree check (n <= 6)");
    puzzle_cmd->add_flag("--minimal", puz.minimal, "exact optimal test count (n <= 5)");
    puzzle_cmd->add_flag("--run", puz.do_run, "play one game against a seeded adversary");
    puzzle_cmd->add_option("--seed", puz.seed);
    puzzle_cmd->add_option("--adversary", puz.adversary, "random|inverting");
    puzzle_cmd->callback([&] {
        const cn::PuzzleInstance inst{puz.n, puz.t};
        const cn::EliminationStrategy strat;
        if (puz.verify) {
            std::cout << (cn::verify_strategy(inst, strat) ? "verified" : "refuted") << '\n';
            return;
        }
        if (puz.minimal) {
            std::cout << cn::minimal_tests(inst) << '\n';
            return;
        }
        if (!puz.do_run) throw cn::UsageError("pass one of --run, --verify, --minimal");
        cn::Rng rng(cn::mix_seed(puz.seed, 7));
        std::vector<bool> truthful(puz.n, false);
        {
            std::vector<int> ids(puz.n);
            for (int i = 0; i < puz.n; ++i) ids[i] = i;
            for (int i = 0; i < puz.t; ++i) {
                const int j = i + rng.below_int(puz.n - i);
                std::swap(ids[i], ids[j]);
            }
            for (int i = 0; i < puz.t; ++i) truthful[ids[i]] = true;
        }
        std::unique_ptr<cn::PuzzleAdversary> adv;
        if (puz.adversary == "random")
            adv = std::make_unique<cn::RandomPuzzleAdversary>(truthful, cn::mix_seed(puz.seed, 9));
        else if (puz.adversary == "inverting")
            adv = std::make_unique<cn::InvertingPuzzleAdversary>(truthful);
        else
            throw cn::UsageError("adversary must be random|inverting");
        const auto run_result = cn::run_strategy(inst, strat, *adv);
        const bool correct = run_result.truthful == truthful;
        std::cout << "tests=" << run_result.tests << " correct=" << (correct ? 1 : 0)
                  << " truthful:";
        for (int v = 0; v < puz.n; ++v)
            if (run_result.truthful[v]) std::cout << ' ' << v;
        std::cout << '\n';
    });

    // --- experiment ---------------------------------------------------------
    struct {
        GenerateArgs gen;
        std::string graph_file, adversary = "collude-praise", mode = "general", format = "csv",
                    output;
        std::optional<long> t_size;
        std::optional<double> t_frac;
        double delta = 0.1;
        int trials = 1;
        uint64_t seed = 0;
        bool timing = false;
    } ex;
    auto* experiment_cmd = app.add_subcommand("experiment", "batch detection trials, CSV out");
    experiment_cmd->add_option("--graph", ex.graph_file, "graph file");
    experiment_cmd->add_option("--family", ex.gen.family, "generate the graph instead");
    experiment_cmd->add_option("--base", ex.gen.base);
    experiment_cmd->add_option("--n", ex.gen.n);
    experiment_cmd->add_option("--d", ex.gen.d);
    experiment_cmd->add_option("--rows", ex.gen.rows);
    experiment_cmd->add_option("--cols", ex.gen.cols);
    experiment_cmd->add_option("--m", ex.gen.m);
    experiment_cmd->add_option("--k", ex.gen.k);
    experiment_cmd->add_option("--graph-seed", ex.gen.seed);
    experiment_cmd->add_option("--t-size", ex.t_size);
    experiment_cmd->add_option("--t-frac", ex.t_frac);
    experiment_cmd->add_option("--adversary", ex.adversary);
    experiment_cmd->add_option("--mode", ex.mode, "fast|general");
    experiment_cmd->add_option("--delta", ex.delta);
    experiment_cmd->add_option("--trials", ex.trials);
    experiment_cmd->add_option("--seed", ex.seed);
    experiment_cmd->add_flag("--timing", ex.timing, "emit measured runtimes (non-reproducible)");
    experiment_cmd->add_option("--format", ex.format, "csv|json");
    experiment_cmd->add_option("-o,--output", ex.output, "default stdout");
    experiment_cmd->callback([&] {
        cn::ExperimentConfig cfg;
        if (!ex.graph_file.empty()) cfg.graph_file = ex.graph_file;
        if (!ex.gen.family.empty()) cfg.graph_spec = to_spec(ex.gen);
        cfg.t_count = ex.t_size;
        cfg.t_fraction = ex.t_frac;
        cfg.adversary = ex.adversary;
        if (ex.mode == "fast")
            cfg.mode = cn::DetectMode::Fast;
        else if (ex.mode == "general")
            cfg.mode = cn::DetectMode::General;
        else
            throw cn::UsageError("experiment mode must be fast|general");
        cfg.delta = ex.delta;
        cfg.trials = ex.trials;
        cfg.seed = ex.seed;
        const auto result = cn::run_experiment(cfg);
        write_output(ex.format == "json"
                         ? cn::to_json(result.records, result.summary, ex.timing)
                         : cn::to_csv(result.records, ex.timing),
                     ex.output);
        std::cerr << cn::summary_text(result.summary) << '\n';
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cn::InstanceError& e) {
        std::cerr << "instance error: " << e.what() << '\n';
        return 2;
    } catch (const cn::BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 3;
    } catch (const cn::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
