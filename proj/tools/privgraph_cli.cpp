// Command-line front end: synthesize | evaluate | benchmark | im.
// Exit codes: 0 success, 1 internal failure, 2 usage or input error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "privgraph/privgraph.hpp"

namespace pg = privgraph;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

pg::ParsedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open input file: " + path);
    try {
        return pg::parse_edge_list(in);
    } catch (const pg::ParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

/// Writes via a temp file + rename so readers never observe partial output.
void atomic_write(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw UsageError("cannot write to " + tmp.string());
        out << content;
        if (!out.flush()) throw UsageError("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string edge_list_text(const pg::Graph& g, const pg::LabelMap& labels) {
    std::ostringstream os;
    pg::write_edge_list(os, g, labels);
    return os.str();
}

std::uint64_t seed_or_entropy(std::optional<std::uint64_t> seed) {
    return seed ? *seed : pg::RandomSource::from_entropy().seed();
}

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::size_t worker_threads() {
    const char* env = std::getenv("PRIVGRAPH_THREADS");
    if (!env) return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || v < 1) return 1;
    return std::min<long>(v, 64);
}

std::vector<double> parse_split(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) parts.push_back(std::stod(tok));
    if (parts.size() != 3)
        throw UsageError("--split needs exactly three comma-separated fractions");
    return parts;
}

// Shared knobs for the synthesis pipeline, filled from CLI options.
struct SynthOptions {
    std::string method = "privgraph";
    double eps = 1.0;
    std::string split = "";  // empty = equal thirds
    std::size_t community_size = 20;
    double resolution = 1.0;
    std::string norm_sub_scope = "global";
    std::string inter_sampling = "bernoulli";
    double tmf_count_fraction = 0.1;

    pg::PrivacyBudget budget() const {
        if (split.empty()) return pg::PrivacyBudget::split(eps, 1.0 / 3, 1.0 / 3, 1.0 / 3);
        auto f = parse_split(split);
        return pg::PrivacyBudget::split(eps, f[0], f[1], f[2]);
    }

    pg::SynthesisConfig config() const {
        pg::SynthesisConfig c;
        c.community_size = community_size;
        c.resolution = resolution;
        c.norm_sub_scope = norm_sub_scope == "per-community" ? pg::NormSubScope::per_community
                                                             : pg::NormSubScope::global;
        c.inter_sampling = inter_sampling == "exact-count" ? pg::InterSampling::exact_count
                                                           : pg::InterSampling::bernoulli;
        return c;
    }

    void add_method_options(CLI::App* cmd) {
        cmd->add_option("--method", method, "Synthesis method")
            ->check(CLI::IsMember({"privgraph", "tmf"}))
            ->capture_default_str();
        cmd->add_option("--eps", eps, "Total privacy budget")->capture_default_str();
    }

    void add_pipeline_options(CLI::App* cmd) {
        cmd->add_option("--split", split,
                        "Budget fractions eps1,eps2,eps3 (default: equal thirds)");
        cmd->add_option("--community-size", community_size,
                        "Target block size for the initial random partition")
            ->capture_default_str();
        cmd->add_option("--resolution", resolution, "Modularity resolution t")
            ->capture_default_str();
        cmd->add_option("--norm-sub-scope", norm_sub_scope,
                        "Calibrate degree sequences globally or per community")
            ->check(CLI::IsMember({"global", "per-community"}))
            ->capture_default_str();
        cmd->add_option("--inter-sampling", inter_sampling,
                        "Cross-community edge realization mode")
            ->check(CLI::IsMember({"bernoulli", "exact-count"}))
            ->capture_default_str();
        cmd->add_option("--tmf-count-fraction", tmf_count_fraction,
                        "TmF budget share spent on the edge count")
            ->capture_default_str();
    }
};

nlohmann::json tmf_ledger_json(const pg::TmfResult& res, double eps) {
    return nlohmann::json{
        {"budget", {{"total", eps}}},
        {"entries",
         nlohmann::json::array(
             {{{"phase", "edge-count"},
               {"label", "noisy edge count"},
               {"eps", res.eps_count},
               {"composition", "sequential"}},
              {{"phase", "adjacency"},
               {"label", "noisy adjacency cells"},
               {"eps", res.eps_matrix},
               {"composition", "sequential"}}})},
        {"total_spent", res.eps_count + res.eps_matrix},
        {"verdict", res.eps_count + res.eps_matrix <= eps + 1e-9 ? "pass" : "fail"},
        {"violation", ""},
    };
}

int cmd_synthesize(const std::string& input, const std::string& output,
                   const std::string& ledger_path, const SynthOptions& opt,
                   std::optional<std::uint64_t> seed, const std::string& dump_info,
                   const std::string& dump_true_info, bool unsafe) {
    if (!dump_true_info.empty() && !unsafe)
        throw UsageError(
            "--dump-true-info exposes exact private counts; pass --unsafe to confirm");
    pg::ParsedGraph in = load_graph(input);
    pg::RandomSource rng(seed_or_entropy(seed));

    std::string ledger_json;
    pg::Graph synthetic;
    if (opt.method == "tmf") {
        pg::TmfConfig cfg;
        cfg.count_fraction = opt.tmf_count_fraction;
        pg::TmfResult res = pg::tmf_synthesize(in.graph, opt.eps, rng, cfg);
        synthetic = std::move(res.graph);
        ledger_json = tmf_ledger_json(res, opt.eps).dump(2) + "\n";
        if (!dump_info.empty() || !dump_true_info.empty())
            throw UsageError("--dump-info/--dump-true-info apply to --method privgraph only");
    } else {
        pg::PrivacyBudget budget = opt.budget();
        pg::SynthesisResult res = pg::synthesize(in.graph, opt.config(), budget, rng);
        synthetic = std::move(res.graph);
        ledger_json = pg::ledger_to_json(res.ledger, budget).dump(2) + "\n";
        if (!dump_info.empty())
            atomic_write(dump_info,
                         pg::extracted_info_to_json(res.calibrated_info).dump(2) + "\n");
        if (!dump_true_info.empty())
            atomic_write(dump_true_info,
                         pg::extracted_info_to_json(
                             pg::extract_info(in.graph, res.communities))
                                 .dump(2) +
                             "\n");
    }
    atomic_write(output, edge_list_text(synthetic, in.labels));
    std::string lpath = ledger_path.empty() ? output + ".ledger.json" : ledger_path;
    atomic_write(lpath, ledger_json);
    std::cerr << "synthesized " << synthetic.node_count() << " nodes, "
              << synthetic.edge_count() << " edges (" << opt.method << ", eps=" << opt.eps
              << "); ledger: " << lpath << "\n";
    return 0;
}

/// Re-indexes the synthetic graph into the original's id space by matching
/// labels. Unlabeled ids on both sides (isolated nodes declared only via the
/// node-count header) pair up in ascending order; they are interchangeable
/// for every metric.
pg::Graph align_to(const pg::ParsedGraph& original, const pg::ParsedGraph& synthetic) {
    if (original.graph.node_count() != synthetic.graph.node_count())
        throw UsageError("original and synthetic graphs have different node counts");
    const std::size_t n = original.graph.node_count();
    std::vector<pg::NodeId> remap(n);
    std::vector<bool> used(n, false);
    const auto& syn_labels = synthetic.labels.id_to_label;
    for (std::size_t s = 0; s < syn_labels.size(); ++s) {
        auto it = original.labels.label_to_id.find(syn_labels[s]);
        if (it == original.labels.label_to_id.end())
            throw UsageError("synthetic graph names node '" + syn_labels[s] +
                             "' which the original lacks");
        remap[s] = it->second;
        used[it->second] = true;
    }
    std::vector<pg::NodeId> free_ids;
    for (pg::NodeId u = 0; u < n; ++u)
        if (!used[u]) free_ids.push_back(u);
    std::size_t next = 0;
    for (std::size_t s = syn_labels.size(); s < n; ++s) remap[s] = free_ids[next++];
    std::vector<pg::Edge> edges;
    edges.reserve(synthetic.graph.edge_count());
    for (const auto& [u, w] : synthetic.graph.edges()) edges.emplace_back(remap[u], remap[w]);
    return pg::Graph(n, std::move(edges));
}

int cmd_evaluate(const std::string& original_path, const std::string& synthetic_path,
                 const std::string& json_path, const std::string& csv_path,
                 std::uint64_t seed, const pg::MetricsOptions& mopt) {
    pg::ParsedGraph original = load_graph(original_path);
    pg::ParsedGraph synthetic = load_graph(synthetic_path);
    pg::Graph aligned = align_to(original, synthetic);
    pg::RandomSource rng(seed);
    pg::MetricsReport rep = pg::evaluate_graphs(original.graph, aligned, rng, mopt);
    if (!rep.evc_converged)
        std::cerr << "warning: eigenvector centrality hit the iteration cap\n";
    if (!rep.diameter_exact)
        std::cerr << "warning: diameter is a lower bound (BFS budget exhausted)\n";
    atomic_write(json_path, pg::metrics_to_json(rep).dump(2) + "\n");
    if (!csv_path.empty())
        atomic_write(csv_path, std::string(pg::metrics_csv_header()) + "\n" +
                                   pg::metrics_csv_row(rep) + "\n");
    return 0;
}

struct BenchTask {
    std::string method;
    double eps;
    std::size_t rep;
    std::uint64_t seed;
};

struct BenchRow {
    BenchTask task;
    std::size_t edges_synthetic = 0;
    double seconds = 0.0;
    bool ledger_pass = false;
    pg::MetricsReport metrics;
};

int cmd_benchmark(const std::string& input, const std::string& output,
                  const std::vector<std::string>& methods, const std::vector<double>& eps_list,
                  std::size_t reps, const SynthOptions& opt,
                  std::optional<std::uint64_t> seed_opt, const pg::MetricsOptions& mopt) {
    if (reps < 1) throw UsageError("--reps must be >= 1");
    if (eps_list.empty()) throw UsageError("--eps list must not be empty");
    pg::ParsedGraph in = load_graph(input);
    const std::uint64_t base_seed = seed_or_entropy(seed_opt);
    pg::RandomSource base(base_seed);

    std::vector<BenchTask> tasks;
    for (std::size_t mi = 0; mi < methods.size(); ++mi)
        for (std::size_t ei = 0; ei < eps_list.size(); ++ei)
            for (std::size_t r = 0; r < reps; ++r)
                tasks.push_back({methods[mi], eps_list[ei], r,
                                 base.split(((mi * 1000 + ei) * 1000 + r) + 1).seed()});

    const auto t_start = std::chrono::steady_clock::now();
    std::vector<BenchRow> rows(tasks.size());
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mu;
    auto worker = [&]() {
        for (;;) {
            std::size_t i = cursor.fetch_add(1);
            if (i >= tasks.size() || failed.load()) break;
            const BenchTask& task = tasks[i];
            BenchRow row;
            row.task = task;
            try {
                pg::RandomSource rng(task.seed);
                auto t0 = std::chrono::steady_clock::now();
                pg::Graph synthetic;
                if (task.method == "tmf") {
                    pg::TmfConfig cfg;
                    cfg.count_fraction = opt.tmf_count_fraction;
                    pg::TmfResult res = pg::tmf_synthesize(in.graph, task.eps, rng, cfg);
                    synthetic = std::move(res.graph);
                    row.ledger_pass = true;
                } else {
                    pg::PrivacyBudget budget =
                        opt.split.empty()
                            ? pg::PrivacyBudget::split(task.eps, 1.0 / 3, 1.0 / 3, 1.0 / 3)
                            : [&] {
                                  auto f = parse_split(opt.split);
                                  return pg::PrivacyBudget::split(task.eps, f[0], f[1], f[2]);
                              }();
                    pg::SynthesisResult res =
                        pg::synthesize(in.graph, opt.config(), budget, rng);
                    synthetic = std::move(res.graph);
                    row.ledger_pass = pg::accountant_check(budget, res.ledger).pass;
                }
                row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                            t0)
                                  .count();
                row.edges_synthetic = synthetic.edge_count();
                pg::RandomSource eval_rng = pg::RandomSource(task.seed).split(0xe7a1);
                row.metrics = pg::evaluate_graphs(in.graph, synthetic, eval_rng, mopt);
                rows[i] = std::move(row);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mu);
                failed.store(true);
                failure = std::string(task.method) + " eps=" + std::to_string(task.eps) +
                          " rep=" + std::to_string(task.rep) + ": " + e.what();
                break;
            }
        }
    };
    std::size_t nthreads = std::min(worker_threads(), tasks.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failed.load()) throw std::runtime_error("benchmark task failed: " + failure);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    std::ostringstream csv;
    csv << "method,eps,rep,seed,edges_synthetic,seconds,ledger_pass,"
        << pg::metrics_csv_header() << "\n";
    auto metric_values = [](const pg::MetricsReport& m) {
        return std::vector<double>{m.nmi,         m.evc_overlap, m.evc_mae, m.degree_kl,
                                   m.diameter_re, m.cc_re,       m.modularity_re};
    };
    for (const auto& method : methods) {
        for (double eps : eps_list) {
            std::vector<const BenchRow*> group;
            for (const auto& row : rows)
                if (row.task.method == method && row.task.eps == eps) group.push_back(&row);
            for (const BenchRow* row : group) {
                csv << method << "," << pg::format_double(eps) << "," << row->task.rep << ","
                    << row->task.seed << "," << row->edges_synthetic << ","
                    << pg::format_double(row->seconds) << ","
                    << (row->ledger_pass ? "true" : "false") << ","
                    << pg::metrics_csv_row(row->metrics) << "\n";
            }
            // aggregate rows: mean and sample std over the reps
            const std::size_t cols = 7;
            std::vector<double> mean(cols, 0.0), sq(cols, 0.0);
            double sec_mean = 0.0, sec_sq = 0.0;
            for (const BenchRow* row : group) {
                auto vals = metric_values(row->metrics);
                for (std::size_t c = 0; c < cols; ++c) {
                    mean[c] += vals[c];
                    sq[c] += vals[c] * vals[c];
                }
                sec_mean += row->seconds;
                sec_sq += row->seconds * row->seconds;
            }
            const double cnt = static_cast<double>(group.size());
            for (std::size_t c = 0; c < cols; ++c) mean[c] /= cnt;
            sec_mean /= cnt;
            auto std_of = [cnt](double s2, double mu) {
                if (cnt < 2) return 0.0;
                return std::sqrt(std::max(0.0, (s2 - cnt * mu * mu) / (cnt - 1)));
            };
            csv << method << "," << pg::format_double(eps) << ",mean,,,"
                << pg::format_double(sec_mean) << ",,";
            for (std::size_t c = 0; c < cols; ++c)
                csv << (c ? "," : "") << pg::format_double(mean[c]);
            csv << "\n";
            csv << method << "," << pg::format_double(eps) << ",std,,,"
                << pg::format_double(std_of(sec_sq, sec_mean)) << ",,";
            for (std::size_t c = 0; c < cols; ++c)
                csv << (c ? "," : "") << pg::format_double(std_of(sq[c], mean[c]));
            csv << "\n";
        }
    }
    atomic_write(output, csv.str());

    nlohmann::json meta{
        {"input", input},
        {"nodes", in.graph.node_count()},
        {"edges", in.graph.edge_count()},
        {"methods", methods},
        {"eps", eps_list},
        {"reps", reps},
        {"seed", base_seed},
        {"threads", nthreads},
        {"wall_seconds", wall},
        {"timestamp", iso_timestamp()},
        {"config",
         {{"community_size", opt.community_size},
          {"resolution", opt.resolution},
          {"split", opt.split.empty() ? "1/3,1/3,1/3" : opt.split},
          {"norm_sub_scope", opt.norm_sub_scope},
          {"inter_sampling", opt.inter_sampling},
          {"tmf_count_fraction", opt.tmf_count_fraction}}},
    };
    if (output != "-") atomic_write(output + ".meta.json", meta.dump(2) + "\n");
    return 0;
}

int cmd_im(const std::string& original_path, const std::string& synthetic_path,
           const std::vector<std::size_t>& ks, double p, std::size_t trials,
           std::uint64_t seed, const std::string& output) {
    pg::ParsedGraph original = load_graph(original_path);
    std::optional<pg::Graph> synthetic;
    if (!synthetic_path.empty())
        synthetic = align_to(original, load_graph(synthetic_path));

    std::ostringstream csv;
    csv << "graph,k,p,trials,spread_mean,spread_std,seeds\n";
    pg::RandomSource base(seed);
    auto run = [&](const std::string& tag, const pg::Graph& seed_source) {
        for (std::size_t k : ks) {
            if (k > original.graph.node_count())
                throw UsageError("k exceeds the node count");
            auto seeds = pg::degree_discount(seed_source, k, p);
            pg::RandomSource rng = base.split(pg::mix64(k) ^ (tag == "original" ? 1 : 2));
            // spread is always measured on the original graph
            pg::SpreadEstimate est = pg::ic_spread(original.graph, seeds, p, trials, rng);
            csv << tag << "," << k << "," << pg::format_double(p) << "," << trials << ","
                << pg::format_double(est.mean) << "," << pg::format_double(est.stddev) << ",";
            for (std::size_t i = 0; i < seeds.size(); ++i)
                csv << (i ? ";" : "") << original.labels.label(seeds[i]);
            csv << "\n";
        }
    };
    run("original", original.graph);
    if (synthetic) run("synthetic", *synthetic);
    atomic_write(output, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Differentially private synthetic graph publication via community structure"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from an INI-style config file");

    // synthesize
    auto* syn = app.add_subcommand("synthesize", "Generate a private synthetic graph");
    std::string syn_in, syn_out, syn_ledger, dump_info, dump_true_info;
    SynthOptions syn_opt;
    std::optional<std::uint64_t> syn_seed;
    bool unsafe = false;
    syn->add_option("-i,--input", syn_in, "Original edge-list file")->required();
    syn->add_option("-o,--output", syn_out, "Synthetic edge-list file ('-' for stdout)")
        ->required();
    syn->add_option("--ledger", syn_ledger,
                    "Budget ledger JSON path (default: <output>.ledger.json)");
    syn_opt.add_method_options(syn);
    syn_opt.add_pipeline_options(syn);
    syn->add_option("--seed", syn_seed,
                    "RNG seed (default: OS entropy; fix only for reproducing tests)");
    syn->add_option("--dump-info", dump_info,
                    "Dump the calibrated (noisy) community summary JSON");
    syn->add_option("--dump-true-info", dump_true_info,
                    "Dump the exact community summary JSON (requires --unsafe)");
    syn->add_flag("--unsafe", unsafe, "Confirm dumping exact private counts");

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "Compare a synthetic graph to the original");
    std::string ev_orig, ev_syn, ev_json = "-", ev_csv;
    std::uint64_t ev_seed = 1;
    pg::MetricsOptions mopt;
    std::string clustering = "global";
    ev->add_option("--original", ev_orig, "Original edge-list file")->required();
    ev->add_option("--synthetic", ev_syn, "Synthetic edge-list file")->required();
    ev->add_option("--json", ev_json, "Metrics JSON output ('-' for stdout)")
        ->capture_default_str();
    ev->add_option("--csv", ev_csv, "Optional metrics CSV output");
    ev->add_option("--seed", ev_seed, "Seed for the community detection inside the metrics")
        ->capture_default_str();
    ev->add_option("--evc-fraction", mopt.evc_fraction,
                   "Top fraction of nodes for the centrality overlap")
        ->capture_default_str();
    ev->add_option("--clustering", clustering, "Clustering coefficient variant")
        ->check(CLI::IsMember({"global", "average-local"}))
        ->capture_default_str();
    ev->add_option("--resolution", mopt.resolution,
                   "Modularity resolution used inside nmi/modularity metrics")
        ->capture_default_str();

    // benchmark
    auto* be = app.add_subcommand(
        "benchmark", "Sweep methods x eps x reps and emit per-run metrics CSV");
    std::string be_in, be_out = "-";
    std::vector<std::string> be_methods{"privgraph", "tmf"};
    std::vector<double> be_eps{1.0, 2.0, 3.0};
    std::size_t be_reps = 10;
    SynthOptions be_opt;
    std::optional<std::uint64_t> be_seed;
    pg::MetricsOptions be_mopt;
    be->add_option("-i,--input", be_in, "Original edge-list file")->required();
    be->add_option("-o,--output", be_out, "CSV output path ('-' for stdout)")
        ->capture_default_str();
    be->add_option("--methods", be_methods, "Methods to sweep")
        ->delimiter(',')
        ->check(CLI::IsMember({"privgraph", "tmf"}))
        ->capture_default_str();
    be->add_option("--eps", be_eps, "Privacy budgets to sweep")
        ->delimiter(',')
        ->capture_default_str();
    be->add_option("--reps", be_reps, "Repetitions per method/eps cell")
        ->capture_default_str();
    be_opt.add_pipeline_options(be);
    be->add_option("--seed", be_seed, "Base seed (default: OS entropy)");
    be->add_option("--evc-fraction", be_mopt.evc_fraction,
                   "Top fraction for the centrality overlap")
        ->capture_default_str();

    // im
    auto* im = app.add_subcommand(
        "im", "Influence maximization case study (seeds from each graph, spread on the "
              "original)");
    std::string im_orig, im_syn, im_out = "-";
    std::vector<std::size_t> im_ks{20};
    double im_p = 0.01;
    std::size_t im_trials = 1000;
    std::uint64_t im_seed = 1;
    im->add_option("--original", im_orig, "Original edge-list file")->required();
    im->add_option("--synthetic", im_syn, "Synthetic edge-list file (optional)");
    im->add_option("-o,--output", im_out, "CSV output path ('-' for stdout)")
        ->capture_default_str();
    im->add_option("-k,--k", im_ks, "Seed-set sizes")->delimiter(',')->capture_default_str();
    im->add_option("-p,--probability", im_p, "Independent-cascade edge probability")
        ->capture_default_str();
    im->add_option("--trials", im_trials, "Monte-Carlo trials per estimate")
        ->capture_default_str();
    im->add_option("--seed", im_seed, "RNG seed for the cascade trials")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        if (syn->parsed())
            return cmd_synthesize(syn_in, syn_out, syn_ledger, syn_opt, syn_seed, dump_info,
                                  dump_true_info, unsafe);
        if (ev->parsed()) {
            mopt.clustering_average_local = clustering == "average-local";
            return cmd_evaluate(ev_orig, ev_syn, ev_json, ev_csv, ev_seed, mopt);
        }
        if (be->parsed())
            return cmd_benchmark(be_in, be_out, be_methods, be_eps, be_reps, be_opt, be_seed,
                                 be_mopt);
        if (im->parsed()) return cmd_im(im_orig, im_syn, im_ks, im_p, im_trials, im_seed, im_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pg::InternalInvariantError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
