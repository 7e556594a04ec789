// mlne: multilayer network embedding and link-prediction driver.
//
//   mlne info     <dataset> [--labels FILE]
//   mlne walks    <dataset> -o FILE [--method lc|na|ra] [walk flags]
//   mlne embed    <dataset> -o FILE --method na|ra|lc [walk/train flags]
//   mlne linkpred <dataset> [--methods cn,jaccard,na,ra,lc] [--seeds 0-9] [--report FILE]
//   mlne generate -o FILE [SBM flags]
//
// Exit codes: 0 success, 1 configuration error, 2 I/O or data error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "mlne/eval.hpp"
#include "mlne/graph.hpp"
#include "mlne/io.hpp"
#include "mlne/rng.hpp"
#include "mlne/strategies.hpp"
#include "mlne/synthetic.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kIoError = 2;

struct Options {
  std::string dataset;
  std::string labels;
  std::string output;
  std::string report;
  std::string method = "lc";
  std::string methods = "cn,jaccard,na,ra,lc";
  std::string seeds = "0-9";
  std::string metric = "euclidean";
  std::string candidate_mode = "all";
  std::string start_mode = "node";
  std::size_t candidate_samples = 0;
  double p = 0.5, q = 0.5, r = 0.5;
  std::size_t num_walks = 10, walk_length = 80;
  std::size_t dim = 128, per_layer_dim = 0, total_dim = 0;
  std::size_t window = 10, negatives = 5, epochs = 1;
  double lr = 0.025, min_lr = 0.0001;
  double test_frac = 0.1;
  std::uint64_t seed = 0;
  int threads = 0;
  bool deterministic = false;

  // generate
  std::size_t gen_nodes = 100, gen_layers = 3, gen_blocks = 2;
  double gen_p_in = 0.3, gen_p_out = 0.02, gen_correlation = 0.5;
};

void add_walk_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--p", o.p, "Return factor (>0)")->capture_default_str();
  cmd->add_option("--q", o.q, "In-out factor (>0)")->capture_default_str();
  cmd->add_option("--r", o.r, "Stay-on-layer probability in [0,1]")->capture_default_str();
  cmd->add_option("--num-walks", o.num_walks, "Walks started per node")->capture_default_str();
  cmd->add_option("--walk-length", o.walk_length, "Nodes per walk")->capture_default_str();
  cmd->add_option("--start-mode", o.start_mode, "Walk initialization: node or edge")->capture_default_str();
  cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--threads", o.threads, "OpenMP threads (0 = runtime default)");
  cmd->add_flag("--deterministic", o.deterministic, "Single-threaded, bit-reproducible training");
}

void add_train_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--dim", o.dim, "Embedding dimension")->capture_default_str();
  cmd->add_option("--per-layer-dim", o.per_layer_dim, "Results aggregation: dimension per layer (default --dim)");
  cmd->add_option("--total-dim", o.total_dim, "Results aggregation: split this budget evenly over layers");
  cmd->add_option("--window", o.window, "Skip-gram context radius")->capture_default_str();
  cmd->add_option("--negatives", o.negatives, "Negative samples per positive pair")->capture_default_str();
  cmd->add_option("--epochs", o.epochs, "Passes over the walk corpus")->capture_default_str();
  cmd->add_option("--lr", o.lr, "Initial learning rate")->capture_default_str();
  cmd->add_option("--min-lr", o.min_lr, "Final learning rate")->capture_default_str();
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw mlne::ConfigError(msg);
}

void validate(const Options& o) {
  require(o.p > 0.0, "--p must be > 0");
  require(o.q > 0.0, "--q must be > 0");
  require(o.r >= 0.0 && o.r <= 1.0, "--r must be in [0,1]");
  require(o.num_walks >= 1, "--num-walks must be >= 1");
  require(o.walk_length >= 1, "--walk-length must be >= 1");
  require(o.dim >= 1, "--dim must be >= 1");
  require(o.window >= 1, "--window must be >= 1");
  require(o.epochs >= 1, "--epochs must be >= 1");
  require(o.min_lr > 0.0, "--min-lr must be > 0");
  require(o.lr >= o.min_lr, "--lr must be >= --min-lr");
  require(o.test_frac > 0.0 && o.test_frac < 1.0, "--test-frac must be in (0,1)");
  require(o.threads >= 0, "--threads must be >= 0");
  require(o.start_mode == "node" || o.start_mode == "edge", "--start-mode must be node or edge");
  require(o.candidate_mode == "all" || o.candidate_mode == "sampled", "--candidate-mode must be all or sampled");
}

mlne::MethodConfig method_config(const Options& o, std::size_t num_layers) {
  mlne::MethodConfig cfg;
  cfg.walk.p = o.p;
  cfg.walk.q = o.q;
  cfg.walk.r = o.r;
  cfg.walk.num_walks = o.num_walks;
  cfg.walk.walk_length = o.walk_length;
  cfg.walk.seed = o.seed;
  cfg.walk.start = o.start_mode == "edge" ? mlne::StartMode::uniform_edge : mlne::StartMode::per_node;
  cfg.train.dim = o.dim;
  cfg.train.window = o.window;
  cfg.train.negatives = o.negatives;
  cfg.train.epochs = o.epochs;
  cfg.train.initial_lr = o.lr;
  cfg.train.final_lr = o.min_lr;
  cfg.train.seed = o.seed;
  cfg.per_layer_dim = o.per_layer_dim;
  if (o.total_dim) {
    require(num_layers > 0 && o.total_dim >= num_layers, "--total-dim must be >= the number of layers");
    cfg.per_layer_dim = o.total_dim / num_layers;
  }
  cfg.exec = o.deterministic ? mlne::Execution::serial : mlne::Execution::parallel;
  return cfg;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// "3", "0-9", "1,4,7" or combinations such as "0-2,10".
std::vector<std::uint64_t> parse_seeds(const std::string& s) {
  std::vector<std::uint64_t> out;
  for (const auto& part : split_list(s)) {
    try {
      const auto dash = part.find('-');
      if (dash == std::string::npos) {
        out.push_back(std::stoull(part));
      } else {
        const auto lo = std::stoull(part.substr(0, dash));
        const auto hi = std::stoull(part.substr(dash + 1));
        require(lo <= hi, "--seeds range '" + part + "' is reversed");
        for (auto v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::logic_error&) {
      throw mlne::ConfigError("--seeds: cannot parse '" + part + "'");
    }
  }
  require(!out.empty(), "--seeds is empty");
  return out;
}

std::string dataset_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

void print_load_warnings(const mlne::LoadStats& s) {
  if (s.duplicates) std::cerr << "warning: " << s.duplicates << " duplicate edge(s) collapsed\n";
  if (s.self_loops) std::cerr << "warning: " << s.self_loops << " self-loop(s) dropped\n";
  if (s.weights_ignored) std::cerr << "warning: weight column ignored on " << s.weights_ignored << " line(s)\n";
}

int cmd_info(const Options& o) {
  const auto loaded = mlne::load_multilayer(o.dataset);
  print_load_warnings(loaded.stats);
  const auto& mn = loaded.network;
  std::cout << "nodes=" << mn.num_nodes() << " layers=" << mn.num_layers() << " layer_edges=" << mn.edge_count()
            << " merged_edges=" << mlne::merge(mn).edge_count() << '\n';
  for (std::size_t l = 0; l < mn.num_layers(); ++l)
    std::cout << "layer " << loaded.layers.name(l) << " edges=" << mn.layer(mlne::layer(l)).edge_count() << '\n';
  std::cout << "duplicates=" << loaded.stats.duplicates << " self_loops=" << loaded.stats.self_loops << '\n';
  if (!o.labels.empty()) {
    const auto labels = mlne::load_labels(o.labels, loaded.nodes);
    std::cout << "labeled_nodes=" << labels.size() << '\n';
    for (const auto& [label, count] : labels.counts()) std::cout << "label " << label << " nodes=" << count << '\n';
  }
  return 0;
}

int cmd_walks(const Options& o) {
  const auto loaded = mlne::load_multilayer(o.dataset);
  print_load_warnings(loaded.stats);
  const auto& mn = loaded.network;
  const auto cfg = method_config(o, mn.num_layers());
  cfg.walk.validate();
  const mlne::Method method = mlne::parse_method(o.method);

  const auto walks_on = [&](const mlne::Graph& g, const mlne::WalkParams& params) {
    return cfg.exec == mlne::Execution::serial ? mlne::serial::single_graph_walks(g, params)
                                               : mlne::single_graph_walks(g, params);
  };
  mlne::WalkCorpus corpus;
  switch (method) {
    case mlne::Method::layer_coanalysis:
      corpus = cfg.exec == mlne::Execution::serial ? mlne::serial::coanalysis_walks(mn, cfg.walk)
                                                   : mlne::coanalysis_walks(mn, cfg.walk);
      break;
    case mlne::Method::network_aggregation:
      corpus = walks_on(mlne::merge(mn), cfg.walk);
      break;
    case mlne::Method::results_aggregation:
      for (std::size_t l = 0; l < mn.num_layers(); ++l) {
        auto params = cfg.walk;
        params.seed = mlne::derive_seed(cfg.walk.seed, {l});
        auto layer_corpus = walks_on(mn.layer(mlne::layer(l)), params);
        for (auto& w : layer_corpus.walks) corpus.walks.push_back(std::move(w));
      }
      break;
  }

  std::ofstream out(o.output);
  if (!out) throw mlne::IoError("cannot write '" + o.output + "'");
  mlne::write_walks(out, corpus, loaded.nodes);
  std::cerr << "walks=" << corpus.walks.size() << " tokens=" << corpus.total_tokens()
            << " singletons=" << corpus.singleton_walks() << '\n';
  if (method == mlne::Method::layer_coanalysis)
    std::cerr << "layer_switch_rate=" << mlne::layer_switch_stats(mn, corpus).rate() << '\n';
  return 0;
}

int cmd_embed(const Options& o) {
  const auto loaded = mlne::load_multilayer(o.dataset);
  print_load_warnings(loaded.stats);
  const auto& mn = loaded.network;
  auto cfg = method_config(o, mn.num_layers());
  cfg.method = mlne::parse_method(o.method);
  cfg.validate();

  mlne::EmbedLog log;
  const auto space = mlne::embed(mn, cfg, &log);
  std::cerr << "corpus walks=" << log.walks << " tokens=" << log.tokens << '\n';
  for (std::size_t run = 0; run < log.training.size(); ++run)
    for (std::size_t e = 0; e < log.training[run].epoch_loss.size(); ++e)
      std::cerr << "train run=" << run << " epoch=" << e + 1 << " loss=" << log.training[run].epoch_loss[e] << '\n';
  if (cfg.method == mlne::Method::layer_coanalysis)
    std::cerr << "layer_switch_rate=" << log.layer_switches.rate() << " eligible_steps=" << log.layer_switches.eligible
              << '\n';
  mlne::save_embedding(o.output, space, loaded.nodes);
  std::cerr << "wrote " << o.output << " (" << space.num_nodes() << " x " << space.dim() << ")\n";
  return 0;
}

int cmd_linkpred(const Options& o) {
  const auto loaded = mlne::load_multilayer(o.dataset);
  print_load_warnings(loaded.stats);
  const auto& mn = loaded.network;
  const auto base = method_config(o, mn.num_layers());
  base.validate();
  const auto seeds = parse_seeds(o.seeds);

  std::vector<mlne::Predictor> predictors;
  for (const auto& name : split_list(o.methods)) {
    if (name == "cn" || name == "jaccard") {
      predictors.emplace_back(mlne::parse_baseline(name));
    } else {
      auto cfg = base;
      cfg.method = mlne::parse_method(name);
      predictors.emplace_back(cfg);
    }
  }
  require(!predictors.empty(), "--methods is empty");

  mlne::ExperimentConfig exp;
  exp.test_frac = o.test_frac;
  exp.metric = mlne::parse_metric(o.metric);
  exp.candidates = o.candidate_mode == "sampled" ? mlne::CandidateMode::sampled : mlne::CandidateMode::all_non_train;
  exp.sampled_non_edges = o.candidate_samples;
  exp.record_runtime = !o.deterministic;

  const std::string dataset = dataset_name(o.dataset);
  std::vector<mlne::PredictionReport> reports;
  for (const auto& predictor : predictors) {
    for (const auto seed : seeds) {
      exp.seed = seed;
      auto r = mlne::run_experiment(mn, predictor, exp);
      r.dataset = dataset;
      std::cout << mlne::report_kv(r) << '\n';
      reports.push_back(std::move(r));
    }
  }
  if (!o.report.empty()) mlne::append_reports(o.report, reports);

  // Table-style summary: mean and sample standard deviation per method.
  std::map<std::string, std::vector<const mlne::PredictionReport*>> by_method;
  std::vector<std::string> order;
  for (const auto& r : reports) {
    if (!by_method.contains(r.method)) order.push_back(r.method);
    by_method[r.method].push_back(&r);
  }
  const auto mean_sd = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::pair{m, v.size() > 1 ? std::sqrt(s / static_cast<double>(v.size() - 1)) : 0.0};
  };
  std::cout << "\nsummary dataset=" << dataset << " seeds=" << seeds.size() << "\n";
  std::cout << std::left << std::setw(10) << "method" << std::setw(22) << "accuracy (mean±sd)" << "f1 (mean±sd)\n";
  for (const auto& name : order) {
    std::vector<double> acc, f;
    for (const auto* r : by_method[name]) {
      acc.push_back(r->accuracy);
      f.push_back(r->f1);
    }
    const auto [am, as] = mean_sd(acc);
    const auto [fm, fs] = mean_sd(f);
    std::ostringstream a, b;
    a << std::fixed << std::setprecision(3) << am << " ± " << as;
    b << std::fixed << std::setprecision(3) << fm << " ± " << fs;
    std::cout << std::left << std::setw(10) << name << std::setw(22) << a.str() << b.str() << '\n';
  }
  return 0;
}

int cmd_generate(const Options& o) {
  mlne::SyntheticSpec spec;
  spec.num_nodes = o.gen_nodes;
  spec.num_layers = o.gen_layers;
  spec.num_blocks = o.gen_blocks;
  spec.p_in = o.gen_p_in;
  spec.p_out = o.gen_p_out;
  spec.layer_correlation = o.gen_correlation;
  spec.seed = o.seed;
  const auto mn = mlne::generate_synthetic(spec);
  mlne::NameTable nodes, layers;
  for (std::size_t v = 0; v < mn.num_nodes(); ++v) nodes.intern("n" + std::to_string(v));
  for (std::size_t l = 0; l < mn.num_layers(); ++l) layers.intern("L" + std::to_string(l));
  std::ofstream out(o.output);
  if (!out) throw mlne::IoError("cannot write '" + o.output + "'");
  mlne::write_multilayer(out, mn, nodes, layers);
  std::cerr << "wrote " << o.output << " nodes=" << mn.num_nodes() << " layer_edges=" << mn.edge_count() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilayer network embedding and link prediction"};
  app.require_subcommand(1);
  Options o;

  auto* info = app.add_subcommand("info", "Print dataset statistics");
  info->add_option("dataset", o.dataset, "Multilayer edge list")->required();
  info->add_option("--labels", o.labels, "Node label file");

  auto* walks = app.add_subcommand("walks", "Dump a walk corpus");
  walks->add_option("dataset", o.dataset, "Multilayer edge list")->required();
  walks->add_option("-o,--output", o.output, "Walk dump path")->required();
  walks->add_option("--method", o.method, "Walk law: lc (layer-traversing), na (merged graph), ra (per layer)")
      ->capture_default_str();
  add_walk_flags(walks, o);

  auto* embed = app.add_subcommand("embed", "Embed a multilayer network");
  embed->add_option("dataset", o.dataset, "Multilayer edge list")->required();
  embed->add_option("-o,--output", o.output, "Embedding output path")->required();
  embed->add_option("--method", o.method, "na, ra or lc")->capture_default_str();
  add_walk_flags(embed, o);
  add_train_flags(embed, o);

  auto* linkpred = app.add_subcommand("linkpred", "Run the link-prediction experiment");
  linkpred->add_option("dataset", o.dataset, "Multilayer edge list")->required();
  linkpred->add_option("--methods", o.methods, "Comma list of cn, jaccard, na, ra, lc")->capture_default_str();
  linkpred->add_option("--seeds", o.seeds, "Seed list/range, e.g. 0-9 or 1,3")->capture_default_str();
  linkpred->add_option("--test-frac", o.test_frac, "Fraction of merged edges held out")->capture_default_str();
  linkpred->add_option("--metric", o.metric, "euclidean or cosine")->capture_default_str();
  linkpred->add_option("--candidate-mode", o.candidate_mode, "all (every non-train pair) or sampled")
      ->capture_default_str();
  linkpred->add_option("--candidate-samples", o.candidate_samples, "Non-edges drawn in sampled mode (0 = 10x test)");
  linkpred->add_option("--report", o.report, "Append JSON-lines records to this file");
  add_walk_flags(linkpred, o);
  add_train_flags(linkpred, o);

  auto* generate = app.add_subcommand("generate", "Write a synthetic multilayer SBM edge list");
  generate->add_option("-o,--output", o.output, "Edge list path")->required();
  generate->add_option("--nodes", o.gen_nodes)->capture_default_str();
  generate->add_option("--layers", o.gen_layers)->capture_default_str();
  generate->add_option("--blocks", o.gen_blocks)->capture_default_str();
  generate->add_option("--p-in", o.gen_p_in)->capture_default_str();
  generate->add_option("--p-out", o.gen_p_out)->capture_default_str();
  generate->add_option("--correlation", o.gen_correlation)->capture_default_str();
  generate->add_option("--seed", o.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    validate(o);
    if (o.threads > 0) omp_set_num_threads(o.threads);
    if (o.deterministic) omp_set_num_threads(1);
    if (info->parsed()) return cmd_info(o);
    if (walks->parsed()) return cmd_walks(o);
    if (embed->parsed()) return cmd_embed(o);
    if (linkpred->parsed()) return cmd_linkpred(o);
    if (generate->parsed()) return cmd_generate(o);
  } catch (const mlne::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const mlne::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const mlne::ReferenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
