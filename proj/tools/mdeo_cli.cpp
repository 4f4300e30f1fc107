#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mdeo/config.hpp"
#include "mdeo/io.hpp"
#include "mdeo/metrics.hpp"
#include "mdeo/orchestrator.hpp"
#include "mdeo/synth.hpp"

namespace fs = std::filesystem;
using namespace mdeo;

namespace {

bool verbose() {
  const char* v = std::getenv("MDEO_VERBOSE");
  return v && *v && std::string(v) != "0";
}

void info(const std::string& msg) {
  if (verbose()) std::cerr << "[mdeo] " << msg << "\n";
}

fs::path prepare_outdir(const RunConfig& cfg, const std::string& override_dir) {
  const fs::path dir = override_dir.empty() ? fs::path(cfg.output_dir) : fs::path(override_dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<LoadResult> load_networks(const RunConfig& cfg) {
  std::vector<LoadResult> loaded;
  loaded.reserve(cfg.networks.size());
  for (const auto& net : cfg.networks) {
    LoadResult lr = load_edge_list(net.path);
    if (lr.dropped_self_loops || lr.dropped_duplicates)
      std::cerr << net.name << ": dropped " << lr.dropped_self_loops << " self-loops, "
                << lr.dropped_duplicates << " duplicate edges\n";
    info(net.name + ": " + std::to_string(lr.graph.node_count()) + " nodes, " +
         std::to_string(lr.graph.edge_count()) + " edges");
    loaded.push_back(std::move(lr));
  }
  return loaded;
}

std::vector<std::string> network_names(const RunConfig& cfg) {
  std::vector<std::string> names;
  for (const auto& net : cfg.networks) names.push_back(net.name);
  return names;
}

std::vector<NetworkSpec> build_specs(const RunConfig& cfg,
                                     const std::vector<LoadResult>& loaded) {
  std::vector<NetworkSpec> specs;
  for (std::size_t i = 0; i < cfg.networks.size(); ++i) {
    TaskSpec task;
    task.type = cfg.task.type;
    task.budget = cfg.networks[i].beta;
    task.ic_prob = cfg.task.ic_prob;
    task.ic_samples = cfg.task.ic_samples;
    specs.push_back({cfg.networks[i].name, loaded[i].graph, task});
  }
  return specs;
}

int find_network(const RunConfig& cfg, const std::string& name) {
  for (std::size_t i = 0; i < cfg.networks.size(); ++i)
    if (cfg.networks[i].name == name) return static_cast<int>(i);
  throw std::runtime_error("network '" + name + "' is not in the config");
}

std::vector<NetworkProfile> build_profiles(const std::vector<LoadResult>& loaded) {
  std::vector<NetworkProfile> profiles;
  profiles.reserve(loaded.size());
  for (const auto& lr : loaded) profiles.push_back(NetworkProfile::build(lr.graph));
  return profiles;
}

Graph relabel(const Graph& g, const std::vector<NodeId>& perm) {
  EdgeList edges;
  edges.reserve(g.edge_count());
  for (const auto& [u, v] : g.edges()) edges.push_back(make_edge(perm[u], perm[v]));
  return Graph(g.node_count(), edges);
}

// Align a network with a relabeled copy of itself and report how many
// top-decile-degree nodes come back to their own image. Both embeddings are
// trained from the same initial weights so the copy's embedding is the
// permuted original up to detection differences; averaged over 5 permutations.
double self_alignment_accuracy(const Graph& g, const GaeConfig& gae_cfg,
                               const AlignmentConfig& align_cfg, std::uint64_t seed) {
  const int n = g.node_count();
  std::vector<double> degree(n);
  for (int v = 0; v < n; ++v) degree[v] = g.degree(v);
  const auto top = top_fraction_nodes(degree, 0.1);

  const NetworkProfile pa = NetworkProfile::build(g);
  double total = 0;
  const int runs = 5;
  for (int run = 0; run < runs; ++run) {
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng shuffle_rng(derive_seed(seed, "selfcheck-perm", static_cast<std::uint64_t>(run)));
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[shuffle_rng.below_int(i + 1)]);

    const Graph h = relabel(g, perm);
    const NetworkProfile pb = NetworkProfile::build(h);
    Rng ra(derive_seed(seed, "selfcheck-gae")), rb(derive_seed(seed, "selfcheck-gae"));
    const Matrix za = train_gae(g, pa.partition, gae_cfg, ra).embedding;
    const Matrix zb = train_gae(h, pb.partition, gae_cfg, rb).embedding;

    const AlignedCommunities aligned = align_communities(community_similarity_matrix(pa, pb));
    const AnchorSet anchors = select_anchors(g, pa.partition, h, pb.partition, aligned.pairs);
    const AlignmentModel model = train_alignment(za, zb, anchors, align_cfg).model;
    const std::vector<NodeId> map = node_mapping(za, zb, model);

    int hits = 0;
    for (NodeId u : top) hits += map[u] == perm[u];
    total += static_cast<double>(hits) / top.size();
  }
  return total / runs;
}

void cmd_gen(int nodes, int blocks, double p_in, double p_out, std::uint64_t seed,
             const std::string& out, const std::string& truth) {
  OutputTracker tracker;
  const PlantedPartition pp = planted_partition(nodes, blocks, p_in, p_out, seed);
  std::string edges;
  for (const auto& [u, v] : pp.graph.edges())
    edges += std::to_string(u) + " " + std::to_string(v) + "\n";
  tracker.track(out);
  write_text_file(out, edges);
  if (!truth.empty()) {
    std::vector<std::string> labels(nodes);
    for (int v = 0; v < nodes; ++v) labels[v] = std::to_string(v);
    tracker.track(truth);
    write_partition_csv(truth, pp.truth, labels);
  }
  tracker.commit();
  info("generated " + std::to_string(pp.graph.edge_count()) + " edges");
}

void cmd_similarity(const RunConfig& cfg, const std::string& outdir) {
  const auto loaded = load_networks(cfg);
  if (loaded.size() < 2) throw std::runtime_error("similarity needs at least 2 networks");
  const auto profiles = build_profiles(loaded);
  const fs::path dir = prepare_outdir(cfg, outdir);
  OutputTracker tracker;

  const Matrix pairwise = pairwise_similarity_matrix(profiles);
  tracker.track((dir / "similarity.csv").string());
  write_matrix_csv((dir / "similarity.csv").string(), pairwise, network_names(cfg));

  const SimilarityState st =
      init_similarity_and_assisted(pairwise, cfg.transfer.assisted_override);
  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < st.assisted.size(); ++i) {
    std::string joined;
    for (int j : st.assisted[i]) {
      if (!joined.empty()) joined += '+';
      joined += cfg.networks[j].name;
    }
    rows.push_back({cfg.networks[i].name, joined});
  }
  tracker.track((dir / "assisted.csv").string());
  write_csv((dir / "assisted.csv").string(), {"network", "assisted"}, rows);
  tracker.commit();
}

void cmd_embed(const RunConfig& cfg, const std::string& outdir) {
  const auto loaded = load_networks(cfg);
  const fs::path dir = prepare_outdir(cfg, outdir);
  OutputTracker tracker;
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    const Partition p = detect_greedy_modularity(loaded[i].graph);
    Rng rng(derive_seed(cfg.seed, "gae", static_cast<std::uint64_t>(i)));
    const GaeResult res = train_gae(loaded[i].graph, p, cfg.gae, rng);
    const std::string base = (dir / cfg.networks[i].name).string();
    tracker.track(base + "_embedding.csv");
    write_embedding_csv(base + "_embedding.csv", res.embedding, loaded[i].labels);
    std::vector<CsvRow> rows;
    for (std::size_t e = 0; e < res.loss_history.size(); ++e)
      rows.push_back({std::to_string(e), format_double(res.loss_history[e])});
    tracker.track(base + "_gae_loss.csv");
    write_csv(base + "_gae_loss.csv", {"epoch", "loss"}, rows);
    info(cfg.networks[i].name + ": loss " + format_double(res.loss_history.front()) + " -> " +
         format_double(res.loss_history.back()));
  }
  tracker.commit();
}

void cmd_align(const RunConfig& cfg, const std::string& outdir) {
  const auto loaded = load_networks(cfg);
  if (loaded.size() < 2) throw std::runtime_error("align needs at least 2 networks");
  const fs::path dir = prepare_outdir(cfg, outdir);
  OutputTracker tracker;

  std::vector<NetworkProfile> profiles = build_profiles(loaded);
  const SimilarityState st = init_similarity_and_assisted(
      pairwise_similarity_matrix(profiles), cfg.transfer.assisted_override);

  std::vector<Matrix> z(loaded.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    Rng rng(derive_seed(cfg.seed, "gae", static_cast<std::uint64_t>(i)));
    z[i] = train_gae(loaded[i].graph, profiles[i].partition, cfg.gae, rng).embedding;
  }

  for (std::size_t i = 0; i < loaded.size(); ++i) {
    for (int j : st.assisted[i]) {
      const AlignedCommunities aligned =
          align_communities(community_similarity_matrix(profiles[j], profiles[i]));
      const AnchorSet anchors = select_anchors(loaded[j].graph, profiles[j].partition,
                                               loaded[i].graph, profiles[i].partition,
                                               aligned.pairs);
      const AlignmentModel model = train_alignment(z[j], z[i], anchors, cfg.alignment).model;
      const auto map = node_mapping(z[j], z[i], model);
      const std::string path =
          (dir / (cfg.networks[i].name + "_from_" + cfg.networks[j].name + ".csv")).string();
      tracker.track(path);
      write_mapping_csv(path, map, loaded[j].labels, loaded[i].labels);
    }
  }

  std::vector<CsvRow> rows;
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    const double acc = self_alignment_accuracy(
        loaded[i].graph, cfg.gae, cfg.alignment,
        derive_seed(cfg.seed, "selfcheck", static_cast<std::uint64_t>(i)));
    rows.push_back({cfg.networks[i].name, format_double(acc)});
  }
  tracker.track((dir / "alignment_check.csv").string());
  write_csv((dir / "alignment_check.csv").string(), {"network", "top_decile_accuracy"}, rows);
  tracker.commit();
}

void cmd_optimize(RunConfig cfg, bool no_transfer, int threads, const std::string& outdir) {
  if (no_transfer) cfg.transfer.enabled = false;
  const auto loaded = load_networks(cfg);
  const auto specs = build_specs(cfg, loaded);
  OrchestratorConfig ocfg = to_orchestrator_config(cfg);
  ocfg.threads = threads;

  info(std::string("optimizing ") + std::to_string(specs.size()) + " networks, transfer " +
       (cfg.transfer.enabled ? "on" : "off"));
  const MdeoResult res = run_mdeo(specs, ocfg);

  const fs::path dir = prepare_outdir(cfg, outdir);
  OutputTracker tracker;
  tracker.track((dir / "curves.csv").string());
  write_curves_csv((dir / "curves.csv").string(), res);
  tracker.track((dir / "transfers.csv").string());
  write_transfers_csv((dir / "transfers.csv").string(), res, network_names(cfg));

  std::vector<CsvRow> summary;
  for (std::size_t i = 0; i < res.networks.size(); ++i) {
    const auto& net = res.networks[i];
    const std::string path = (dir / ("solution_" + net.name + ".txt")).string();
    tracker.track(path);
    write_text_file(path, solution_script(net.best, loaded[i].labels));
    summary.push_back({net.name, format_double(net.best_fitness)});
  }
  tracker.track((dir / "summary.csv").string());
  write_csv((dir / "summary.csv").string(), {"network", "best_fitness"}, summary);

  if (cfg.transfer.enabled) {
    tracker.track((dir / "similarity_initial.csv").string());
    write_matrix_csv((dir / "similarity_initial.csv").string(), res.similarity_initial,
                     network_names(cfg));
    tracker.track((dir / "similarity_final.csv").string());
    write_matrix_csv((dir / "similarity_final.csv").string(), res.similarity,
                     network_names(cfg));
  }
  tracker.commit();
  for (const auto& row : summary) std::cout << row[0] << " " << row[1] << "\n";
}

void cmd_evaluate(const RunConfig& cfg, const std::string& network,
                  const std::string& solution_path, const std::string& outdir) {
  const int idx = find_network(cfg, network);
  LoadResult lr = load_edge_list(cfg.networks[idx].path);
  const Solution sol = load_solution(solution_path, lr.label_to_id);
  const fs::path dir = prepare_outdir(cfg, outdir);
  OutputTracker tracker;

  if (cfg.task.type == TaskType::kInfluenceMax) {
    Rng rng(derive_seed(cfg.seed, "ic-eval", static_cast<std::uint64_t>(idx)));
    const double spread =
        ic_spread(lr.graph, sol.seeds, cfg.task.ic_prob, cfg.task.ic_samples, rng);
    const std::string path = (dir / ("evaluation_" + network + ".csv")).string();
    tracker.track(path);
    write_csv(path, {"network", "seeds", "spread"},
              {{network, std::to_string(sol.seeds.size()), format_double(spread)}});
    tracker.commit();
    std::cout << network << " spread " << format_double(spread) << "\n";
    return;
  }

  const GreedyModularityDetector detector;
  const Partition base = detector.detect(lr.graph);
  const Graph modified = apply_edits(lr.graph, sol.edits);
  const Partition after = modified.edge_count() > 0
                              ? detector.detect(modified)
                              : [&] {
                                  std::vector<int> a(modified.node_count());
                                  std::iota(a.begin(), a.end(), 0);
                                  return Partition::from_assignment(a);
                                }();
  const StructuralReport rep = structural_report(lr.graph, sol.edits, detector);

  const std::string path = (dir / ("evaluation_" + network + ".csv")).string();
  tracker.track(path);
  write_csv(path,
            {"network", "nmi", "ari", "edits", "clustering_before", "clustering_after",
             "asd_before", "asd_after", "betweenness_top20_overlap", "pagerank_top20_overlap",
             "modularity_before", "modularity_after"},
            {{network, format_double(nmi(base, after)), format_double(ari(base, after)),
              std::to_string(rep.edits_count), format_double(rep.clustering_before),
              format_double(rep.clustering_after), format_double(rep.asd_before),
              format_double(rep.asd_after), format_double(rep.betweenness_overlap),
              format_double(rep.pagerank_overlap), format_double(rep.modularity_before),
              format_double(rep.modularity_after)}});
  tracker.commit();
  std::cout << network << " nmi " << format_double(nmi(base, after)) << " ari "
            << format_double(ari(base, after)) << "\n";
}

void cmd_baseline(const RunConfig& cfg, const std::string& method, const std::string& outdir) {
  if (method != "ram" && method != "dice")
    throw std::runtime_error("baseline method must be 'ram' or 'dice'");
  const auto loaded = load_networks(cfg);
  const fs::path dir = prepare_outdir(cfg, outdir);
  OutputTracker tracker;
  const GreedyModularityDetector detector;
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    Rng rng(derive_seed(cfg.seed, method == "ram" ? "ram" : "dice",
                        static_cast<std::uint64_t>(i)));
    const EditSet edits =
        method == "ram"
            ? ram_baseline(loaded[i].graph, cfg.networks[i].beta, rng)
            : dice_baseline(loaded[i].graph, detector.detect(loaded[i].graph),
                            cfg.networks[i].beta, rng);
    Chromosome c;
    c.additions = edits.additions;
    c.deletions = edits.deletions;
    const std::string path =
        (dir / ("baseline_" + method + "_" + cfg.networks[i].name + ".txt")).string();
    tracker.track(path);
    write_text_file(path, solution_script(c, loaded[i].labels));
  }
  tracker.commit();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-domain evolutionary optimization over networks"};
  app.require_subcommand(1);

  std::string config_path, outdir, network, solution_path, method = "ram";
  std::string gen_out, gen_truth;
  bool no_transfer = false;
  int threads = 0;
  int gen_nodes = 80, gen_blocks = 4;
  double gen_pin = 0.25, gen_pout = 0.02;
  std::uint64_t gen_seed = 1;
  bool seed_set = false;
  std::uint64_t seed_override = 0;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", outdir, "output directory (defaults to the config's)");
    cmd->add_option("--seed", seed_override, "override the config seed")
        ->each([&](const std::string&) { seed_set = true; });
  };

  auto* sim = app.add_subcommand("similarity", "emit the pairwise network-similarity matrix");
  add_config(sim);
  auto* embed = app.add_subcommand("embed", "train per-network embeddings");
  add_config(embed);
  auto* align = app.add_subcommand("align", "train cross-network node mappings");
  add_config(align);
  auto* opt = app.add_subcommand("optimize", "run the multi-domain optimization loop");
  add_config(opt);
  opt->add_flag("--no-transfer", no_transfer, "disable transfer (single-domain baseline)");
  opt->add_option("--threads", threads, "worker thread bound (0 = hardware)");
  auto* eval = app.add_subcommand("evaluate", "score a solution file against its network");
  add_config(eval);
  eval->add_option("--network", network, "network name from the config")->required();
  eval->add_option("--solution", solution_path, "edit-script solution file")
      ->required()
      ->check(CLI::ExistingFile);
  auto* base = app.add_subcommand("baseline", "emit RAM or DICE baseline edit sets");
  add_config(base);
  base->add_option("--method", method, "ram or dice");
  auto* gen = app.add_subcommand("gen", "generate a planted-partition test network");
  gen->add_option("--nodes", gen_nodes, "node count");
  gen->add_option("--blocks", gen_blocks, "planted blocks");
  gen->add_option("--p-in", gen_pin, "within-block edge probability");
  gen->add_option("--p-out", gen_pout, "cross-block edge probability");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--edges-out", gen_out, "edge-list output path")->required();
  gen->add_option("--truth-out", gen_truth, "planted partition CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      cmd_gen(gen_nodes, gen_blocks, gen_pin, gen_pout, gen_seed, gen_out, gen_truth);
      return 0;
    }
    RunConfig cfg = load_config(config_path);
    if (seed_set) cfg.seed = seed_override;
    validate_config(cfg);
    if (sim->parsed()) cmd_similarity(cfg, outdir);
    if (embed->parsed()) cmd_embed(cfg, outdir);
    if (align->parsed()) cmd_align(cfg, outdir);
    if (opt->parsed()) cmd_optimize(cfg, no_transfer, threads, outdir);
    if (eval->parsed()) cmd_evaluate(cfg, network, solution_path, outdir);
    if (base->parsed()) cmd_baseline(cfg, method, outdir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
