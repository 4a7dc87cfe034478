// dks: dense k-subgraph discovery from the command line.
//
//   dks solve    --graph FILE --k K [--method ladmm-fw] [--bound] [--json]
//   dks sweep    --graph FILE (--k-min A --k-max B [--k-step S] | --k-list L)
//                [--methods M1,M2] [--out CSV] [--threads N] [--no-timing]
//   dks gen      --n N --k K --p P --seed S [--out FILE]
//   dks plotdata --csv CSV --out-dir DIR
//   dks cache    --graph FILE --out FILE.dksg
//
// Exit codes: 0 ok, 1 numerical or internal failure, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dks/baselines.hpp"
#include "dks/errors.hpp"
#include "dks/graph.hpp"
#include "dks/harness.hpp"
#include "dks/oracles.hpp"

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphArgs {
  std::string path;
  bool weighted = false;
};

void add_graph_options(CLI::App* app, GraphArgs& args) {
  app->add_option("--graph", args.path, "Edge list (gzip ok, '-' for stdin) or .dksg cache")
      ->required();
  app->add_flag("--weighted", args.weighted, "Read a third column as edge weight");
}

void add_solver_options(CLI::App* app, dks::RunConfig& cfg, std::string& prox_scale,
                        std::string& fw_step, std::string& iterate, std::string& tpm_init) {
  auto& s = cfg.solver;
  app->add_option("--rho", s.rho, "ADMM penalty")->capture_default_str();
  app->add_option("--alpha", s.alpha, "Over-relaxation in [1, 2)")->capture_default_str();
  app->add_option("--mu", s.mu, "Proximal regularization (default 1/(rho ||B||^2))");
  app->add_option("--eps-abs", s.eps_abs, "Absolute stopping tolerance (1e-4 for very large graphs)")
      ->capture_default_str();
  app->add_option("--eps-rel", s.eps_rel, "Relative stopping tolerance")->capture_default_str();
  app->add_option("--bisect-eps", s.bisection_eps, "Bisection exit tolerance")
      ->capture_default_str();
  app->add_option("--max-iter", s.max_iter, "L-ADMM iteration cap")->capture_default_str();
  app->add_option("--thin", s.objective_every, "Record the objective every N iterations")
      ->capture_default_str();
  app->add_option("--prox-scale", prox_scale, "derived (tau = 1/mu) or literal (tau = rho)")
      ->check(CLI::IsMember({"derived", "literal"}))
      ->capture_default_str();
  app->add_flag("--scaled-dual-residual", s.scaled_dual_residual,
                "Multiply the dual residual by rho");
  app->add_option("--fw-max-iter", cfg.fw.max_iter, "Frank-Wolfe iteration cap")
      ->capture_default_str();
  app->add_option("--fw-step", fw_step, "exact (line search) or closed-form")
      ->check(CLI::IsMember({"exact", "closed-form"}))
      ->capture_default_str();
  app->add_option("--tpm-max-iter", cfg.tpm_max_iter, "TPM iteration cap")->capture_default_str();
  app->add_option("--tpm-init", tpm_init, "auto, ladmm or degree")
      ->check(CLI::IsMember({"auto", "ladmm", "degree"}))
      ->capture_default_str();
  app->add_option("--iterate", iterate, "Round the averaged (avg) or last L-ADMM iterate")
      ->check(CLI::IsMember({"avg", "last"}))
      ->capture_default_str();
  app->add_option("--seed", cfg.seed, "Seed of the spectral start vectors")->capture_default_str();
}

void finish_config(dks::RunConfig& cfg, const std::string& prox_scale,
                   const std::string& fw_step, const std::string& iterate,
                   const std::string& tpm_init) {
  cfg.solver.prox_scale =
      prox_scale == "literal" ? dks::ProxScale::kLiteral : dks::ProxScale::kDerived;
  cfg.fw.step = fw_step == "closed-form" ? dks::FwStep::kClosedForm : dks::FwStep::kExactLineSearch;
  cfg.round_last_iterate = iterate == "last";
  cfg.tpm_init = tpm_init == "ladmm"    ? dks::TpmInit::kLadmm
                 : tpm_init == "degree" ? dks::TpmInit::kDegree
                                        : dks::TpmInit::kAuto;
}

dks::Graph load_graph(const GraphArgs& args) {
  try {
    if (args.path != "-") {
      std::ifstream probe(args.path, std::ios::binary);
      char magic[4] = {};
      probe.read(magic, 4);
      if (probe && std::string_view(magic, 4) == "DKSG") return dks::load_binary(args.path);
    }
    return dks::load_edge_list_file(args.path, {.weighted = args.weighted});
  } catch (const dks::ParseError& e) {
    throw UsageError(args.path + ": " + e.what());
  } catch (const dks::DomainError& e) {
    throw UsageError(args.path + ": " + e.what());
  }
}

void check_k(const dks::Graph& g, std::size_t k) {
  if (k < 2 || k + 1 > g.num_vertices()) {
    throw UsageError("--k must be in [2, " + std::to_string(g.num_vertices() - 1) +
                     "] for this graph (n = " + std::to_string(g.num_vertices()) + ")");
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

dks::Method method_or_throw(const std::string& name) {
  auto m = dks::parse_method(name);
  if (!m) throw UsageError("unknown method '" + name + "'");
  return *m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dense k-subgraph discovery via the Lovasz relaxation"};
  app.require_subcommand(1);

  // solve
  GraphArgs solve_graph;
  dks::RunConfig solve_cfg;
  std::string prox_scale = "derived", fw_step = "exact", iterate = "avg", tpm_init = "auto";
  std::size_t solve_k = 0;
  std::string solve_method = "ladmm-fw";
  bool solve_bound = false;
  bool solve_json = false;
  auto* solve = app.add_subcommand("solve", "Find a dense k-subgraph with one method");
  add_graph_options(solve, solve_graph);
  solve->add_option("--k", solve_k, "Subgraph size")->required()->check(CLI::Range(2, 1 << 30));
  solve->add_option("--method", solve_method,
                    "ladmm-project, ladmm-fw, greedy, tpm, rank1 or brute")
      ->capture_default_str();
  solve->add_flag("--bound", solve_bound, "Also report the rank-1 density upper bound");
  solve->add_flag("--json", solve_json, "Machine-readable output");
  add_solver_options(solve, solve_cfg, prox_scale, fw_step, iterate, tpm_init);

  // sweep
  GraphArgs sweep_graph;
  dks::SweepOptions sweep_opts;
  std::size_t k_min = 0, k_max = 0, k_step = 1;
  std::string k_list, methods_arg, sweep_out;
  bool no_bound = false, no_timing = false;
  auto* sweep = app.add_subcommand("sweep", "Density and runtime versus k for several methods");
  add_graph_options(sweep, sweep_graph);
  sweep->add_option("--k-min", k_min, "Smallest k");
  sweep->add_option("--k-max", k_max, "Largest k");
  sweep->add_option("--k-step", k_step, "Step of the k grid")->check(CLI::PositiveNumber);
  sweep->add_option("--k-list", k_list, "Explicit comma-separated k values");
  sweep->add_option("--methods", methods_arg,
                    "Comma-separated methods (default: every method except brute)");
  sweep->add_option("--out", sweep_out, "CSV output path (default stdout)");
  sweep->add_option("--threads", sweep_opts.threads, "Worker threads")
      ->envname("DKS_THREADS")
      ->check(CLI::PositiveNumber);
  sweep->add_flag("--no-bound", no_bound, "Skip the upper-bound rows");
  sweep->add_flag("--no-timing", no_timing, "Write runtime_ms = 0 (byte-reproducible CSV)");
  std::string sweep_prox = "derived", sweep_fw = "exact", sweep_iter = "avg", sweep_tpm = "auto";
  add_solver_options(sweep, sweep_opts.run, sweep_prox, sweep_fw, sweep_iter, sweep_tpm);

  // gen
  std::size_t gen_n = 0, gen_k = 0;
  double gen_p = 0.0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write a planted-clique instance as an edge list");
  gen->add_option("--n", gen_n, "Vertices")->required()->check(CLI::PositiveNumber);
  gen->add_option("--k", gen_k, "Planted clique size")->required();
  gen->add_option("--p", gen_p, "Background edge probability")->required()->check(
      CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_seed, "Generator seed")->required();
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  // plotdata
  std::string plot_csv, plot_dir;
  auto* plot = app.add_subcommand("plotdata", "Split a sweep CSV into per-method series files");
  plot->add_option("--csv", plot_csv, "Sweep CSV ('-' for stdin)")->required();
  plot->add_option("--out-dir", plot_dir, "Directory for the .dat files")->required();

  // cache
  GraphArgs cache_graph;
  std::string cache_out;
  auto* cache = app.add_subcommand("cache", "Preprocess an edge list into a binary cache");
  add_graph_options(cache, cache_graph);
  cache->add_option("--out", cache_out, "Cache path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve) {
      finish_config(solve_cfg, prox_scale, fw_step, iterate, tpm_init);
      const dks::Method method = method_or_throw(solve_method);
      const dks::Graph g = load_graph(solve_graph);
      check_k(g, solve_k);
      std::optional<dks::SpectralPair> sp;
      if (solve_bound || method == dks::Method::kRank1) {
        sp = dks::top_two_singular(g, 1e-10, solve_cfg.seed);
      }
      const dks::Method methods[] = {method};
      auto outcome =
          dks::run_methods(g, solve_k, methods, solve_cfg, sp ? &*sp : nullptr).front();
      std::optional<double> bound;
      if (solve_bound) {
        bound = dks::density_upper_bound(g, solve_k, *sp,
                                         dks::rank1_dks(g, solve_k, *sp).surrogate);
      }

      std::vector<std::int64_t> members;
      double weight = std::nan(""), density = std::nan("");
      if (outcome.set) {
        for (auto v : outcome.set->members()) members.push_back(g.original_ids()[v]);
        weight = dks::subgraph_weight(g, outcome.set->members());
        density = dks::edge_density(g, outcome.set->members());
      }
      if (solve_json) {
        nlohmann::json j;
        j["method"] = solve_method;
        j["k"] = solve_k;
        j["n"] = g.num_vertices();
        j["m"] = g.num_edges();
        j["members"] = members;
        j["weight"] = weight;
        j["density"] = density;
        j["upper_bound"] = bound ? nlohmann::json(*bound) : nlohmann::json(nullptr);
        j["iters"] = outcome.iters;
        j["converged"] = outcome.converged;
        j["runtime_ms"] = outcome.runtime_ms;
        if (!outcome.error.empty()) j["error"] = outcome.error;
        std::cout << j.dump(2) << '\n';
      } else {
        std::cout << "method: " << solve_method << '\n'
                  << "k: " << solve_k << '\n'
                  << "members:";
        for (auto id : members) std::cout << ' ' << id;
        std::cout << '\n'
                  << "weight: " << dks::format_double(weight) << '\n'
                  << "density: " << dks::format_double(density) << '\n';
        if (bound) std::cout << "upper_bound: " << dks::format_double(*bound) << '\n';
        std::cout << "iters: " << outcome.iters << '\n'
                  << "converged: " << (outcome.converged ? "true" : "false") << '\n'
                  << "runtime_ms: " << dks::format_double(outcome.runtime_ms) << '\n';
      }
      if (!outcome.error.empty()) {
        std::cerr << "dks: " << solve_method << " failed: " << outcome.error << '\n';
        return kExitNumerical;
      }
      return 0;
    }

    if (*sweep) {
      finish_config(sweep_opts.run, sweep_prox, sweep_fw, sweep_iter, sweep_tpm);
      const dks::Graph g = load_graph(sweep_graph);
      if (!k_list.empty()) {
        for (const auto& item : split_list(k_list)) {
          try {
            sweep_opts.ks.push_back(std::stoul(item));
          } catch (const std::exception&) {
            throw UsageError("bad --k-list entry '" + item + "'");
          }
        }
      } else {
        if (k_min == 0 || k_max < k_min) throw UsageError("need --k-list or --k-min <= --k-max");
        for (std::size_t k = k_min; k <= k_max; k += k_step) sweep_opts.ks.push_back(k);
      }
      for (std::size_t k : sweep_opts.ks) check_k(g, k);
      if (methods_arg.empty()) {
        sweep_opts.methods = dks::all_heuristics();
      } else {
        for (const auto& name : split_list(methods_arg)) {
          sweep_opts.methods.push_back(method_or_throw(name));
        }
      }
      sweep_opts.upper_bound = !no_bound;
      sweep_opts.timing = !no_timing;
      const auto records = dks::run_sweep(g, sweep_opts);
      if (sweep_out.empty()) {
        dks::write_csv(std::cout, records);
      } else {
        std::ofstream out(sweep_out);
        if (!out) throw UsageError("cannot write '" + sweep_out + "'");
        dks::write_csv(out, records);
      }
      return 0;
    }

    if (*gen) {
      dks::oracles::PlantedInstance inst;
      try {
        inst = dks::oracles::generate_planted(gen_n, gen_k, gen_p, gen_seed);
      } catch (const dks::DomainError& e) {
        throw UsageError(e.what());
      }
      std::ofstream file;
      if (!gen_out.empty()) {
        file.open(gen_out);
        if (!file) throw UsageError("cannot write '" + gen_out + "'");
      }
      std::ostream& out = gen_out.empty() ? std::cout : file;
      out << "# planted clique n=" << gen_n << " k=" << gen_k << " p=" << gen_p
          << " seed=" << gen_seed << "\n# planted:";
      for (auto v : inst.planted.members()) out << ' ' << v;
      out << '\n';
      dks::write_edge_list(out, inst.graph, false);
      return 0;
    }

    if (*plot) {
      std::vector<std::filesystem::path> files;
      try {
        if (plot_csv == "-") {
          files = dks::emit_plot_data(std::cin, plot_dir);
        } else {
          std::ifstream in(plot_csv);
          if (!in) throw UsageError("cannot open '" + plot_csv + "'");
          files = dks::emit_plot_data(in, plot_dir);
        }
      } catch (const dks::ParseError& e) {
        throw UsageError(plot_csv + ": " + e.what());
      }
      for (const auto& f : files) std::cout << f.string() << '\n';
      return 0;
    }

    if (*cache) {
      const dks::Graph g = load_graph(cache_graph);
      dks::save_binary(g, cache_out);
      std::cout << "wrote " << cache_out << " (n=" << g.num_vertices()
                << ", m=" << g.num_edges() << ")\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "dks: " << e.what() << '\n';
    return kExitUsage;
  } catch (const dks::BoundViolation& e) {
    std::cerr << "dks: internal error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const dks::DomainError& e) {
    std::cerr << "dks: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "dks: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
