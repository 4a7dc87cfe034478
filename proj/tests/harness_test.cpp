#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dks/errors.hpp"
#include "dks/harness.hpp"
#include "dks/oracles.hpp"
#include "test_util.hpp"

using namespace dks;

namespace {

std::string csv_of(const std::vector<SweepRecord>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

std::vector<std::string> lines_of(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dks_harness_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Methods, NamesRoundTrip) {
  for (Method m : {Method::kLadmmProject, Method::kLadmmFw, Method::kGreedy, Method::kTpm,
                   Method::kRank1, Method::kBrute}) {
    EXPECT_EQ(parse_method(method_name(m)), m);
  }
  EXPECT_FALSE(parse_method("sdp"));
  EXPECT_EQ(all_heuristics().size(), 5u);
}

TEST(RunMethods, K4K2AllMethodsFindTheClique) {
  auto g = test::k4_plus_k2();
  const Method methods[] = {Method::kLadmmProject, Method::kLadmmFw, Method::kGreedy,
                            Method::kTpm, Method::kRank1, Method::kBrute};
  auto out = run_methods(g, 4, methods, {});
  ASSERT_EQ(out.size(), 6u);
  for (const auto& o : out) {
    ASSERT_TRUE(o.set) << method_name(o.method);
    EXPECT_EQ(*o.set, VertexSet(g, {0, 1, 2, 3})) << method_name(o.method);
    EXPECT_TRUE(o.error.empty());
    EXPECT_GE(o.runtime_ms, 0.0);
  }
  EXPECT_GT(out[0].iters, 0);
  EXPECT_TRUE(out[0].converged);
}

TEST(RunMethods, FailuresAreRecorded) {
  auto g = oracles::cycle_graph(60);
  const Method methods[] = {Method::kBrute, Method::kGreedy};
  auto out = run_methods(g, 30, methods, {});
  EXPECT_FALSE(out[0].set);
  EXPECT_FALSE(out[0].converged);
  EXPECT_FALSE(out[0].error.empty());
  EXPECT_TRUE(out[1].set);
}

TEST(RunMethods, UnconvergedSolveStillRounds) {
  auto g = oracles::generate_planted(100, 10, 0.1, 2).graph;
  RunConfig cfg;
  cfg.solver.max_iter = 2;
  const Method methods[] = {Method::kLadmmFw};
  auto out = run_methods(g, 10, methods, cfg);
  EXPECT_TRUE(out[0].set);
  EXPECT_FALSE(out[0].converged);
  EXPECT_EQ(out[0].iters, 2);
}

TEST(Sweep, CompleteGraphSaturatesBound) {
  auto g = oracles::complete_graph(8);
  SweepOptions opts;
  opts.ks = {2, 3, 4, 5, 6, 7};
  opts.methods = all_heuristics();
  auto rows = run_sweep(g, opts);
  EXPECT_EQ(rows.size(), 6u * 6u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.density, 1.0) << r.k << ' ' << r.method;
    ASSERT_TRUE(r.upper_bound);
    EXPECT_EQ(*r.upper_bound, 1.0);
    EXPECT_EQ(*r.bound_ratio, 1.0);
  }
}

TEST(Sweep, RowsSortedAndDensitiesRecomputed) {
  auto g = oracles::generate_planted(80, 8, 0.1, 5).graph;
  SweepOptions opts;
  opts.ks = {9, 4, 6};
  opts.methods = {Method::kTpm, Method::kGreedy, Method::kLadmmFw};
  opts.threads = 3;
  auto rows = run_sweep(g, opts);
  ASSERT_EQ(rows.size(), 12u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_TRUE(rows[i - 1].k < rows[i].k ||
                (rows[i - 1].k == rows[i].k && rows[i - 1].method < rows[i].method));
  }
  for (const auto& r : rows) {
    if (r.method == kUpperBoundTag) continue;
    EXPECT_DOUBLE_EQ(r.density, r.weight / (r.k * (r.k - 1.0)));
    EXPECT_LE(*r.bound_ratio, 1.0 + 1e-9);
    EXPECT_GE(*r.bound_ratio, 0.0);
  }
}

TEST(Sweep, BruteDominatesHeuristics) {
  auto g = test::random_nonempty_graph(14, 0.35, 8);
  SweepOptions opts;
  for (std::size_t k = 2; k < 14; ++k) opts.ks.push_back(k);
  opts.methods = all_heuristics();
  opts.methods.push_back(Method::kBrute);
  auto rows = run_sweep(g, opts);
  std::map<std::size_t, double> brute;
  for (const auto& r : rows) {
    if (r.method == "brute") brute[r.k] = r.weight;
  }
  for (const auto& r : rows) {
    if (r.method == kUpperBoundTag) {
      EXPECT_GE(r.density * (1 + 1e-9), brute[r.k] / (r.k * (r.k - 1.0)));
    } else {
      EXPECT_LE(r.weight, brute[r.k]) << r.k << ' ' << r.method;
    }
  }
}

TEST(Sweep, DeterministicWithoutTiming) {
  auto g = oracles::generate_planted(60, 6, 0.15, 9).graph;
  SweepOptions opts;
  opts.ks = {3, 5, 7};
  opts.methods = all_heuristics();
  opts.timing = false;
  const auto a = csv_of(run_sweep(g, opts));
  EXPECT_EQ(a, csv_of(run_sweep(g, opts)));
  opts.threads = 3;
  EXPECT_EQ(a, csv_of(run_sweep(g, opts)));
}

TEST(Sweep, RejectsBadK) {
  auto g = oracles::complete_graph(5);
  SweepOptions opts;
  opts.ks = {5};
  opts.methods = {Method::kGreedy};
  EXPECT_THROW(run_sweep(g, opts), DomainError);
}

TEST(Csv, RoundTripIsBitExact) {
  std::vector<SweepRecord> rows;
  rows.push_back({3, "greedy", 0.1 + 0.2, 1.0 / 3.0, 0.7, (0.1 + 0.2) / 0.7, 0, true, 1e-7});
  rows.push_back({3, "ladmm-fw", 1.0, 6.0, std::nullopt, std::nullopt, 17, false, 12.5});
  rows.push_back({4, "tpm", std::nan(""), std::nan(""), 1.0, std::nullopt, 3, false, 0.0});
  const auto text = csv_of(rows);
  EXPECT_EQ(text.substr(0, text.find('\n')), kCsvHeader);
  std::istringstream in(text);
  auto back = read_csv(in);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back[0].density, rows[0].density);
  EXPECT_EQ(back[0].weight, rows[0].weight);
  EXPECT_EQ(*back[0].bound_ratio, *rows[0].bound_ratio);
  EXPECT_EQ(back[0].runtime_ms, rows[0].runtime_ms);
  EXPECT_FALSE(back[1].upper_bound);
  EXPECT_FALSE(back[1].converged);
  EXPECT_TRUE(std::isnan(back[2].density));
  EXPECT_EQ(csv_of(back), text);
}

TEST(Csv, MalformedInputs) {
  auto fails = [](const std::string& text) {
    std::istringstream in(text);
    EXPECT_THROW(read_csv(in), ParseError) << text;
  };
  const std::string h(kCsvHeader);
  fails("");
  fails(h + "\n");
  fails("k,method\n1,x\n");
  fails(h + "\n3,greedy,1,2,,,0,1\n");
  fails(h + "\n3,greedy,abc,2,,,0,1,0\n");
  fails(h + "\n3,greedy,1,2,,,0,yes,0\n");
}

TEST(PlotData, TwoMethodsThreeKs) {
  std::vector<SweepRecord> rows;
  for (std::size_t k : {2u, 3u, 4u}) {
    rows.push_back({k, "greedy", 0.5 + 0.01 * k, 1, std::nullopt, std::nullopt, 0, true,
                    0.1 * k});
    rows.push_back({k, "tpm", 1.0 / k, 1, std::nullopt, std::nullopt, 0, true, 1.0 / 7});
  }
  std::istringstream in(csv_of(rows));
  const auto dir = fresh_dir("plot");
  auto files = emit_plot_data(in, dir);
  ASSERT_EQ(files.size(), 4u);
  auto lines = lines_of(dir / "density_tpm.dat");
  ASSERT_EQ(lines.size(), 4u);  // header comment + 3 points
  EXPECT_EQ(lines[1], "2 " + format_double(0.5));
  EXPECT_EQ(lines[3], "4 " + format_double(0.25));
  auto rt = lines_of(dir / "runtime_greedy.dat");
  ASSERT_EQ(rt.size(), 4u);
  for (std::size_t i = 0; i < 3; ++i) {
    std::istringstream row(rt[i + 1]);
    std::size_t k;
    std::string value;
    row >> k >> value;
    EXPECT_EQ(std::strtod(value.c_str(), nullptr), rows[2 * i].runtime_ms);
  }
  std::filesystem::remove_all(dir);
}

TEST(PlotData, EmptyCsvWritesNothing) {
  const auto dir = fresh_dir("empty");
  std::istringstream in{std::string(kCsvHeader) + "\n"};
  EXPECT_THROW(emit_plot_data(in, dir), ParseError);
  EXPECT_FALSE(std::filesystem::exists(dir));
  std::istringstream none{""};
  EXPECT_THROW(emit_plot_data(none, dir), ParseError);
  EXPECT_FALSE(std::filesystem::exists(dir));
}
