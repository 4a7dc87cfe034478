#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dks/baselines.hpp"
#include "dks/graph.hpp"
#include "dks/ladmm.hpp"
#include "dks/rounding.hpp"

namespace dks {

enum class Method { kLadmmProject, kLadmmFw, kGreedy, kTpm, kRank1, kBrute };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);
std::vector<Method> all_heuristics();  // every method except brute

// Row tag used for the per-k upper-bound record.
inline constexpr std::string_view kUpperBoundTag = "upper-bound";

enum class TpmInit { kAuto, kLadmm, kDegree };

struct RunConfig {
  SolverConfig solver;
  FwConfig fw;
  int tpm_max_iter = 100;
  TpmInit tpm_init = TpmInit::kAuto;  // L-ADMM solution whenever one is computed
  bool round_last_iterate = false;    // round x_last instead of x_avg
  std::uint64_t seed = 0x5eed;        // start vectors of the spectral estimates
};

struct MethodOutcome {
  Method method = Method::kGreedy;
  std::optional<VertexSet> set;  // empty only when the method failed outright
  int iters = 0;
  bool converged = true;
  double runtime_ms = 0.0;
  std::string error;
};

// Runs `methods` for one k and returns outcomes in the order given. The
// L-ADMM solve is shared by ladmm-project, ladmm-fw and (by default) tpm.
// Failures are captured in the outcome, never thrown. `spectral` is needed
// for rank1 and computed on demand when null.
std::vector<MethodOutcome> run_methods(const Graph& g, std::size_t k,
                                       std::span<const Method> methods, const RunConfig& cfg,
                                       const SpectralPair* spectral = nullptr);

struct SweepRecord {
  std::size_t k = 0;
  std::string method;
  double density = 0.0;
  double weight = 0.0;
  std::optional<double> upper_bound;
  std::optional<double> bound_ratio;
  int iters = 0;
  bool converged = true;
  double runtime_ms = 0.0;
};

struct SweepOptions {
  std::vector<std::size_t> ks;
  std::vector<Method> methods;
  bool upper_bound = true;
  RunConfig run;
  int threads = 1;
  bool timing = true;  // false writes runtime_ms = 0 for byte-stable output
};

// Raised when a reported density exceeds the a-posteriori upper bound.
class BoundViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// One row per (k, method) plus one upper-bound row per k, sorted by
// (k, method). Densities are recomputed from the returned vertex sets.
std::vector<SweepRecord> run_sweep(const Graph& g, const SweepOptions& options);

inline constexpr std::string_view kCsvHeader =
    "k,method,density,weight,upper_bound,bound_ratio,iters,converged,runtime_ms";

void write_csv(std::ostream& out, std::span<const SweepRecord> records);
std::vector<SweepRecord> read_csv(std::istream& in);

// Writes density_<method>.dat and runtime_<method>.dat ("k value" lines)
// into `dir` for every method in the CSV. Nothing is written when the input
// fails to parse or holds no rows. Returns the written paths.
std::vector<std::filesystem::path> emit_plot_data(std::istream& csv,
                                                  const std::filesystem::path& dir);

// Shortest decimal form that parses back to the same double; "nan" for NaN.
std::string format_double(double v);

}  // namespace dks
