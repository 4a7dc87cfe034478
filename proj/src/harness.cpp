#include "dks/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include "dks/errors.hpp"
#include "dks/oracles.hpp"

namespace dks {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::kLadmmProject, "ladmm-project"}, {Method::kLadmmFw, "ladmm-fw"},
    {Method::kGreedy, "greedy"},              {Method::kTpm, "tpm"},
    {Method::kRank1, "rank1"},                {Method::kBrute, "brute"},
};

bool uses_ladmm(Method m) { return m == Method::kLadmmProject || m == Method::kLadmmFw; }

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = line.find(sep, pos);
    out.push_back(line.substr(pos, end == std::string_view::npos ? end : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

double parse_double_field(std::string_view t, std::size_t line, const char* what) {
  if (t == "nan") return std::nan("");
  double v = 0.0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(t) + "'");
  }
  return v;
}

template <class Int>
Int parse_int_field(std::string_view t, std::size_t line, const char* what) {
  Int v{};
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(t) + "'");
  }
  return v;
}

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (const auto& [method, n] : kMethodNames) {
    if (n == name) return method;
  }
  return std::nullopt;
}

std::vector<Method> all_heuristics() {
  return {Method::kLadmmProject, Method::kLadmmFw, Method::kGreedy, Method::kTpm,
          Method::kRank1};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::vector<MethodOutcome> run_methods(const Graph& g, std::size_t k,
                                       std::span<const Method> methods, const RunConfig& cfg,
                                       const SpectralPair* spectral) {
  const bool any_ladmm = std::any_of(methods.begin(), methods.end(), uses_ladmm);

  // Shared L-ADMM solve.
  bool admm_done = false;
  std::optional<SolverReport> admm;
  std::vector<double> admm_fallback;
  std::string admm_error;
  double admm_ms = 0.0;
  auto ensure_admm = [&] {
    if (admm_done) return;
    admm_done = true;
    const auto t0 = Clock::now();
    try {
      admm = solve_lrelax(g, k, cfg.solver);
    } catch (const NumericalError& e) {
      admm_error = e.what();
      admm_fallback = e.last_finite_iterate();
    } catch (const std::exception& e) {
      admm_error = e.what();
    }
    admm_ms = elapsed_ms(t0);
  };
  auto relaxed_point = [&]() -> const std::vector<double>* {
    if (admm) return cfg.round_last_iterate ? &admm->x_last : &admm->x_avg;
    if (!admm_fallback.empty()) return &admm_fallback;
    return nullptr;
  };

  std::optional<SpectralPair> own_spectral;

  std::vector<MethodOutcome> out;
  for (Method method : methods) {
    MethodOutcome res;
    res.method = method;
    auto t0 = Clock::now();
    double extra_ms = 0.0;
    try {
      switch (method) {
        case Method::kLadmmProject:
        case Method::kLadmmFw: {
          ensure_admm();
          extra_ms = admm_ms;
          const std::vector<double>* x = relaxed_point();
          if (!x) throw std::runtime_error(admm_error);
          if (method == Method::kLadmmProject) {
            res.set = project_topk(g, *x, k);
          } else {
            res.set = frank_wolfe_refine(g, k, *x, cfg.fw).set;
          }
          res.iters = admm ? admm->iters : 0;
          res.converged = admm && admm->converged;
          res.error = admm_error;
          break;
        }
        case Method::kGreedy:
          res.set = greedy_feige(g, k);
          break;
        case Method::kTpm: {
          const bool from_ladmm = cfg.tpm_init == TpmInit::kLadmm ||
                                  (cfg.tpm_init == TpmInit::kAuto && any_ladmm);
          std::vector<double> x0;
          if (from_ladmm) {
            ensure_admm();
            if (const auto* x = relaxed_point()) x0 = *x;
          }
          if (x0.empty()) x0 = degree_topk_indicator(g, k);
          t0 = Clock::now();  // the shared solve is not charged to tpm
          auto tpm = truncated_power_method(g, k, x0, cfg.tpm_max_iter);
          res.set = std::move(tpm.set);
          res.iters = tpm.iters;
          break;
        }
        case Method::kRank1: {
          if (!spectral && !own_spectral) own_spectral = top_two_singular(g, 1e-10, cfg.seed);
          const SpectralPair& sp = spectral ? *spectral : *own_spectral;
          res.set = rank1_dks(g, k, sp).set;
          res.converged = sp.converged;
          break;
        }
        case Method::kBrute:
          res.set = oracles::brute_force_dks(g, k).set;
          break;
      }
    } catch (const std::exception& e) {
      res.converged = false;
      res.error = e.what();
    }
    res.runtime_ms = std::max(0.0, elapsed_ms(t0) + extra_ms);
    out.push_back(std::move(res));
  }
  return out;
}

std::vector<SweepRecord> run_sweep(const Graph& g, const SweepOptions& options) {
  const std::size_t n = g.num_vertices();
  for (std::size_t k : options.ks) {
    if (k < 2 || k + 1 > n) {
      throw DomainError("k = " + std::to_string(k) + " outside [2, n - 1] for n = " +
                        std::to_string(n));
    }
  }
  if (options.methods.empty() && !options.upper_bound) {
    throw DomainError("sweep needs at least one method or the upper bound");
  }

  const bool need_spectral =
      options.upper_bound || std::find(options.methods.begin(), options.methods.end(),
                                       Method::kRank1) != options.methods.end();
  std::optional<SpectralPair> sp;
  double spectral_ms = 0.0;
  if (need_spectral) {
    const auto t0 = Clock::now();
    sp = top_two_singular(g, 1e-10, options.run.seed);
    spectral_ms = elapsed_ms(t0);
  }

  std::vector<std::vector<SweepRecord>> per_k(options.ks.size());
  auto job = [&](std::size_t idx) {
    const std::size_t k = options.ks[idx];
    auto outcomes = run_methods(g, k, options.methods, options.run, sp ? &*sp : nullptr);
    std::optional<double> bound;
    if (options.upper_bound) {
      const double q = rank1_dks(g, k, *sp).surrogate;
      bound = density_upper_bound(g, k, *sp, q);
    }
    auto& rows = per_k[idx];
    for (auto& o : outcomes) {
      SweepRecord r;
      r.k = k;
      r.method = std::string(method_name(o.method));
      r.iters = o.iters;
      r.converged = o.converged;
      r.runtime_ms = o.runtime_ms + (o.method == Method::kRank1 ? spectral_ms : 0.0);
      if (o.set) {
        r.weight = subgraph_weight(g, o.set->members());
        r.density = edge_density(g, o.set->members());
      } else {
        r.weight = r.density = std::nan("");
      }
      if (bound) {
        r.upper_bound = *bound;
        if (*bound > 0.0 && !std::isnan(r.density)) {
          r.bound_ratio = r.density / *bound;
          if (*r.bound_ratio > 1.0 + 1e-9) {
            throw BoundViolation("density " + format_double(r.density) + " of " + r.method +
                                 " at k = " + std::to_string(k) +
                                 " exceeds the upper bound " + format_double(*bound));
          }
        }
      }
      rows.push_back(std::move(r));
    }
    if (bound) {
      SweepRecord r;
      r.k = k;
      r.method = std::string(kUpperBoundTag);
      r.density = *bound;
      r.weight = *bound * static_cast<double>(k) * static_cast<double>(k - 1);
      r.upper_bound = *bound;
      r.bound_ratio = 1.0;
      r.converged = sp->converged;
      r.runtime_ms = spectral_ms;
      rows.push_back(std::move(r));
    }
  };

  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(1, options.threads)), 1,
                              std::max<std::size_t>(1, options.ks.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= options.ks.size()) return;
      try {
        job(idx);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<SweepRecord> all;
  for (auto& rows : per_k) {
    for (auto& r : rows) all.push_back(std::move(r));
  }
  if (!options.timing) {
    for (auto& r : all) r.runtime_ms = 0.0;
  }
  std::stable_sort(all.begin(), all.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return a.k != b.k ? a.k < b.k : a.method < b.method;
  });
  return all;
}

void write_csv(std::ostream& out, std::span<const SweepRecord> records) {
  std::string buf(kCsvHeader);
  buf += '\n';
  for (const auto& r : records) {
    buf += std::to_string(r.k);
    buf += ',';
    buf += r.method;
    buf += ',';
    buf += format_double(r.density);
    buf += ',';
    buf += format_double(r.weight);
    buf += ',';
    if (r.upper_bound) buf += format_double(*r.upper_bound);
    buf += ',';
    if (r.bound_ratio) buf += format_double(*r.bound_ratio);
    buf += ',';
    buf += std::to_string(r.iters);
    buf += ',';
    buf += r.converged ? '1' : '0';
    buf += ',';
    buf += format_double(r.runtime_ms);
    buf += '\n';
  }
  out << buf;
}

std::vector<SweepRecord> read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };
  if (!next_line()) throw ParseError(0, "empty CSV");
  if (line != kCsvHeader) throw ParseError(line_no, "unexpected CSV header");

  std::vector<SweepRecord> records;
  while (next_line()) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) {
      throw ParseError(line_no, "expected 9 fields, got " + std::to_string(f.size()));
    }
    SweepRecord r;
    r.k = parse_int_field<std::size_t>(f[0], line_no, "k");
    if (f[1].empty()) throw ParseError(line_no, "empty method");
    r.method = std::string(f[1]);
    r.density = parse_double_field(f[2], line_no, "density");
    r.weight = parse_double_field(f[3], line_no, "weight");
    if (!f[4].empty()) r.upper_bound = parse_double_field(f[4], line_no, "upper_bound");
    if (!f[5].empty()) r.bound_ratio = parse_double_field(f[5], line_no, "bound_ratio");
    r.iters = parse_int_field<int>(f[6], line_no, "iters");
    if (f[7] != "0" && f[7] != "1") throw ParseError(line_no, "bad converged flag");
    r.converged = f[7] == "1";
    r.runtime_ms = parse_double_field(f[8], line_no, "runtime_ms");
    records.push_back(std::move(r));
  }
  if (records.empty()) throw ParseError(line_no, "CSV holds no records");
  return records;
}

std::vector<std::filesystem::path> emit_plot_data(std::istream& csv,
                                                  const std::filesystem::path& dir) {
  const auto records = read_csv(csv);
  std::map<std::string, std::vector<const SweepRecord*>> by_method;
  for (const auto& r : records) by_method[r.method].push_back(&r);

  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const auto& [method, rows] : by_method) {
    const auto density_path = dir / ("density_" + method + ".dat");
    const auto runtime_path = dir / ("runtime_" + method + ".dat");
    std::ofstream density(density_path);
    std::ofstream runtime(runtime_path);
    if (!density || !runtime) throw DomainError("cannot write into '" + dir.string() + "'");
    density << "# k density\n";
    runtime << "# k runtime_ms\n";
    for (const auto* r : rows) {
      density << r->k << ' ' << format_double(r->density) << '\n';
      runtime << r->k << ' ' << format_double(r->runtime_ms) << '\n';
    }
    written.push_back(density_path);
    written.push_back(runtime_path);
  }
  return written;
}

}  // namespace dks
