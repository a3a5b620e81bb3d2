#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symlra/pipeline.hpp"

namespace symlra::bench {

/// Sample quantile, linear interpolation between order statistics
/// (Hyndman-Fan type 7). Throws on an empty sample.
double quantile(std::vector<double> v, double p);

struct Summary {
  double min = 0.0;
  double q25 = 0.0;
  double q50 = 0.0;
  double q75 = 0.0;
  double max = 0.0;
};
Summary summarize(const std::vector<double>& v);

/// Deterministic per-trial seed.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

/// Runs fn(0..count-1) on up to `threads` workers. fn must only write to
/// per-index state.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

struct BenchConfig {
  ApproxOptions approx;
  int threads = 1;
};

struct TrialRecord {
  double err_gp = 0.0;   // absolute
  double err_opt = 0.0;  // absolute
  double seconds = 0.0;
  bool failed = false;
  std::string error;
};

struct TrialStats {
  int n = 0, m = 0, r = 0;
  double eps = 0.0;
  /// err / eps when eps > 0, absolute errors otherwise.
  bool relative = true;
  std::vector<TrialRecord> records;
  std::vector<double> err_gp;   // per trial, scaled as above; +inf for failed trials
  std::vector<double> err_opt;
  Summary gp;
  Summary opt;
  double mean_seconds = 0.0;
  int failures = 0;
};

TrialStats run_table(int n, int m, int r, double eps, int trials, std::uint64_t seed, const BenchConfig& cfg = {});

struct NlsArm {
  Decomposition best;
  double error = 0.0;
  double seconds = 0.0;
};

/// Step 5 alone from each start; keeps the smallest error.
NlsArm best_of_refinements(const SymTensor& f, const std::vector<Decomposition>& starts,
                           const numerics::LMConfig& cfg);

struct NlsTrial {
  double err_opt = 0.0;  // relative to eps
  double err_nls = 0.0;
  double ratio = 0.0;    // err_nls / err_opt
  double tm_opt = 0.0;
  double tm_nls = 0.0;
  double time_ratio = 0.0;
  bool failed = false;
  std::string error;
};

struct NlsComparison {
  int n = 0, m = 0, r = 0;
  double eps = 0.0;
  double tau = 0.0;
  int nls_restarts = 0;
  std::vector<NlsTrial> trials;
  /// Order statistics at ranks ceil(k N / 20), k in {1, 5, 10, 15, 20}.
  std::vector<double> ratio_order_stats;
  double median_ratio = 0.0;
  double time_ratio_min = 0.0, time_ratio_median = 0.0, time_ratio_max = 0.0;
};

/// Paired trials on tau-scaled instances (default tau = 1000^{1/r}).
NlsComparison run_nls_comparison(int n, int m, int r, double eps, int trials, int nls_restarts, std::uint64_t seed,
                                 const BenchConfig& cfg = {}, std::optional<double> tau = std::nullopt);

struct DecompCase {
  int n = 0, m = 0, r = 0;
};

struct DecompCaseStats {
  DecompCase c;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  double mean_seconds = 0.0;
  bool has_omega = false;
  std::vector<double> relative_residuals;
};

/// Success: relative residual err_opt / |F| <= 1e-6. Restarts come from cfg.approx.
std::vector<DecompCaseStats> run_decomposition_table(const std::vector<DecompCase>& cases, int trials,
                                                     std::uint64_t seed, const BenchConfig& cfg = {});

nlohmann::json to_json(const TrialStats& s, bool timing = false);
nlohmann::json to_json(const NlsComparison& s, bool timing = false);
nlohmann::json to_json(const std::vector<DecompCaseStats>& s, bool timing = false);

std::string to_table(const TrialStats& s, bool timing = false);
std::string to_table(const NlsComparison& s, bool timing = false);
std::string to_table(const std::vector<DecompCaseStats>& s, bool timing = false);

}  // namespace symlra::bench
