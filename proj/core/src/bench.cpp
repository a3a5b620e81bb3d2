#include "symlra/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace symlra::bench {

using nlohmann::json;

namespace {

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json summary_json(const Summary& s) {
  return json{{"min", s.min}, {"q25", s.q25}, {"q50", s.q50}, {"q75", s.q75}, {"max", s.max}};
}

std::string fmt(double v) {
  char buf[32];
  if (!std::isfinite(v)) return v > 0 ? "inf" : "nan";
  if (v != 0.0 && (std::abs(v) >= 1e4 || std::abs(v) < 1e-3))
    std::snprintf(buf, sizeof buf, "%.2e", v);
  else
    std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

}  // namespace

double quantile(std::vector<double> v, double p) {
  if (v.empty()) throw std::invalid_argument("quantile: empty sample");
  std::sort(v.begin(), v.end());
  const double h = (static_cast<double>(v.size()) - 1.0) * std::clamp(p, 0.0, 1.0);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  if (lo == hi || v[lo] == v[hi]) return v[lo];
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

Summary summarize(const std::vector<double>& v) {
  return {quantile(v, 0.0), quantile(v, 0.25), quantile(v, 0.5), quantile(v, 0.75), quantile(v, 1.0)};
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

TrialStats run_table(int n, int m, int r, double eps, int trials, std::uint64_t seed, const BenchConfig& cfg) {
  if (trials < 1) throw std::invalid_argument("run_table: trials must be >= 1");
  if (!(eps >= 0.0)) throw std::invalid_argument("run_table: eps must be nonnegative");
  TrialStats st;
  st.n = n;
  st.m = m;
  st.r = r;
  st.eps = eps;
  st.relative = eps > 0.0;
  st.records.resize(static_cast<std::size_t>(trials));
  parallel_for(st.records.size(), cfg.threads, [&](std::size_t k) {
    TrialRecord& rec = st.records[k];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const std::uint64_t s = trial_seed(seed, k);
      const auto inst = random_rank_r(n, m, r, s);
      const SymTensor f = perturb(inst.tensor, eps, s ^ 0xa5a5a5a5ULL);
      ApproxOptions opts = cfg.approx;
      opts.rank = r;
      opts.seed = s;
      const ApproxResult res = approximate(f, opts);
      rec.err_gp = res.err_gp;
      rec.err_opt = res.err_opt;
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.error = e.what();
    }
    rec.seconds = elapsed(t0);
  });
  const double scale = st.relative ? eps : 1.0;
  double total = 0.0;
  for (const auto& rec : st.records) {
    const double inf = std::numeric_limits<double>::infinity();
    st.err_gp.push_back(rec.failed ? inf : rec.err_gp / scale);
    st.err_opt.push_back(rec.failed ? inf : rec.err_opt / scale);
    st.failures += rec.failed ? 1 : 0;
    total += rec.seconds;
  }
  st.gp = summarize(st.err_gp);
  st.opt = summarize(st.err_opt);
  st.mean_seconds = total / trials;
  return st;
}

NlsArm best_of_refinements(const SymTensor& f, const std::vector<Decomposition>& starts,
                           const numerics::LMConfig& cfg) {
  if (starts.empty()) throw std::invalid_argument("best_of_refinements: no starts");
  const auto t0 = std::chrono::steady_clock::now();
  NlsArm arm;
  arm.error = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    RefineResult res = refine(f, s, cfg);
    if (res.error < arm.error) {
      arm.error = res.error;
      arm.best = std::move(res.x);
    }
  }
  arm.seconds = elapsed(t0);
  return arm;
}

NlsComparison run_nls_comparison(int n, int m, int r, double eps, int trials, int nls_restarts, std::uint64_t seed,
                                 const BenchConfig& cfg, std::optional<double> tau) {
  if (trials < 1 || nls_restarts < 1) throw std::invalid_argument("run_nls_comparison: trials and restarts must be >= 1");
  if (!(eps > 0.0)) throw std::invalid_argument("run_nls_comparison: eps must be positive");
  NlsComparison out;
  out.n = n;
  out.m = m;
  out.r = r;
  out.eps = eps;
  out.tau = tau.value_or(std::pow(1000.0, 1.0 / r));
  out.nls_restarts = nls_restarts;
  out.trials.resize(static_cast<std::size_t>(trials));
  parallel_for(out.trials.size(), cfg.threads, [&](std::size_t k) {
    NlsTrial& t = out.trials[k];
    try {
      const std::uint64_t s = trial_seed(seed, k);
      const auto inst = random_rank_r(n, m, r, s, out.tau);
      const SymTensor f = perturb(inst.tensor, eps, s ^ 0xa5a5a5a5ULL);
      ApproxOptions opts = cfg.approx;
      opts.rank = r;
      opts.seed = s;
      const ApproxResult gp = approximate(f, opts);
      t.err_opt = gp.err_opt / eps;
      t.tm_opt = gp.seconds;
      std::mt19937_64 rng(s ^ 0x6e6c73ULL);
      std::vector<Decomposition> starts;
      for (int j = 0; j < nls_restarts; ++j) {
        Decomposition d(n, m);
        for (int i = 0; i < r; ++i) d.vectors.push_back(complex_gaussian(n, rng));
        starts.push_back(std::move(d));
      }
      const NlsArm nls = best_of_refinements(f, starts, cfg.approx.refine_lm);
      t.err_nls = nls.error / eps;
      t.tm_nls = nls.seconds;
      t.ratio = t.err_nls / t.err_opt;
      t.time_ratio = t.tm_opt > 0.0 ? t.tm_nls / t.tm_opt : 0.0;
    } catch (const std::exception& e) {
      t.failed = true;
      t.error = e.what();
      t.ratio = std::numeric_limits<double>::quiet_NaN();
    }
  });
  std::vector<double> ratios, times;
  for (const auto& t : out.trials)
    if (!t.failed) {
      ratios.push_back(t.ratio);
      times.push_back(t.time_ratio);
    }
  if (!ratios.empty()) {
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    for (int k : {1, 5, 10, 15, 20}) {
      const auto rank = static_cast<std::size_t>(std::ceil(k * static_cast<double>(sorted.size()) / 20.0));
      out.ratio_order_stats.push_back(sorted[std::max<std::size_t>(rank, 1) - 1]);
    }
    out.median_ratio = quantile(ratios, 0.5);
    out.time_ratio_min = quantile(times, 0.0);
    out.time_ratio_median = quantile(times, 0.5);
    out.time_ratio_max = quantile(times, 1.0);
  }
  return out;
}

std::vector<DecompCaseStats> run_decomposition_table(const std::vector<DecompCase>& cases, int trials,
                                                     std::uint64_t seed, const BenchConfig& cfg) {
  if (trials < 1) throw std::invalid_argument("run_decomposition_table: trials must be >= 1");
  std::vector<DecompCaseStats> out;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const DecompCase c = cases[ci];
    DecompCaseStats st;
    st.c = c;
    st.trials = trials;
    st.has_omega = false;
    std::vector<double> rel(static_cast<std::size_t>(trials), std::numeric_limits<double>::infinity());
    std::vector<double> secs(static_cast<std::size_t>(trials), 0.0);
    std::vector<char> omega(static_cast<std::size_t>(trials), 0);
    parallel_for(rel.size(), cfg.threads, [&](std::size_t k) {
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const std::uint64_t s = trial_seed(seed + ci, k);
        const auto inst = random_rank_r(c.n, c.m, c.r, s);
        DecomposeOptions opts;
        opts.approx = cfg.approx;
        opts.approx.rank = c.r;
        opts.approx.seed = s;
        const DecomposeResult res = decompose(inst.tensor, opts);
        rel[k] = res.best_relative_residual;
        omega[k] = res.best.omega_parameters > 0;
      } catch (const std::exception&) {
      }
      secs[k] = elapsed(t0);
    });
    double total = 0.0;
    for (int k = 0; k < trials; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      if (rel[kk] <= 1e-6) ++st.successes;
      st.has_omega = st.has_omega || omega[kk];
      total += secs[kk];
    }
    st.relative_residuals = rel;
    st.success_rate = static_cast<double>(st.successes) / trials;
    st.mean_seconds = total / trials;
    out.push_back(std::move(st));
  }
  return out;
}

json to_json(const TrialStats& s, bool timing) {
  json j{{"n", s.n}, {"m", s.m}, {"r", s.r}, {"eps", s.eps}, {"trials", s.records.size()},
         {"relative", s.relative}, {"failures", s.failures}, {"err_gp", summary_json(s.gp)},
         {"err_opt", summary_json(s.opt)}, {"err_gp_trials", s.err_gp}, {"err_opt_trials", s.err_opt}};
  if (timing) j["mean_seconds"] = s.mean_seconds;
  return j;
}

json to_json(const NlsComparison& s, bool timing) {
  json ratios = json::array();
  for (const auto& t : s.trials) ratios.push_back(t.ratio);
  json j{{"n", s.n},
         {"m", s.m},
         {"r", s.r},
         {"eps", s.eps},
         {"tau", s.tau},
         {"trials", s.trials.size()},
         {"nls_restarts", s.nls_restarts},
         {"ratio_order_stats", s.ratio_order_stats},
         {"median_ratio", s.median_ratio},
         {"ratios", ratios}};
  if (timing)
    j["time_ratio"] = {{"min", s.time_ratio_min}, {"median", s.time_ratio_median}, {"max", s.time_ratio_max}};
  return j;
}

json to_json(const std::vector<DecompCaseStats>& s, bool timing) {
  json arr = json::array();
  for (const auto& c : s) {
    json j{{"n", c.c.n}, {"m", c.c.m}, {"r", c.c.r}, {"trials", c.trials}, {"successes", c.successes},
           {"success_rate", c.success_rate}, {"omega", c.has_omega}};
    if (timing) j["mean_seconds"] = c.mean_seconds;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string to_table(const TrialStats& s, bool timing) {
  std::ostringstream os;
  os << "n=" << s.n << " m=" << s.m << " r=" << s.r << " eps=" << fmt(s.eps) << " trials=" << s.records.size()
     << (s.relative ? "" : " (absolute errors)") << "\n";
  os << pad("", 8) << pad("min", 10) << pad("25th", 10) << pad("50th", 10) << pad("75th", 10) << pad("max", 10);
  if (timing) os << pad("time", 10);
  os << "\n";
  auto row = [&](const char* name, const Summary& q) {
    os << pad(name, 8) << pad(fmt(q.min), 10) << pad(fmt(q.q25), 10) << pad(fmt(q.q50), 10) << pad(fmt(q.q75), 10)
       << pad(fmt(q.max), 10);
  };
  row("err-gp", s.gp);
  if (timing) os << pad(fmt(s.mean_seconds), 10);
  os << "\n";
  row("err-opt", s.opt);
  os << "\n";
  return os.str();
}

std::string to_table(const NlsComparison& s, bool timing) {
  std::ostringstream os;
  os << "n=" << s.n << " m=" << s.m << " r=" << s.r << " eps=" << fmt(s.eps) << " tau=" << fmt(s.tau)
     << " trials=" << s.trials.size() << " nls-restarts=" << s.nls_restarts << "\n";
  os << pad("err-nls/err-opt", 16);
  for (const char* h : {"1st", "5th", "10th", "15th", "20th"}) os << pad(h, 10);
  os << "\n" << pad("", 16);
  for (double v : s.ratio_order_stats) os << pad(fmt(v), 10);
  os << "\n";
  if (timing)
    os << pad("tm-nls/tm-opt", 16) << pad(fmt(s.time_ratio_min), 10) << pad(fmt(s.time_ratio_median), 10)
       << pad(fmt(s.time_ratio_max), 10) << "\n";
  return os.str();
}

std::string to_table(const std::vector<DecompCaseStats>& s, bool timing) {
  std::ostringstream os;
  os << pad("(n, m, r)", 14) << pad("success", 10);
  if (timing) os << pad("time", 10);
  os << "\n";
  for (const auto& c : s) {
    const std::string name =
        "(" + std::to_string(c.c.n) + ", " + std::to_string(c.c.m) + ", " + std::to_string(c.c.r) + ")" +
        (c.has_omega ? "*" : "");
    os << pad(name, 14) << pad(fmt(c.success_rate), 10);
    if (timing) os << pad(fmt(c.mean_seconds), 10);
    os << "\n";
  }
  return os.str();
}

}  // namespace symlra::bench
