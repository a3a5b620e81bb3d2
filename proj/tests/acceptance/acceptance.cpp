// Acceptance gate: one PASS/FAIL line per criterion.
//   symlra_acceptance                 run every criterion
//   symlra_acceptance --criterion N   run criterion N only

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "symlra/bench.hpp"
#include "symlra/catalecticant.hpp"
#include "symlra/families.hpp"
#include "symlra/matching.hpp"
#include "symlra/numerics.hpp"
#include "symlra/pipeline.hpp"

using namespace symlra;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a check; the first failing check is named in the detail line.
  void check(bool ok, const std::string& what) {
    if (!ok && pass) detail << "[failed: " << what << "] ";
    pass = pass && ok;
  }
};

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

int hardware_threads() { return std::max(1, static_cast<int>(std::thread::hardware_concurrency())); }

std::vector<double> to_std(const RVector& v) { return {v.data(), v.data() + v.size()}; }

double max_rel_jacobian_error(const std::function<RVector(const RVector&)>& res, const RMatrix& j, const RVector& x) {
  const auto fd = oracle::central_jacobian(
      [&](const std::vector<double>& y) {
        return to_std(res(Eigen::Map<const RVector>(y.data(), static_cast<Eigen::Index>(y.size()))));
      },
      to_std(x));
  double diff = 0.0;
  for (Eigen::Index c = 0; c < j.cols(); ++c)
    for (Eigen::Index r = 0; r < j.rows(); ++r) {
      const double d = j(r, c) - fd[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
      diff += d * d;
    }
  return std::sqrt(diff) / std::max(j.norm(), 1e-300);
}

// ---------------------------------------------------------------- criteria

Outcome sin_example() {
  Outcome o;
  Stopwatch sw;
  const SymTensor f = sin_tensor(6, 3);
  const RVector sv = numerics::singular_values(build_cat(f).matrix);
  o.check(std::abs(sv[0] - 5.7857) <= 1e-3 && std::abs(sv[1] - 5.4357) <= 1e-3, "top singular values");
  o.check(sv[2] <= 1e-10, "third singular value");
  ApproxOptions opts;
  opts.rank = 2;
  const auto res = approximate(f, opts);
  o.check(res.err_opt <= 1e-8, "err_opt");
  const double t = sw.seconds();
  o.check(t < 5.0, "runtime");
  o.detail << "sv = " << sv[0] << ", " << sv[1] << ", " << sv[2] << "; err_gp = " << res.err_gp
           << "; err_opt = " << res.err_opt << "; " << t << " s";
  return o;
}

Outcome rootsum_example() {
  Outcome o;
  Stopwatch sw;
  const SymTensor f = rootsum_tensor(5, 4);
  const RVector sv = numerics::singular_values(build_cat(f).matrix);
  const double ref[5] = {51.9534, 0.9185, 0.0133, 0.0003, 5.6e-6};
  for (int k = 0; k < 5; ++k) o.check(std::abs(sv[k] - ref[k]) <= 1e-3, "singular value " + std::to_string(k + 1));
  const int est = estimate_rank(sv).rank;
  o.check(est == 4, "estimate_rank");
  const auto res = approximate(f);
  o.check(res.rank == 4, "pipeline rank");
  o.check(res.err_gp <= 0.5, "err_gp");
  o.check(res.err_opt <= 1e-3, "err_opt");
  const double t = sw.seconds();
  o.check(t < 10.0, "runtime");
  o.detail << "sv = " << sv.head(5).transpose() << "; rank = " << est << "; err_gp = " << res.err_gp
           << "; err_opt = " << res.err_opt << "; " << t << " s";
  return o;
}

Outcome linear_example() {
  Outcome o;
  Stopwatch sw;
  const SymTensor f = linear_tensor(5, 3);
  ApproxOptions opts;
  opts.rank = 2;
  const auto res = approximate(f, opts);
  o.check(!res.coordinate_shuffled && res.companions.nvars() == 4, "companion set");
  double worst = 0.0;
  for (int i = 0; i < res.companions.nvars(); ++i) {
    CMatrix ref(2, 2);
    ref << -i, -(i + 1), i + 1, i + 2;
    worst = std::max(worst, (res.companions.matrices[static_cast<std::size_t>(i)] - ref).cwiseAbs().maxCoeff());
  }
  o.check(worst <= 1e-6, "companion matrices");
  double zero_err = 0.0;
  for (const auto& v : res.zeros) zero_err = std::max(zero_err, (v - CVector::Ones(4)).cwiseAbs().maxCoeff());
  o.check(res.zeros.size() == 2 && zero_err <= 1e-5, "zeros");
  o.check(res.err_opt <= 1e-6, "err_opt");
  const double t = sw.seconds();
  o.check(t < 5.0, "runtime");
  o.detail << "companion error = " << worst << "; zero error = " << zero_err << "; err_gp = " << res.err_gp
           << "; err_opt = " << res.err_opt << "; " << t << " s";
  return o;
}

Outcome waring8_example() {
  Outcome o;
  Stopwatch sw;
  const SymTensor f = waring8_tensor();
  DecomposeOptions opts;
  opts.approx.rank = 8;
  opts.approx.restarts = 5;
  opts.approx.seed = 1;
  opts.distinct = true;
  const auto res = decompose(f, opts);
  const std::size_t k = res.decompositions.size();
  o.check(k >= 2, "two distinct decompositions");
  double min_sep = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      min_sep = std::min(min_sep, decomposition_distance(res.decompositions[a], res.decompositions[b]));
  o.check(k < 2 || min_sep > 0.1, "pairwise separation");
  double worst = 0.0;
  for (const auto& d : res.decompositions) worst = std::max(worst, hs_norm(from_decomposition(d) - f) / hs_norm(f));
  o.check(worst <= 1e-6, "relative residual");
  const double t = sw.seconds();
  o.check(t < 60.0, "runtime");
  o.detail << k << " distinct decompositions from " << res.attempts << " attempts; min separation = " << min_sep
           << "; worst relative residual = " << worst << "; " << t << " s";
  return o;
}

Outcome error_tables() {
  Outcome o;
  Stopwatch sw;
  bench::BenchConfig cfg;
  cfg.threads = hardware_threads();
  double worst_max = 0.0, worst_median = 0.0;
  std::uint64_t seed = 500;
  for (int m : {3, 4})
    for (int r : {1, 3, 5})
      for (double eps : {1e-2, 1e-4}) {
        const auto st = bench::run_table(10, m, r, eps, 20, seed++, cfg);
        const std::string tag = "(10," + std::to_string(m) + "," + std::to_string(r) + ")";
        o.check(st.failures == 0, tag + " failures");
        o.check(st.opt.max <= 1.05, tag + " max err-opt");
        o.check(st.opt.q50 <= 1.0, tag + " median err-opt");
        worst_max = std::max(worst_max, st.opt.max);
        worst_median = std::max(worst_median, st.opt.q50);
      }
  const double t = sw.seconds();
  o.check(t < 600.0, "runtime");
  o.detail << "12 configurations x 20 trials; largest max err-opt = " << worst_max
           << "; largest median err-opt = " << worst_median << "; " << t << " s";
  return o;
}

Outcome nls_table() {
  Outcome o;
  Stopwatch sw;
  bench::BenchConfig cfg;
  cfg.threads = hardware_threads();
  const auto cmp = bench::run_nls_comparison(10, 3, 12, 1e-4, 5, 10, 600, cfg, std::pow(1000.0, 1.0 / 12.0));
  int failed = 0;
  for (const auto& tr : cmp.trials) failed += tr.failed ? 1 : 0;
  o.check(failed == 0, "trial failures");
  o.check(cmp.median_ratio >= 10.0, "median err-nls/err-opt");
  const double t = sw.seconds();
  o.check(t < 900.0, "runtime");
  o.detail << "ratios =";
  for (const auto& tr : cmp.trials) o.detail << ' ' << tr.ratio;
  o.detail << "; median = " << cmp.median_ratio << "; " << t << " s";
  return o;
}

Outcome decomposition_table() {
  Outcome o;
  Stopwatch sw;
  bench::BenchConfig cfg;
  cfg.threads = hardware_threads();
  const auto plain = bench::run_decomposition_table({{6, 3, 4}, {4, 5, 10}}, 20, 700, cfg);
  cfg.approx.restarts = 5;
  const auto omega = bench::run_decomposition_table({{3, 4, 5}}, 20, 701, cfg);
  o.check(plain[0].success_rate >= 0.9, "(6,3,4)");
  o.check(plain[1].success_rate >= 0.9, "(4,5,10)");
  o.check(omega[0].has_omega, "(3,4,5) has omega");
  o.check(omega[0].success_rate >= 0.8, "(3,4,5)");
  const double t = sw.seconds();
  o.check(t < 600.0, "runtime");
  o.detail << "success (6,3,4) = " << plain[0].success_rate << ", (4,5,10) = " << plain[1].success_rate
           << ", (3,4,5) with 5 restarts = " << omega[0].success_rate << "; " << t << " s";
  return o;
}

Outcome error_scaling() {
  Outcome o;
  const auto truth = random_rank_r(10, 3, 3, 800);
  ApproxOptions opts;
  opts.rank = 3;
  opts.skip_refine = true;
  double worst = std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < 10; ++s) {
    // same noise direction at both levels
    const auto big = approximate(perturb(truth.tensor, 1e-3, 900 + s), opts);
    const auto small = approximate(perturb(truth.tensor, 1e-5, 900 + s), opts);
    const double a = hs_norm(from_decomposition(big.xgp) - truth.tensor);
    const double b = hs_norm(from_decomposition(small.xgp) - truth.tensor);
    const double ratio = a / b;
    o.check(ratio >= 10.0, "seed " + std::to_string(s));
    worst = std::min(worst, ratio);
  }
  o.detail << "smallest ratio over 10 seeds = " << worst;
  return o;
}

Outcome binary_oracle() {
  Outcome o;
  double worst_res = 0.0, worst_gap = 0.0;
  for (int m : {3, 4})
    for (std::uint64_t s = 0; s < 10; ++s) {
      const auto inst = random_rank_r(2, m, 2, 1000 + static_cast<std::uint64_t>(m) * 100 + s);
      const CVector& fv = inst.tensor.values();
      const auto ref = oracle::binary_rank2(oracle::Vec(fv.data(), fv.data() + fv.size()));

      // oracle reconstruction, entry k = sum_i lambda_i v_i^k
      double oracle_res = 0.0;
      for (Eigen::Index k = 0; k < fv.size(); ++k) {
        oracle::cplx e = 0.0;
        for (int i = 0; i < 2; ++i) e += ref.lambda[i] * std::pow(ref.v[i], static_cast<int>(k));
        oracle_res += std::norm(e - fv[k]) * oracle::factorial(m) /
                      (oracle::factorial(static_cast<int>(k)) * oracle::factorial(m - static_cast<int>(k)));
      }
      oracle_res = std::sqrt(oracle_res) / hs_norm(inst.tensor);

      ApproxOptions opts;
      opts.rank = 2;
      const auto res = approximate(inst.tensor, opts);
      const double rel = res.err_opt / hs_norm(inst.tensor);
      const auto dh = dehomogenize(res.xopt);
      const double d_same = std::abs(dh.points[0][0] - ref.v[0]) + std::abs(dh.points[1][0] - ref.v[1]);
      const double d_swap = std::abs(dh.points[0][0] - ref.v[1]) + std::abs(dh.points[1][0] - ref.v[0]);
      const double gap = std::min(d_same, d_swap) / (1.0 + std::abs(ref.v[0]) + std::abs(ref.v[1]));
      o.check(oracle_res <= 1e-8, "oracle self-check");
      o.check(rel <= 1e-8, "pipeline residual m=" + std::to_string(m));
      o.check(gap <= 1e-6, "agreement with oracle m=" + std::to_string(m));
      worst_res = std::max(worst_res, rel);
      worst_gap = std::max(worst_gap, gap);
    }
  o.detail << "20 binary instances; worst relative residual = " << worst_res
           << "; worst point disagreement with the oracle = " << worst_gap;
  return o;
}

Outcome hygiene() {
  Outcome o;
  std::mt19937_64 rng(1100);

  // (a) weighted compact norm against the dense sum
  double worst_norm = 0.0;
  for (int n = 1; n <= 4; ++n)
    for (int m = 1; m <= 4; ++m) {
      const SymTensor f(n, m, complex_gaussian(static_cast<Eigen::Index>(binomial(n - 1 + m, m)), rng));
      const FullTensor full = full_from_compact(f);
      const double dense = std::sqrt(oracle::dense_norm2(n, m, [&](const std::vector<int>& t) { return full(t); }));
      worst_norm = std::max(worst_norm, std::abs(hs_norm(f) - dense) / dense);
    }
  o.check(worst_norm <= 1e-12, "(a) norm");

  // (b) analytic Jacobians against central differences
  std::normal_distribution<double> nd;
  double worst_jac = 0.0;
  {
    const SymTensor f = small_cubic_tensor();
    const MonomialBasis b = build_basis(3, 3, 4);
    const GenMatrix gen = solve_generating(f, b);
    const CommutatorProblem prob(b, gen);
    for (int t = 0; t < 10; ++t) {
      RVector x(2 * prob.num_parameters());
      for (auto& e : x) e = nd(rng);
      worst_jac = std::max(worst_jac, max_rel_jacobian_error([&](const RVector& y) { return prob.residual_real(y); },
                                                             prob.jacobian_real(x), x));
    }
    const auto inst = random_rank_r(4, 3, 3, 1101);
    const SymmetricFitProblem fit(inst.tensor, 3);
    for (int t = 0; t < 10; ++t) {
      RVector x(2 * fit.num_parameters());
      for (auto& e : x) e = nd(rng);
      worst_jac = std::max(worst_jac, max_rel_jacobian_error([&](const RVector& y) { return fit.residual_real(y); },
                                                             fit.jacobian_real(x), x));
    }
  }
  o.check(worst_jac <= 1e-5, "(b) Jacobians");

  // (c) B0 and B1 against brute-force enumeration
  bool sets_ok = true;
  for (int n = 2; n <= 10 && sets_ok; ++n)
    for (int r = 1; r <= 50 && sets_ok; ++r) {
      int m = 1;
      while (binomial(n - 1 + m, m) < static_cast<std::uint64_t>(r)) ++m;
      const MonomialBasis basis(n, m, r);
      const int nv = n - 1;
      const auto all = oracle::graded_lex_monomials(nv, m + 1);
      std::vector<std::vector<int>> b0(all.begin(), all.begin() + r);
      std::vector<std::vector<int>> b1;
      for (const auto& e : all) {
        if (std::find(b0.begin(), b0.end(), e) != b0.end()) continue;
        bool border = false;
        for (int i = 0; i < nv; ++i) {
          if (e[static_cast<std::size_t>(i)] == 0) continue;
          auto d = e;
          --d[static_cast<std::size_t>(i)];
          if (std::find(b0.begin(), b0.end(), d) != b0.end()) border = true;
        }
        if (border) b1.push_back(e);
      }
      // division closure of B0
      for (const auto& e : b0)
        for (int i = 0; i < nv; ++i)
          if (e[static_cast<std::size_t>(i)] > 0) {
            auto d = e;
            --d[static_cast<std::size_t>(i)];
            sets_ok = sets_ok && std::find(b0.begin(), b0.end(), d) != b0.end();
          }
      sets_ok = sets_ok && basis.b0().size() == b0.size() && basis.b1().size() == b1.size();
      for (std::size_t k = 0; sets_ok && k < b0.size(); ++k) sets_ok = basis.b0()[k].powers == b0[k];
      for (std::size_t k = 0; sets_ok && k < b1.size(); ++k) sets_ok = basis.b1()[k].powers == b1[k];
    }
  o.check(sets_ok, "(c) B0/B1");

  // (d) commutator residual on exact-rank instances
  double worst_comm = 0.0;
  const int cases[][3] = {{4, 3, 3}, {6, 3, 4}, {5, 4, 6}, {4, 5, 10}, {3, 4, 5}};
  for (const auto& c : cases)
    for (std::uint64_t s = 0; s < 3; ++s) {
      const auto inst = random_rank_r(c[0], c[1], c[2], 1200 + s);
      ApproxOptions opts;
      opts.rank = c[2];
      opts.restarts = 3;
      opts.skip_refine = true;
      const auto res = approximate(inst.tensor, opts);
      const double comm = commutator_residuals(res.companions).norm() / (1.0 + hs_norm(inst.tensor));
      worst_comm = std::max(worst_comm, comm);
    }
  o.check(worst_comm <= 1e-7, "(d) commutator residual");

  o.detail << "norm " << worst_norm << "; Jacobian " << worst_jac << "; basis sets " << (sets_ok ? "ok" : "mismatch")
           << "; commutator " << worst_comm;
  return o;
}

struct Criterion {
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"sin tensor rank-2 example", sin_example},
    {"rootsum tensor rank-4 example", rootsum_example},
    {"linear tensor without a best rank-2 approximation", linear_example},
    {"eight-term quartic with two decompositions", waring8_example},
    {"error statistics for rank 1, 3, 5 approximations", error_tables},
    {"generating-polynomial start versus random-start NLS", nls_table},
    {"exact decomposition success rates", decomposition_table},
    {"first-order error scaling", error_scaling},
    {"binary rank-2 oracle agreement", binary_oracle},
    {"numerical hygiene", hygiene},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  constexpr int count = static_cast<int>(std::size(kCriteria));
  if (only < 0 || only > count) {
    std::fprintf(stderr, "criterion must be in 1..%d\n", count);
    return 2;
  }
  int failures = 0;
  for (int k = 1; k <= count; ++k) {
    if (only != 0 && k != only) continue;
    const auto& c = kCriteria[k - 1];
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::printf("criterion %2d %s: %s (%s)\n", k, o.pass ? "PASS" : "FAIL", c.name, o.detail.str().c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
