#include "cli.hpp"

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "symlra/bench.hpp"
#include "symlra/catalecticant.hpp"
#include "symlra/families.hpp"
#include "symlra/io.hpp"
#include "symlra/numerics.hpp"
#include "symlra/pipeline.hpp"

namespace symlra::cli {

using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string input = "-";
  std::string format = "json";
  bool timing = false;

  // approximation
  std::optional<int> rank;
  double rank_tol = 1e-6;
  std::uint64_t seed = 0;
  int restarts = 0;
  int max_iter = 1000;
  int max_fev = 10000;
  bool coordinate_shuffle = false;
  bool skip_refine = false;

  // decompose
  double residual_tol = 1e-6;
  bool distinct = false;

  // gen
  std::string family;
  int n = 0;
  int m = 0;
  std::optional<double> tau;
  double eps = 0.0;
  bool full = false;

  // bench
  std::string kind = "table";
  int trials = 20;
  int threads = 1;
  int nls_restarts = 10;
  std::string cases = "6,3,4;4,5,10;3,4,5";
};

SymTensor load_tensor(const std::string& path, std::istream& in) {
  try {
    if (path == "-") {
      json j;
      try {
        j = json::parse(in);
      } catch (const json::parse_error& e) {
        throw io::FormatError(std::string("stdin: ") + e.what());
      }
      return io::tensor_from_json(j);
    }
    return io::read_tensor_file(path);
  } catch (const io::FormatError& e) {
    throw InputError(e.what());
  }
}

ApproxOptions approx_options(const Settings& s) {
  ApproxOptions o;
  o.rank = s.rank;
  o.rank_tol = s.rank_tol;
  o.seed = s.seed;
  o.restarts = s.restarts;
  o.omega_lm.max_iterations = o.refine_lm.max_iterations = s.max_iter;
  o.omega_lm.max_residual_evaluations = o.refine_lm.max_residual_evaluations = s.max_fev;
  o.coordinate_shuffle = s.coordinate_shuffle;
  o.skip_refine = s.skip_refine;
  return o;
}

json complex_array(const CVector& v) {
  json a = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) a.push_back(io::complex_to_json(v[k]));
  return a;
}

json approx_json(const ApproxResult& r, bool timing) {
  json zeros = json::array();
  for (const auto& v : r.zeros) zeros.push_back(complex_array(v));
  json statuses = json::array();
  for (auto s : r.omega_statuses) statuses.push_back(std::string(numerics::to_string(s)));
  json diag{{"commutator_objective", r.commutator_objective},
            {"omega_parameters", r.omega_parameters},
            {"omega_lm_statuses", statuses},
            {"omega_converged", r.omega_converged},
            {"xi_fallback", r.xi_fallback},
            {"repeated_eigenvalue", r.repeated_eigenvalue},
            {"min_eigen_gap", r.min_eigen_gap},
            {"generating_residuals", r.generating_residuals},
            {"refine_status", std::string(numerics::to_string(r.refine_status))},
            {"refine_iterations", r.refine_iterations},
            {"coordinate_shuffled", r.coordinate_shuffled}};
  if (timing) diag["seconds"] = r.seconds;
  return json{{"rank", r.rank},
              {"rank_estimated", r.rank_estimated},
              {"norm", r.norm_f},
              {"err_gp", r.err_gp},
              {"err_opt", r.err_opt},
              {"xgp", io::decomposition_to_json(r.xgp)},
              {"xopt", io::decomposition_to_json(r.xopt)},
              {"zeros", zeros},
              {"lambda", complex_array(r.lambda)},
              {"diagnostics", diag},
              {"warnings", r.warnings}};
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::setprecision(4) << std::scientific << v;
  return os.str();
}

std::string complex_text(Complex z) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

std::string decomposition_text(const Decomposition& d) {
  std::ostringstream os;
  for (const auto& u : d.vectors) {
    os << "  (";
    for (Eigen::Index k = 0; k < u.size(); ++k) os << (k ? ",  " : "") << complex_text(u[k]);
    os << ")\n";
  }
  return os.str();
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int cmd_rankest(const Settings& s, std::istream& in, std::ostream& out) {
  const SymTensor f = load_tensor(s.input, in);
  const CatMatrix cat = build_cat(f);
  const RVector sv = numerics::singular_values(cat.matrix);
  const RankEstimate est = estimate_rank(sv, s.rank_tol);
  if (s.format == "table") {
    out << "Cat(F): " << cat.matrix.rows() << " x " << cat.matrix.cols() << "\n";
    for (Eigen::Index k = 0; k < sv.size(); ++k) out << std::setw(4) << k + 1 << "  " << sci(sv[k]) << "\n";
    out << "estimated rank: " << est.rank << (est.beyond_resolution ? " (every singular value is significant)" : "")
        << "\n";
    return ok;
  }
  emit(out, json{{"n", f.dim()},
                 {"m", f.order()},
                 {"rows", cat.matrix.rows()},
                 {"cols", cat.matrix.cols()},
                 {"singular_values", std::vector<double>(sv.data(), sv.data() + sv.size())},
                 {"gap_ratios", est.gap_ratios},
                 {"rank_tol", s.rank_tol},
                 {"rank", est.rank},
                 {"beyond_resolution", est.beyond_resolution}});
  return ok;
}

int cmd_approx(const Settings& s, std::istream& in, std::ostream& out) {
  const SymTensor f = load_tensor(s.input, in);
  const ApproxResult r = approximate(f, approx_options(s));
  if (s.format == "table") {
    out << "rank " << r.rank << (r.rank_estimated ? " (estimated)" : "") << "\n";
    out << "err_gp  " << sci(r.err_gp) << "\nerr_opt " << sci(r.err_opt) << "\n";
    out << "X^opt vectors:\n" << decomposition_text(r.xopt);
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
    if (s.timing) out << "seconds " << r.seconds << "\n";
    return ok;
  }
  emit(out, approx_json(r, s.timing));
  return ok;
}

int cmd_decompose(const Settings& s, std::istream& in, std::ostream& out) {
  const SymTensor f = load_tensor(s.input, in);
  DecomposeOptions o;
  o.approx = approx_options(s);
  o.residual_tol = s.residual_tol;
  o.distinct = s.distinct;
  const DecomposeResult r = decompose(f, o);
  if (s.format == "table") {
    out << (r.success ? "decomposition found" : "no decomposition within tolerance") << " after " << r.attempts
        << " attempt(s); best relative residual " << sci(r.best_relative_residual) << "\n";
    for (std::size_t k = 0; k < r.decompositions.size(); ++k)
      out << "decomposition " << k + 1 << " (relative residual " << sci(r.relative_residuals[k]) << "):\n"
          << decomposition_text(r.decompositions[k]);
  } else {
    json decs = json::array();
    for (const auto& d : r.decompositions) decs.push_back(io::decomposition_to_json(d));
    emit(out, json{{"success", r.success},
                   {"attempts", r.attempts},
                   {"residual_tol", s.residual_tol},
                   {"best_error", r.best_error},
                   {"best_relative_residual", r.best_relative_residual},
                   {"decompositions", decs},
                   {"relative_residuals", r.relative_residuals},
                   {"best", approx_json(r.best, s.timing)}});
  }
  return r.success ? ok : numerical_failure;
}

int cmd_gen(const Settings& s, std::ostream& out) {
  auto dim = [&](int fallback) { return s.n > 0 ? s.n : fallback; };
  auto ord = [&](int fallback) { return s.m > 0 ? s.m : fallback; };
  std::optional<Decomposition> truth;
  std::optional<SymTensor> f;
  if (s.family == "sin") {
    f = sin_tensor(dim(6), ord(3));
  } else if (s.family == "rootsum") {
    f = rootsum_tensor(dim(5), ord(4));
  } else if (s.family == "linear") {
    f = linear_tensor(dim(5), ord(3));
  } else if (s.family == "small-cubic") {
    f = small_cubic_tensor();
  } else if (s.family == "waring8") {
    truth = waring8_decomposition();
    f = from_decomposition(*truth);
  } else if (s.family == "random") {
    if (!s.rank) throw InputError("gen --family random needs --rank");
    auto inst = random_rank_r(dim(10), ord(3), *s.rank, s.seed, s.tau);
    truth = inst.truth;
    f = perturb(inst.tensor, s.eps, s.seed ^ 0xa5a5a5a5ULL);
  } else {
    throw InputError("unknown family \"" + s.family + "\"");
  }
  if (s.eps > 0.0 && s.family != "random") f = perturb(*f, s.eps, s.seed ^ 0xa5a5a5a5ULL);
  json j = io::tensor_to_json(*f, s.full);
  j["family"] = s.family;
  if (truth) j["decomposition"] = io::decomposition_to_json(*truth);
  emit(out, j);
  return ok;
}

std::vector<bench::DecompCase> parse_cases(const std::string& text) {
  std::vector<bench::DecompCase> cases;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    if (item.empty()) continue;
    bench::DecompCase c;
    char c1 = 0, c2 = 0;
    std::stringstream one(item);
    if (!(one >> c.n >> c1 >> c.m >> c2 >> c.r) || c1 != ',' || c2 != ',' || c.n < 2 || c.m < 1 || c.r < 1)
      throw InputError("bad case \"" + item + "\"; expected n,m,r");
    cases.push_back(c);
  }
  if (cases.empty()) throw InputError("no decomposition cases given");
  return cases;
}

int cmd_bench(const Settings& s, std::ostream& out) {
  bench::BenchConfig cfg;
  cfg.approx = approx_options(s);
  cfg.threads = s.threads;
  const bool table = s.format == "table";
  if (s.kind == "table") {
    if (!s.rank) throw InputError("bench --kind table needs --rank");
    const auto st = bench::run_table(s.n > 0 ? s.n : 10, s.m > 0 ? s.m : 3, *s.rank, s.eps, s.trials, s.seed, cfg);
    table ? void(out << bench::to_table(st, s.timing)) : emit(out, bench::to_json(st, s.timing));
  } else if (s.kind == "nls") {
    if (!s.rank) throw InputError("bench --kind nls needs --rank");
    if (!(s.eps > 0.0)) throw InputError("bench --kind nls needs --eps > 0");
    const auto st = bench::run_nls_comparison(s.n > 0 ? s.n : 10, s.m > 0 ? s.m : 3, *s.rank, s.eps, s.trials,
                                              s.nls_restarts, s.seed, cfg, s.tau);
    table ? void(out << bench::to_table(st, s.timing)) : emit(out, bench::to_json(st, s.timing));
  } else if (s.kind == "decompose") {
    const auto st = bench::run_decomposition_table(parse_cases(s.cases), s.trials, s.seed, cfg);
    table ? void(out << bench::to_table(st, s.timing)) : emit(out, bench::to_json(st, s.timing));
  } else {
    throw InputError("unknown bench kind \"" + s.kind + "\"");
  }
  return ok;
}

void add_input(CLI::App* sub, Settings& s) {
  sub->add_option("input", s.input, "Tensor JSON file, or - for stdin")->capture_default_str();
}

void add_format(CLI::App* sub, Settings& s) {
  sub->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  sub->add_flag("--timing", s.timing, "Include wall-clock times in the output");
}

void add_solver(CLI::App* sub, Settings& s) {
  sub->add_option("--rank", s.rank, "Target rank (default: catalecticant estimate)")->check(CLI::PositiveNumber);
  sub->add_option("--rank-tol", s.rank_tol, "Relative singular value cutoff for the rank estimate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--seed", s.seed, "Random seed")->capture_default_str();
  sub->add_option("--restarts", s.restarts, "Extra random starts for the commutator fit")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sub->add_option("--max-iter", s.max_iter, "Levenberg-Marquardt iteration limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--max-fev", s.max_fev, "Levenberg-Marquardt residual evaluation limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_flag("--coordinate-shuffle", s.coordinate_shuffle, "Apply a random unitary change of coordinates first");
  sub->add_flag("--skip-refine", s.skip_refine, "Stop after the generating-polynomial stage");
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Low-rank approximation and Waring decomposition of symmetric tensors", "symlra"};
  app.require_subcommand(1);

  auto* rankest = app.add_subcommand("rankest", "Catalecticant spectrum and numerical rank");
  add_input(rankest, s);
  add_format(rankest, s);
  rankest->add_option("--rank-tol", s.rank_tol, "Relative singular value cutoff")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* approx = app.add_subcommand("approx", "Low-rank approximation");
  add_input(approx, s);
  add_format(approx, s);
  add_solver(approx, s);

  auto* dec = app.add_subcommand("decompose", "Waring decomposition");
  add_input(dec, s);
  add_format(dec, s);
  add_solver(dec, s);
  dec->add_option("--residual-tol", s.residual_tol, "Success threshold, relative to 1 + |F|")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  dec->add_flag("--distinct", s.distinct, "Run every restart and report all distinct decompositions");

  auto* gen = app.add_subcommand("gen", "Generate a tensor instance");
  gen->add_option("--family", s.family, "sin, rootsum, linear, small-cubic, waring8 or random")->required();
  gen->add_option("--n", s.n, "Dimension")->check(CLI::Range(2, 1000));
  gen->add_option("--m", s.m, "Order")->check(CLI::Range(1, 100));
  gen->add_option("--rank", s.rank, "Rank of a random instance")->check(CLI::PositiveNumber);
  gen->add_option("--seed", s.seed, "Random seed")->capture_default_str();
  gen->add_option("--tau", s.tau, "Scaling factor: term i carries weight tau^i")->check(CLI::PositiveNumber);
  gen->add_option("--eps", s.eps, "Norm of an added random perturbation")->check(CLI::NonNegativeNumber);
  gen->add_flag("--full", s.full, "Write the full n^m index format");

  auto* bch = app.add_subcommand("bench", "Monte-Carlo experiments");
  add_format(bch, s);
  add_solver(bch, s);
  bch->add_option("--kind", s.kind, "table, nls or decompose")
      ->check(CLI::IsMember({"table", "nls", "decompose"}))
      ->capture_default_str();
  bch->add_option("--n", s.n, "Dimension")->check(CLI::Range(2, 1000));
  bch->add_option("--m", s.m, "Order")->check(CLI::Range(1, 100));
  bch->add_option("--eps", s.eps, "Perturbation norm")->check(CLI::NonNegativeNumber);
  bch->add_option("--tau", s.tau, "Scaling factor for the nls comparison")->check(CLI::PositiveNumber);
  bch->add_option("--trials", s.trials, "Trials per configuration")->check(CLI::PositiveNumber)->capture_default_str();
  bch->add_option("--threads", s.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  bch->add_option("--nls-restarts", s.nls_restarts, "Random starts for the nls arm")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bch->add_option("--cases", s.cases, "Decomposition cases n,m,r separated by ;")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return ok;
    }
    err << "error: " << e.what() << "\n";
    return input_error;
  }

  try {
    if (*rankest) return cmd_rankest(s, in, out);
    if (*approx) return cmd_approx(s, in, out);
    if (*dec) return cmd_decompose(s, in, out);
    if (*gen) return cmd_gen(s, out);
    if (*bch) return cmd_bench(s, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"symlra"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), in, out, err);
}

}  // namespace symlra::cli
