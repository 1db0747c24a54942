#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gibbslen/errors.hpp"
#include "gibbslen/extremum.hpp"
#include "gibbslen/format.hpp"
#include "gibbslen/gibbs.hpp"
#include "gibbslen/inverse.hpp"
#include "gibbslen/detkernel.hpp"
#include "gibbslen/spectrum.hpp"

namespace {

using namespace gibbslen;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open spectrum file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Data goes to --out (default stdout); diagnostics go to stderr.
class Output {
public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) {
        throw Error("cannot open output file: " + path);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

struct TempFlags {
  double lambda = 0.0;
  double temp = 0.0;
  double kconst = 1.0;
  bool base2 = false;
  CLI::Option* lambda_opt = nullptr;
  CLI::Option* temp_opt = nullptr;

  void add_to(CLI::App* cmd) {
    lambda_opt = cmd->add_option("--lambda", lambda, "Weight exponent lambda");
    temp_opt = cmd->add_option("--temp", temp,
                               "Temperature T; lambda = -1/(kconst*T), or "
                               "-ln(2)/T with --base2");
    lambda_opt->excludes(temp_opt);
    cmd->add_option("--kconst", kconst, "Boltzmann-like constant k (default 1)");
    cmd->add_flag("--base2", base2, "Base-2 weights: lambda = -ln(2)/T");
  }

  TemperatureParam resolve() const {
    const bool has_lambda = lambda_opt->count() > 0;
    const bool has_temp = temp_opt->count() > 0;
    if (has_lambda == has_temp) {
      throw InvalidArgument("exactly one of --lambda / --temp is required");
    }
    return has_lambda ? TemperatureParam::from_lambda(lambda, kconst, base2)
                      : TemperatureParam::from_temperature(temp, kconst, base2);
  }
};

constexpr double kLn2 = 0.69314718055994530941723212145818;

void print_stats(std::ostream& os, const TemperatureParam& tp,
                 const EnsembleStats& st) {
  os << "lambda " << fmt17(tp.lambda()) << '\n'
     << "temperature " << fmt17(tp.temperature()) << '\n'
     << "logZ " << fmt17(st.log_z) << '\n'
     << "L " << fmt17(st.mean_length) << '\n'
     << "S_nats " << fmt17(st.entropy) << '\n'
     << "S_bits " << fmt17(st.entropy / kLn2) << '\n'
     << "F " << fmt17(st.compromise) << '\n'
     << "var_length " << fmt17(st.var_length) << '\n';
}

int run_stats(const std::string& path, const TempFlags& tf, bool tail_check,
              double tail_growth, double tail_eps, const std::string& out) {
  const LengthSpectrum spectrum = load_spectrum(read_file(path));
  const TemperatureParam tp = tf.resolve();

  std::int64_t cutoff = 0;
  bool certified = false;
  if (tail_check) {
    cutoff = tail_cutoff({tail_growth, tail_eps}, tp.lambda());
    certified = spectrum.max_length() >= static_cast<double>(cutoff);
  }

  const EnsembleStats st = ensemble_stats(GibbsState(spectrum, tp.lambda()));
  Output output(out);
  print_stats(output.stream(), tp, st);
  if (tail_check) {
    output.stream() << "tail_growth " << fmt17(tail_growth) << '\n'
                    << "tail_epsilon " << fmt17(tail_eps) << '\n'
                    << "tail_cutoff " << cutoff << '\n'
                    << "tail_certified " << (certified ? 1 : 0) << '\n';
    if (!certified) {
      std::cerr << "tail check failed: spectrum reaches length "
                << fmt17(spectrum.max_length()) << " but certifying Z to "
                << fmt17(tail_eps) << " needs length " << cutoff << "\n";
      return 1;
    }
  }
  return 0;
}

int run_sweep(const std::string& path, double lambda_min, double lambda_max,
              int steps, double kconst, bool base2, const std::string& out) {
  if (!(lambda_min < lambda_max)) {
    throw InvalidArgument("need --lambda-min < --lambda-max");
  }
  if (steps < 2) {
    throw InvalidArgument("need --steps >= 2");
  }
  const LengthSpectrum spectrum = load_spectrum(read_file(path));
  Output output(out);
  std::ostream& os = output.stream();
  os << "lambda,temperature,logZ,L,S_nats,S_bits,F,var_length\n";
  for (int i = 0; i < steps; ++i) {
    const double lambda =
        (i == steps - 1)
            ? lambda_max
            : lambda_min + (lambda_max - lambda_min) * i / (steps - 1);
    const TemperatureParam tp =
        TemperatureParam::from_lambda(lambda, kconst, base2);
    const EnsembleStats st = ensemble_stats(GibbsState(spectrum, lambda));
    os << fmt17(lambda) << ',' << fmt17(tp.temperature()) << ','
       << fmt17(st.log_z) << ',' << fmt17(st.mean_length) << ','
       << fmt17(st.entropy) << ',' << fmt17(st.entropy / kLn2) << ','
       << fmt17(st.compromise) << ',' << fmt17(st.var_length) << '\n';
  }
  return 0;
}

int run_verify(const std::string& path, const TempFlags& tf,
               std::uint64_t seed, int samples, double fd_step,
               bool has_subset, std::size_t subset, const std::string& out) {
  const LengthSpectrum spectrum = load_spectrum(read_file(path));
  const TemperatureParam tp = tf.resolve();

  // Validate the subset request before the heavy work so a bad n is a
  // usage error, not a half-printed report.
  if (has_subset && (subset < 1 || subset > spectrum.size())) {
    throw SubsetOutOfRange("--subset must lie in 1.." +
                           std::to_string(spectrum.size()));
  }

  VerifyOptions opts;
  opts.fd_step = fd_step;
  opts.samples = samples;
  opts.seed = seed;
  const MaximumReport rep = verify_maximum(spectrum, tp.lambda(), opts);

  Output output(out);
  std::ostream& os = output.stream();
  auto verdict = [](bool ok) { return ok ? "pass" : "fail"; };
  os << "entries " << spectrum.size() << '\n'
     << "lambda " << fmt17(tp.lambda()) << '\n'
     << "logZ " << fmt17(rep.log_z) << '\n'
     << "stationary_residual " << fmt17(rep.stationary_residual) << '\n'
     << "stationary_bound " << fmt17(rep.stationary_bound) << '\n'
     << "stationary " << verdict(rep.stationary_ok) << '\n'
     << "gradient_fd_dev " << fmt17(rep.gradient_fd_dev) << '\n'
     << "gradient_fd_tol " << fmt17(rep.gradient_fd_tol) << '\n'
     << "gradient " << verdict(rep.gradient_ok) << '\n';
  for (std::size_t i = 0; i < rep.hessian_signs.size(); ++i) {
    const std::size_t n = i + 1;
    const int expected = (n % 2 == 0) ? 1 : -1;
    os << "hessian_n " << n << " det " << fmt17(rep.hessian_dets[i])
       << " sign " << rep.hessian_signs[i] << " expected " << expected << ' '
       << verdict(rep.hessian_signs[i] == expected) << '\n';
  }
  os << "hessian " << verdict(rep.hessian_ok) << '\n'
     << "simplex_samples " << samples << '\n'
     << "simplex_excess " << fmt17(rep.simplex_excess) << '\n'
     << "simplex_tol " << fmt17(rep.simplex_tol) << '\n'
     << "gibbs_gap " << fmt17(rep.gibbs_gap) << '\n'
     << "gibbs_gap_tol " << fmt17(rep.gibbs_gap_tol) << '\n'
     << "maximality " << verdict(rep.maximality_ok) << '\n';

  if (has_subset) {
    const HessianReport h = hessian_at_gibbs(spectrum, tp.lambda(), subset);
    const bool degenerate = subset == spectrum.size();
    os << "subset_n " << subset << '\n'
       << "subset_det " << fmt17(h.det) << '\n'
       << "subset_closed_form " << fmt17(h.closed_form_det) << '\n'
       << "subset_sign " << h.sign << '\n'
       << "subset_degenerate " << (degenerate ? 1 : 0) << '\n';
  }

  os << "verdict " << (rep.all_ok() ? "PASS" : "FAIL") << '\n';
  return rep.all_ok() ? 0 : 1;
}

int run_solve(const std::string& path, double target, double tol, int max_iter,
              const std::string& out) {
  const LengthSpectrum spectrum = load_spectrum(read_file(path));
  SolveConfig cfg;
  cfg.tol = tol;
  cfg.max_iter = max_iter;
  const double lambda = solve_lambda(spectrum, target, cfg);
  Output output(out);
  output.stream() << fmt17(lambda) << '\n';
  return 0;
}

int run_det(const std::string& r_csv, double a, double b,
            const std::string& out) {
  StructuredMatrix mat;
  mat.a = a;
  mat.b = b;
  std::stringstream ss(r_csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const char* s = token.c_str();
    char* end = nullptr;
    const double v = std::strtod(s, &end);
    while (*end == ' ' || *end == '\t') ++end;
    if (end == s || *end != '\0') {
      throw InvalidArgument("bad --r entry: '" + token + "'");
    }
    mat.r.push_back(v);
  }
  if (mat.r.empty()) {
    throw InvalidArgument("--r needs at least one diagonal entry");
  }
  const double det = structured_det(mat);
  Output output(out);
  output.stream() << fmt17(det) << '\n';
  return 0;
}

int run_gen_binary(int max_len, const std::string& out) {
  const LengthSpectrum spectrum = gen_binary_programs(max_len);
  Output output(out);
  output.stream() << to_text(spectrum);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Gibbs ensembles over program-length spectra: partition function, "
      "mean length, entropy, and certificates that the Gibbs weights "
      "maximize the compromise function F = lambda*L + S"};
  app.require_subcommand(1);
  int exit_code = 0;

  // stats
  auto* stats_cmd =
      app.add_subcommand("stats", "Ensemble statistics at one lambda");
  std::string stats_path, stats_out;
  TempFlags stats_tf;
  double tail_growth = 0.0, tail_eps = 1e-6;
  stats_cmd->add_option("--spectrum", stats_path, "Spectrum file")->required();
  stats_tf.add_to(stats_cmd);
  auto* tail_opt = stats_cmd->add_option(
      "--tail-check", tail_growth,
      "Certify truncation of a g^l-growth spectrum at this growth base");
  stats_cmd->add_option("--tail-eps", tail_eps,
                        "Relative tail tolerance (default 1e-6)");
  stats_cmd->add_option("--out", stats_out, "Output file (default stdout)");
  stats_cmd->callback([&] {
    exit_code = run_stats(stats_path, stats_tf, tail_opt->count() > 0,
                          tail_growth, tail_eps, stats_out);
  });

  // sweep
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Tabulate statistics over a lambda range");
  std::string sweep_path, sweep_out;
  double sweep_lo = 0.0, sweep_hi = 0.0, sweep_kconst = 1.0;
  bool sweep_base2 = false;
  int sweep_steps = 0;
  sweep_cmd->add_option("--spectrum", sweep_path, "Spectrum file")->required();
  sweep_cmd->add_option("--lambda-min", sweep_lo, "Range start")->required();
  sweep_cmd->add_option("--lambda-max", sweep_hi, "Range end")->required();
  sweep_cmd->add_option("--steps", sweep_steps, "Grid points (>= 2)")
      ->required();
  sweep_cmd->add_option("--kconst", sweep_kconst,
                        "Constant k for the temperature column");
  sweep_cmd->add_flag("--base2", sweep_base2,
                      "Base-2 temperature column: T = -ln(2)/lambda");
  sweep_cmd->add_option("--out", sweep_out, "Output file (default stdout)");
  sweep_cmd->callback([&] {
    exit_code = run_sweep(sweep_path, sweep_lo, sweep_hi, sweep_steps,
                          sweep_kconst, sweep_base2, sweep_out);
  });

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "Certify that the Gibbs weights maximize F = lambda*L + S");
  std::string verify_path, verify_out;
  TempFlags verify_tf;
  std::uint64_t verify_seed = 0;
  int verify_samples = 1000;
  double verify_fd_step = 1e-6;
  std::size_t verify_subset = 0;
  verify_cmd->add_option("--spectrum", verify_path, "Spectrum file")
      ->required();
  verify_tf.add_to(verify_cmd);
  verify_cmd->add_option("--seed", verify_seed, "Sampling seed (default 0)");
  verify_cmd->add_option("--samples", verify_samples,
                         "Random simplex points (default 1000)");
  verify_cmd->add_option("--fd-step", verify_fd_step,
                         "Finite-difference step scale (default 1e-6)");
  auto* subset_opt = verify_cmd->add_option(
      "--subset", verify_subset,
      "Also report the Hessian determinant for this leading block size");
  verify_cmd->add_option("--out", verify_out, "Output file (default stdout)");
  verify_cmd->callback([&] {
    exit_code = run_verify(verify_path, verify_tf, verify_seed, verify_samples,
                           verify_fd_step, subset_opt->count() > 0,
                           verify_subset, verify_out);
  });

  // solve
  auto* solve_cmd = app.add_subcommand(
      "solve", "Find lambda whose ensemble has a given mean length");
  std::string solve_path, solve_out;
  double solve_target = 0.0, solve_tol = 0.0;
  int solve_max_iter = 200;
  solve_cmd->add_option("--spectrum", solve_path, "Spectrum file")->required();
  solve_cmd->add_option("--target-L", solve_target, "Target mean length")
      ->required();
  solve_cmd->add_option("--tol", solve_tol,
                        "Absolute tolerance on L (default 1e-10 * max length)");
  solve_cmd->add_option("--max-iter", solve_max_iter,
                        "Evaluation budget (default 200)");
  solve_cmd->add_option("--out", solve_out, "Output file (default stdout)");
  solve_cmd->callback([&] {
    exit_code =
        run_solve(solve_path, solve_target, solve_tol, solve_max_iter,
                  solve_out);
  });

  // det
  auto* det_cmd = app.add_subcommand(
      "det", "Closed-form determinant of an r-diagonal/a-upper/b-lower matrix");
  std::string det_r, det_out;
  double det_a = 0.0, det_b = 0.0;
  det_cmd->add_option("--r", det_r, "Comma-separated diagonal entries")
      ->required();
  det_cmd->add_option("--a", det_a, "Above-diagonal constant")->required();
  det_cmd->add_option("--b", det_b, "Below-diagonal constant")->required();
  det_cmd->add_option("--out", det_out, "Output file (default stdout)");
  det_cmd->callback(
      [&] { exit_code = run_det(det_r, det_a, det_b, det_out); });

  // gen-binary
  auto* gen_cmd = app.add_subcommand(
      "gen-binary", "Write the spectrum of all binary programs up to a length");
  int gen_max_len = 0;
  std::string gen_out;
  gen_cmd->add_option("--max-len", gen_max_len, "Largest program length")
      ->required();
  gen_cmd->add_option("--out", gen_out, "Output file (default stdout)");
  gen_cmd->callback([&] { exit_code = run_gen_binary(gen_max_len, gen_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const gibbslen::TargetOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const gibbslen::DivergentSum& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const gibbslen::NoConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
