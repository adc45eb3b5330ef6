// Command-line front end: fit a data file, draw synthetic samples, run benchmarks.
//
// Exit codes:
//   0  success
//   1  usage error
//   2  input file could not be parsed
//   3  data rejected (fewer than 2 values, non-positive or all-equal values)
//   4  solver did not converge
//   5  any other error

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "weibull_bd.hpp"

namespace {

namespace wb = weibull_bd;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kBadSample = 3,
  kNotConverged = 4,
  kOther = 5,
};

int exit_code_for(wb::ErrorCode code) {
  switch (code) {
    case wb::ErrorCode::ParseError:
    case wb::ErrorCode::EmptyFile: return kParse;
    case wb::ErrorCode::EmptyInput:
    case wb::ErrorCode::NonPositiveValue:
    case wb::ErrorCode::DegenerateSample: return kBadSample;
    case wb::ErrorCode::InvalidConfig:
    case wb::ErrorCode::InvalidSpec: return kUsage;
    default: return kOther;
  }
}

std::string fmt15(double v) {
  std::ostringstream os;
  os << std::setprecision(15) << v;
  return os.str();
}

void print_fit(const wb::FitResult& r, wb::Method method, const std::string& format) {
  const auto& t = r.trace;
  const std::string k = r.params ? fmt15(r.params->k()) : fmt15(t.k_hat);
  const std::string lambda = r.params ? fmt15(r.params->lambda()) : std::string("nan");
  if (format == "json") {
    nlohmann::ordered_json j;
    j["method"] = std::string(wb::to_string(method));
    j["k_hat"] = r.params ? nlohmann::ordered_json(r.params->k()) : nlohmann::ordered_json(nullptr);
    j["lambda_hat"] = r.params ? nlohmann::ordered_json(r.params->lambda()) : nlohmann::ordered_json(nullptr);
    j["status"] = std::string(wb::to_string(t.status));
    j["f_evals"] = t.f_evals;
    j["deriv_evals"] = t.deriv_evals;
    j["iterations"] = t.iterations;
    std::cout << j.dump() << '\n';
  } else if (format == "csv") {
    std::cout << "method,k_hat,lambda_hat,status,f_evals,deriv_evals,iterations\n"
              << wb::to_string(method) << ',' << k << ',' << lambda << ',' << wb::to_string(t.status) << ','
              << t.f_evals << ',' << t.deriv_evals << ',' << t.iterations << '\n';
  } else {
    std::cout << "method:      " << wb::to_string(method) << '\n'
              << "k_hat:       " << k << '\n'
              << "lambda_hat:  " << lambda << '\n'
              << "status:      " << wb::to_string(t.status) << '\n'
              << "f_evals:     " << t.f_evals << '\n'
              << "deriv_evals: " << t.deriv_evals << '\n'
              << "iterations:  " << t.iterations << '\n';
  }
}

void print_report(const wb::StudyReport& report, const std::string& format) {
  if (format == "json") {
    std::cout << wb::to_json_lines(report);
  } else if (format == "csv") {
    std::cout << wb::to_csv(report);
  } else {
    std::cout << wb::render_table(report);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum-likelihood fitting of the two-parameter Weibull distribution"};
  app.require_subcommand(1);

  const std::vector<std::string> formats = {"text", "json", "csv"};
  const std::vector<std::string> methods = {"bounded", "combined", "secant", "bisection", "bisecant", "newton"};

  // fit
  std::string fit_path;
  std::string fit_method = "combined";
  wb::SolverConfig fit_cfg;
  std::string fit_format = "text";
  auto* fit_cmd = app.add_subcommand("fit", "Estimate k and lambda from a data file");
  fit_cmd->add_option("file", fit_path, "Whitespace- or comma-separated values; '#' starts a comment line")
      ->required()
      ->check(CLI::ExistingFile);
  fit_cmd->add_option("--method", fit_method, "Root finder")->check(CLI::IsMember(methods));
  fit_cmd->add_option("--eps", fit_cfg.delta2, "Halt precision in k")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--delta1", fit_cfg.delta1, "Bracket width at which combined/bisecant switch to secant")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--max-iter", fit_cfg.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  fit_cmd->add_option("--format", fit_format, "Output format")->check(CLI::IsMember(formats));

  // sample
  double sample_k = 0.0;
  double sample_lambda = 0.0;
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  auto* sample_cmd = app.add_subcommand("sample", "Draw Weibull variates, one per line");
  sample_cmd->add_option("--k", sample_k, "Shape")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--lambda", sample_lambda, "Scale")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--n", sample_n, "Number of values")->required()->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", sample_seed, "Generator seed");

  // bench
  bool bench_reference = false;
  wb::TrialSpec spec;
  std::string bench_format = "text";
  auto* bench_cmd = app.add_subcommand("bench", "Compare F-evaluation counts across root finders");
  auto* ref_flag = bench_cmd->add_flag("--reference", bench_reference, "Run the embedded 32-value reference case");
  bench_cmd->add_option("--trials", spec.trials, "Monte Carlo trials")->check(CLI::PositiveNumber)->excludes(ref_flag);
  bench_cmd->add_option("--seed", spec.seed, "Study seed")->excludes(ref_flag);
  bench_cmd->add_option("--n-max", spec.n_range.hi, "Largest sample size")->check(CLI::Range(2, 1000000))->excludes(ref_flag);
  bench_cmd->add_option("--k-max", spec.k_range.hi, "Largest true shape")->check(CLI::PositiveNumber)->excludes(ref_flag);
  bench_cmd->add_option("--lambda-max", spec.lambda_range.hi, "Largest true scale")
      ->check(CLI::PositiveNumber)
      ->excludes(ref_flag);
  bench_cmd->add_option("--format", bench_format, "Output format")->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*fit_cmd) {
      fit_cfg.method = *wb::parse_method(fit_method);
      const auto values = wb::parse_input(fit_path);
      const wb::Sample sample = wb::build_sample(values);
      const wb::FitResult result = wb::fit(sample, fit_cfg);
      print_fit(result, fit_cfg.method, fit_format);
      return result.trace.status == wb::Status::Converged ? kOk : kNotConverged;
    }
    if (*sample_cmd) {
      const auto values = wb::sample_weibull(wb::WeibullParams(sample_k, sample_lambda), sample_n, sample_seed);
      for (double v : values) std::cout << wb::format_number(v) << '\n';
      return kOk;
    }
    if (*bench_cmd) {
      const wb::StudyReport report = bench_reference
                                         ? wb::run_reference_case(wb::reference_precisions())
                                         : wb::run_random_study(spec, wb::kAllMethods);
      print_report(report, bench_format);
      return kOk;
    }
  } catch (const wb::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kUsage;
}
