// Command-line front end: fit, search, density, verify.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zetauniv/bounds.hpp"
#include "zetauniv/csv.hpp"
#include "zetauniv/density.hpp"
#include "zetauniv/errors.hpp"
#include "zetauniv/expression.hpp"
#include "zetauniv/fit.hpp"
#include "zetauniv/tau_search.hpp"

#ifndef ZETAUNIV_DATA_DIR
#define ZETAUNIV_DATA_DIR "data"
#endif

namespace zu = zetauniv;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kEmpty = 2, kNumeric = 3 };

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Reads "key = value" lines and turns them into flags for the subcommand,
// placed before the real command-line flags so those win.
std::vector<std::string> config_arguments(const std::string& path,
                                          const CLI::App& sub) {
  std::ifstream in(path);
  if (!in) throw zu::ConfigError("cannot open config file '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string text = trim(line.substr(0, line.find('#')));
    if (text.empty()) continue;
    auto eq = text.find('=');
    if (eq == std::string::npos)
      throw zu::ParseError("config: expected 'key = value'", line_no, "line");
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (key == "config")
      throw zu::ParseError("config: nested config files are not allowed", line_no,
                           "line");
    const CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr)
      throw zu::ParseError("config: unknown key '" + key + "'", line_no, "line");
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1" || value == "yes")
        out.push_back("--" + key);
      else if (!(value == "false" || value == "0" || value == "no"))
        throw zu::ParseError("config: '" + key + "' takes true or false", line_no,
                             "line");
    } else {
      out.push_back("--" + key);
      out.push_back(value);
    }
  }
  return out;
}

std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw zu::ConfigError("--params: expected key=value, got '" + item + "'");
    out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return out;
}

// Typed access to --params with defaults; unknown keys are rejected.
class Params {
public:
  Params(std::map<std::string, std::string> values, std::string check)
      : values_(std::move(values)), check_(std::move(check)) {}

  double number(const std::string& key, double fallback) {
    used_.push_back(key);
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      std::size_t pos = 0;
      double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw zu::ConfigError("--params: " + key + " is not a number");
    }
  }

  std::vector<double> list(const std::string& key, std::vector<double> fallback) {
    used_.push_back(key);
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ';')) {
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw zu::ConfigError("--params: " + key + " must be ';'-separated numbers");
      }
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : values_)
      if (std::find(used_.begin(), used_.end(), key) == used_.end())
        throw zu::ConfigError("--params: unknown key '" + key + "' for check " +
                              check_);
  }

private:
  std::map<std::string, std::string> values_;
  std::string check_;
  std::vector<std::string> used_;
};

std::size_t count_param(double v, const char* name) {
  if (!(v >= 1.0) || v != std::floor(v))
    throw zu::ConfigError(std::string("--params: ") + name +
                          " must be a positive integer");
  return static_cast<std::size_t>(v);
}

struct FitArgs {
  std::string target;
  double s0 = 0.75, s0_im = 0.0, r = 0.1, eps = 0.0, floor_y = 0.0;
  std::uint64_t seed = 1;
  int max_primes = 50, restarts = 8;
  std::size_t samples = 64;
  std::string out;
};

int run_fit(const FitArgs& a) {
  auto f = zu::Expression::parse(a.target);
  zu::Disc disc{{a.s0, a.s0_im}, a.r};
  disc.validate();
  if (!(a.eps > 0.0)) throw zu::ConfigError("--eps must be > 0");
  zu::FitBudget budget;
  budget.seed = a.seed;
  budget.max_primes = a.max_primes;
  budget.restarts = a.restarts;
  budget.boundary_samples = a.samples;
  auto result = zu::fit_angles(f, disc, a.eps, a.floor_y, budget);

  std::ostringstream text;
  text << "# target " << f.to_string() << '\n'
       << "# sup_error " << zu::format_number(result.sup_error) << " correction "
       << zu::format_number(result.correction) << " converged "
       << (result.converged ? "true" : "false") << '\n';
  zu::write_assignment(text, result.assignment);
  if (a.out.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream file(a.out);
    if (!file) throw zu::ConfigError("cannot write '" + a.out + "'");
    file << text.str();
  }
  std::cerr << "fit: |M| = " << result.assignment.size() << ", sup error "
            << zu::format_number(result.sup_error)
            << (result.converged ? "" : " (not converged)") << '\n';
  return result.converged ? kOk : kEmpty;
}

struct SearchArgs {
  std::string assign;
  std::int64_t T = 0;
  std::optional<double> H, B;
  double delta = 0.0;
  bool lattice = false;
};

zu::SearchWindow make_window(std::int64_t T, std::optional<double> H,
                             std::optional<double> B) {
  if (H.has_value() == B.has_value())
    throw zu::ConfigError("give exactly one of --H and --B");
  return H ? zu::SearchWindow::with_length(T, *H)
           : zu::SearchWindow::from_exponent(T, *B);
}

int run_search(const SearchArgs& a) {
  auto assignment = zu::load_assignment(a.assign);
  auto window = make_window(a.T, a.H, a.B);
  auto hits = zu::scan_c_delta(window, assignment, a.delta);
  std::cout << "tau_offset_start,tau_offset_end\n";
  for (const auto& iv : hits.intervals)
    std::cout << zu::format_number(iv.start) << ',' << zu::format_number(iv.end)
              << '\n';
  std::cout << "measure," << zu::format_number(hits.measure) << '\n';
  if (a.lattice) {
    auto first = zu::lattice_find_first(assignment, a.delta, window);
    std::cout << "first_hit,"
              << (first ? zu::format_number(first->offset) : std::string("none"))
              << '\n';
  }
  return hits.intervals.empty() ? kEmpty : kOk;
}

struct DensityArgs {
  std::string assign, target, mode = "zeta";
  double eps = 0.0, s0 = 0.75, s0_im = 0.0, r = 0.1, step = 0.05, delta = 0.2;
  std::int64_t T = 0;
  double H = 0.0;
  std::optional<double> Y;
  bool log_mode = false, no_fallback = false;
  std::size_t samples = 64;
};

int run_density(const DensityArgs& a) {
  auto f = zu::Expression::parse(a.target);
  zu::Disc disc{{a.s0, a.s0_im}, a.r};
  disc.validate();
  auto window = zu::SearchWindow::with_length(a.T, a.H);
  if (a.mode == "zeta" && static_cast<double>(a.T) + a.H > zu::kMaxHeight)
    throw zu::ConfigError("--mode zeta supports heights up to 1e7; use surrogate");
  const double default_Y = std::pow(std::log(static_cast<double>(a.T)), 3.0);
  zu::DistanceMode mode = a.mode == "zeta"
                              ? zu::DistanceMode::true_zeta(a.log_mode)
                              : zu::DistanceMode::surrogate(a.Y.value_or(default_Y),
                                                            a.log_mode);
  zu::DensityOptions options;
  if (!a.assign.empty()) options.assignment = zu::load_assignment(a.assign);
  options.delta = a.delta;
  options.Y = a.Y.value_or(0.0);
  options.fallback_scan = !a.no_fallback;
  options.boundary_samples = a.samples;
  auto report = zu::estimate_density(f, disc, a.eps, window, a.step, mode, options);
  zu::write_density_csv(std::cout, report);
  return kOk;
}

struct VerifyArgs {
  std::string check, params, zeros;
};

int run_verify(const VerifyArgs& a) {
  Params p(parse_params(a.params), a.check);
  std::vector<zu::BoundCheckReport> reports;
  auto zeros_path = a.zeros.empty()
                        ? std::string(ZETAUNIV_DATA_DIR) + "/zeros_2300.txt"
                        : a.zeros;
  if (a.check == "lemma22") {
    const double sigma = p.number("sigma", 0.75);
    const double A = p.number("A", 3.0);
    auto heights = p.list("heights", {1e4, 1e5});
    zu::ProfileOptions opt;
    opt.window_length = p.number("window", 10.0);
    opt.n_samples = count_param(p.number("samples", 200), "samples");
    opt.constant = p.number("C", zu::kDefaultCheckConstant);
    p.finish();
    reports = zu::lemma22_error_profile(sigma, A, heights, opt);
  } else if (a.check == "meansquare") {
    const double sigma = p.number("sigma", 0.75);
    const double y_star = p.number("ystar", 100.0);
    const double Y = p.number("Y", 1000.0);
    const double T = p.number("T", 1e6);
    const double H = p.number("H", 1e4);
    const auto n = count_param(p.number("n", 1024), "n");
    const double C = p.number("C", zu::kDefaultCheckConstant);
    p.finish();
    auto window = zu::SearchWindow::with_length(static_cast<std::int64_t>(T), H);
    reports.push_back(zu::mean_square_check(sigma, y_star, Y, window, n, C));
  } else if (a.check == "subharmonic") {
    const auto count = count_param(p.number("count", 100), "count");
    const auto terms = count_param(p.number("terms", 20), "terms");
    const double ell = p.number("ell", 0.1);
    const auto grid = count_param(p.number("grid", 64), "grid");
    const auto seed = static_cast<std::uint64_t>(p.number("seed", 1));
    p.finish();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> re(0.55, 0.95), im(0.0, 1000.0);
    zu::DirichletPolynomial constant{{zu::Complex(1.5, -0.5)}};
    auto r = zu::subharmonic_check(constant, {0.75, 0.0}, ell, grid);
    r.check = "subharmonic constant";
    reports.push_back(r);
    for (std::size_t k = 0; k < count; ++k) {
      zu::DirichletPolynomial poly;
      for (std::size_t n = 0; n < terms; ++n)
        poly.coefficients.emplace_back(unit(rng), unit(rng));
      r = zu::subharmonic_check(poly, {re(rng), im(rng)}, ell, grid);
      r.check = "subharmonic random " + std::to_string(k);
      reports.push_back(r);
    }
  } else if (a.check == "zerodensity") {
    auto table = zu::load_zero_table(zeros_path);
    const double sigma = p.number("sigma", 0.6);
    const double T = p.number("T", table.coverage());
    const double C = p.number("C", zu::kDefaultCheckConstant);
    p.finish();
    auto count = zu::zero_count(table, sigma, T);
    reports.push_back(zu::BoundCheckReport::make(
        "zerodensity sigma=" + zu::format_number(sigma) + " T=" + zu::format_number(T),
        static_cast<double>(count.count), count.model, C));
  } else if (a.check == "blocks") {
    auto table = zu::load_zero_table(zeros_path);
    const double sigma1 = p.number("sigma1", 0.6);
    const double A = p.number("A", 2.0);
    const double B = p.number("B", 3.0);
    const double T = p.number("T", 100.0);
    p.finish();
    auto tj = zu::find_zero_free_block(table, sigma1, A, B, T);
    zu::BoundCheckReport r;
    r.check = "blocks sigma1=" + zu::format_number(sigma1) + " T=" + zu::format_number(T);
    r.lhs = tj ? *tj : std::nan("");
    r.rhs_model = T;
    r.ratio = tj ? *tj / T : std::nan("");
    r.pass = tj.has_value();
    reports.push_back(r);
  } else {
    throw zu::ConfigError("unknown check '" + a.check + "'");
  }
  zu::write_bound_csv(std::cout, reports);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on zeta universality in short intervals"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "fit angles theta_p to a target");
  fit_cmd->add_option("--config", config_path, "key = value file");
  fit_cmd->add_option("--target", fit.target, "target expression f(s)")->required();
  fit_cmd->add_option("--s0", fit.s0, "disc center (real part)");
  fit_cmd->add_option("--s0-im", fit.s0_im, "disc center (imaginary part)");
  fit_cmd->add_option("--r", fit.r, "disc radius");
  fit_cmd->add_option("--eps", fit.eps, "target sup error")->required();
  fit_cmd->add_option("--floor-y", fit.floor_y, "M contains every prime <= floor-y");
  fit_cmd->add_option("--seed", fit.seed, "seed for random restarts");
  fit_cmd->add_option("--max-primes", fit.max_primes, "largest |M|")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--restarts", fit.restarts, "random restarts per size")
      ->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--samples", fit.samples, "boundary samples")
      ->check(CLI::Range(16, 100000));
  fit_cmd->add_option("--out", fit.out, "assignment file (default stdout)");

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "list C(delta, M, T) intervals");
  search_cmd->add_option("--config", config_path, "key = value file");
  search_cmd->add_option("--assign", search.assign, "assignment file")->required();
  search_cmd->add_option("--T", search.T, "window start (integer)")->required();
  search_cmd->add_option("--H", search.H, "window length");
  search_cmd->add_option("--B", search.B, "window length (log T)^B");
  search_cmd->add_option("--delta", search.delta, "tolerance delta in (0, 1)")
      ->required();
  search_cmd->add_flag("--lattice", search.lattice, "add a lattice first_hit row");

  DensityArgs density;
  auto* density_cmd = app.add_subcommand("density", "estimate hit density");
  density_cmd->add_option("--config", config_path, "key = value file");
  density_cmd->add_option("--assign", density.assign, "assignment file");
  density_cmd->add_option("--target", density.target, "target expression")
      ->required();
  density_cmd->add_option("--eps", density.eps, "tolerance")->required();
  density_cmd->add_option("--T", density.T, "window start (integer)")->required();
  density_cmd->add_option("--H", density.H, "window length")->required();
  density_cmd->add_option("--mode", density.mode, "zeta or surrogate")
      ->check(CLI::IsMember({"zeta", "surrogate"}));
  density_cmd->add_option("--Y", density.Y, "Euler product cutoff");
  density_cmd->add_flag("--log", density.log_mode, "compare log zeta with log f");
  density_cmd->add_option("--s0", density.s0, "disc center (real part)");
  density_cmd->add_option("--s0-im", density.s0_im, "disc center (imaginary part)");
  density_cmd->add_option("--r", density.r, "disc radius");
  density_cmd->add_option("--step", density.step, "scan step")
      ->check(CLI::PositiveNumber);
  density_cmd->add_option("--delta", density.delta, "C(delta, M, T) tolerance");
  density_cmd->add_flag("--no-fallback", density.no_fallback,
                        "skip the full-window grid scan");
  density_cmd->add_option("--samples", density.samples, "boundary samples")
      ->check(CLI::Range(16, 100000));

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "check an auxiliary inequality");
  verify_cmd->add_option("--config", config_path, "key = value file");
  verify_cmd->add_option("--check", verify.check,
                         "lemma22, meansquare, subharmonic, zerodensity or blocks")
      ->required()
      ->check(CLI::IsMember(
          {"lemma22", "meansquare", "subharmonic", "zerodensity", "blocks"}));
  verify_cmd->add_option("--params", verify.params, "key=value,key=value");
  verify_cmd->add_option("--zeros", verify.zeros, "zero table file");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    // Splice config-file flags in right after the subcommand name.
    auto cfg = std::find_if(args.begin(), args.end(), [](const std::string& s) {
      return s == "--config" || s.rfind("--config=", 0) == 0;
    });
    if (cfg != args.end() && !args.empty()) {
      std::string path = *cfg == "--config"
                             ? (cfg + 1 != args.end() ? *(cfg + 1) : "")
                             : cfg->substr(9);
      const CLI::App* sub = nullptr;
      try {
        sub = app.get_subcommand(args.front());
      } catch (const CLI::OptionNotFound&) {
        sub = nullptr;
      }
      if (sub != nullptr && !path.empty()) {
        auto extra = config_arguments(path, *sub);
        args.insert(args.begin() + 1, extra.begin(), extra.end());
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const zu::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*fit_cmd) return run_fit(fit);
    if (*search_cmd) return run_search(search);
    if (*density_cmd) return run_density(density);
    if (*verify_cmd) return run_verify(verify);
  } catch (const zu::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const zu::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const zu::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const zu::CoverageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const zu::RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const zu::ZeroTargetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
