#include "zetauniv/bounds.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "zetauniv/csv.hpp"
#include "zetauniv/errors.hpp"
#include "zetauniv/euler_product.hpp"
#include "zetauniv/primes.hpp"

namespace zetauniv {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool parse_double(const std::string& text, double& out) {
  auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

std::vector<std::uint32_t> primes_in(double lo, double hi) {
  std::vector<std::uint32_t> out;
  if (hi < 2.0) return out;
  auto table = sieve_primes(static_cast<std::uint64_t>(std::floor(hi)));
  for (std::uint32_t p : table.primes())
    if (static_cast<double>(p) > lo) out.push_back(p);
  return out;
}

}  // namespace

ZeroTable read_zero_table(std::istream& in, const std::string& source) {
  ZeroTable table;
  table.source = source;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string gamma_text, beta_text, extra;
    fields >> gamma_text >> beta_text >> extra;
    if (!extra.empty())
      throw ParseError("zero table: expected 'gamma' or 'gamma beta'", line_no,
                       "line");
    double gamma = 0.0, beta = 0.5;
    if (!parse_double(gamma_text, gamma) ||
        (!beta_text.empty() && !parse_double(beta_text, beta)))
      throw ParseError("zero table: malformed number", line_no, "line");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
      throw ParseError("zero table: ordinates must be positive", line_no, "line");
    if (!(beta > 0.0 && beta < 1.0))
      throw ParseError("zero table: beta must lie in (0, 1)", line_no, "line");
    if (!table.ordinates.empty() && gamma <= table.ordinates.back())
      throw ParseError("zero table: ordinates must be strictly ascending",
                       line_no, "line");
    table.ordinates.push_back(gamma);
    table.betas.push_back(beta);
  }
  return table;
}

ZeroTable load_zero_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open zero table '" + path + "'");
  return read_zero_table(in, path);
}

double riemann_von_mangoldt(double T) {
  return T / kTwoPi * std::log(T / (kTwoPi * std::exp(1.0))) + 0.875;
}

ZeroCount zero_count(const ZeroTable& table, double sigma, double T) {
  if (T > table.coverage())
    throw CoverageError("zero_count: T = " + format_number(T) +
                        " exceeds table coverage " +
                        format_number(table.coverage()));
  ZeroCount out;
  for (std::size_t k = 0; k < table.size() && table.ordinates[k] < T; ++k)
    if (table.betas[k] > sigma) ++out.count;
  out.model = T > 1.0 ? std::pow(T, 1.5 - sigma) * std::pow(std::log(T), 5.0) : 0.0;
  return out;
}

double block_half_height(double t, double A, double B) {
  const double L = std::log(t);
  return 2.0 + std::pow(L, A) + 2.0 * std::pow(L, B);
}

std::optional<double> find_zero_free_block(const ZeroTable& table, double sigma1,
                                           double A, double B, double T) {
  if (!(T > 1.0)) throw ConfigError("find_zero_free_block: T must exceed 1");
  if (2.0 * T > table.coverage())
    throw CoverageError("find_zero_free_block: table covers up to " +
                        format_number(table.coverage()) + ", need 2T = " +
                        format_number(2.0 * T));
  const double beta_min = 0.25 + 0.5 * sigma1;
  double t = T;
  // Move t past the highest offending zero until the rectangle is clear.
  // The half-height grows with t, so each move may expose the same zero
  // again; the gap shrinks geometrically.
  for (int iter = 0; iter < 10000 && t <= 2.0 * T; ++iter) {
    const double w = block_half_height(t, A, B);
    auto lo = std::lower_bound(table.ordinates.begin(), table.ordinates.end(), t - w);
    auto hi = std::upper_bound(table.ordinates.begin(), table.ordinates.end(), t + w);
    double worst = -1.0;
    for (auto it = lo; it != hi; ++it) {
      auto k = static_cast<std::size_t>(it - table.ordinates.begin());
      if (table.betas[k] > beta_min) worst = *it;
    }
    if (worst < 0.0) return t;
    t = std::max(worst + w, t) * (1.0 + 1e-12);
  }
  return std::nullopt;
}

BoundCheckReport BoundCheckReport::make(std::string check, double lhs,
                                        double rhs_model, double constant) {
  BoundCheckReport r;
  r.check = std::move(check);
  r.lhs = lhs;
  r.rhs_model = rhs_model;
  r.ratio = rhs_model > 0.0 ? lhs / rhs_model : kNaN;
  r.pass = lhs <= constant * rhs_model;
  return r;
}

std::vector<TruncationSup> truncation_sup(double sigma, std::span<const double> Ys,
                                          const SearchWindow& window,
                                          std::size_t n_samples,
                                          const EvalConfig& cfg) {
  if (n_samples == 0) throw ConfigError("truncation_sup: no samples");
  double y_max = 2.0;
  for (double Y : Ys) {
    if (!(Y >= 2.0)) throw ConfigError("truncation_sup: Y must be >= 2");
    y_max = std::max(y_max, Y);
  }
  const auto all = primes_in(0.0, y_max);
  const ComplexPoint point{sigma, 0.0};
  std::vector<ShiftedEulerSum> sums;
  for (double Y : Ys) {
    std::vector<std::uint32_t> primes;
    for (std::uint32_t p : all)
      if (static_cast<double>(p) <= Y) primes.push_back(p);
    sums.emplace_back(std::span<const ComplexPoint>(&point, 1), primes, window.T);
  }

  std::vector<TruncationSup> out(Ys.size());
  Complex value;
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double u = (static_cast<double>(k) + 0.5) * window.H /
                     static_cast<double>(n_samples);
    Complex lz;
    bool ok = true;
    try {
      lz = log_zeta_shifted(point, window.at(u), cfg);
    } catch (const BranchError&) {
      ok = false;
    }
    for (std::size_t j = 0; j < Ys.size(); ++j) {
      if (!ok) {
        ++out[j].skipped;
        continue;
      }
      sums[j].evaluate(u, std::span<Complex>(&value, 1));
      out[j].sup = std::max(out[j].sup, std::abs(lz - value));
      ++out[j].samples;
    }
  }
  return out;
}

std::vector<BoundCheckReport> lemma22_error_profile(
    double sigma, double A, std::span<const double> heights,
    const ProfileOptions& options) {
  if (!(sigma > 0.5)) throw ConfigError("lemma22: sigma must exceed 1/2");
  std::vector<BoundCheckReport> out;
  for (double T : heights) {
    if (!(T > std::exp(1.0)) || T > kMaxHeight)
      throw ConfigError("lemma22: height " + format_number(T) +
                        " outside (e, 1e7]");
    const double L = std::log(T);
    const double Y = std::max(2.0, std::pow(L, A));
    const auto base = static_cast<std::int64_t>(std::floor(T));
    SearchWindow window{base, options.window_length, std::nullopt};
    const double Ys[] = {Y};
    auto sup = truncation_sup(sigma, Ys, window, options.n_samples, options.eval);
    const double model = std::pow(L, 1.0 + A * (0.5 - sigma)) * std::pow(std::log(L), 2.0);
    out.push_back(BoundCheckReport::make(
        "lemma22 T=" + format_number(T) + " Y=" + format_number(Y) +
            " skipped=" + std::to_string(sup[0].skipped),
        sup[0].sup, model, options.constant));
  }
  return out;
}

double mean_square_integral(double sigma, std::span<const std::uint32_t> primes,
                            const SearchWindow& window, std::size_t n_quadrature) {
  if (n_quadrature == 0) throw ConfigError("mean_square: n_quadrature must be > 0");
  if (primes.empty()) return 0.0;
  const PhaseCache cache(window.T, primes);
  std::vector<double> weight(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i)
    weight[i] = std::pow(static_cast<double>(primes[i]), -sigma);

  auto midpoint = [&](std::size_t n) {
    const double h = window.H / static_cast<double>(n);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double u = (static_cast<double>(k) + 0.5) * h;
      double re = 0.0, im = 0.0;
      for (std::size_t i = 0; i < primes.size(); ++i) {
        const double a = -kTwoPi * cache.phase(i, u);
        re += weight[i] * std::cos(a);
        im += weight[i] * std::sin(a);
      }
      total += re * re + im * im;
    }
    return total * h;
  };

  // Work cap: nodes times primes.
  constexpr double kMaxWork = 268435456.0;
  std::size_t n = n_quadrature;
  double coarse = midpoint(n);
  double previous = kNaN;
  for (;;) {
    const double fine = midpoint(2 * n);
    const double current = (4.0 * fine - coarse) / 3.0;
    if (!std::isnan(previous)) {
      const double change =
          std::abs(current - previous) / std::max(std::abs(current), 1e-300);
      if (change <= 1e-6) return current;
      if (4.0 * static_cast<double>(n) * static_cast<double>(primes.size()) > kMaxWork) {
        if (change > 0.01)
          throw RefinementError("mean_square: quadrature did not settle (last "
                                "two refinements differ by more than 1%)");
        return current;
      }
    }
    previous = current;
    coarse = fine;
    n *= 2;
  }
}

BoundCheckReport mean_square_check(double sigma, double y_star, double Y,
                                   const SearchWindow& window,
                                   std::size_t n_quadrature, double constant) {
  if (!(y_star <= Y)) throw ConfigError("mean_square: need y_star <= Y");
  const auto primes = primes_in(y_star, Y);
  double weight = 0.0;
  for (std::uint32_t p : primes) weight += std::pow(static_cast<double>(p), -2.0 * sigma);
  const double lhs = mean_square_integral(sigma, primes, window, n_quadrature);
  return BoundCheckReport::make("meansquare sigma=" + format_number(sigma) +
                                    " ystar=" + format_number(y_star) +
                                    " Y=" + format_number(Y),
                                lhs, weight * (window.H + Y), constant);
}

Complex DirichletPolynomial::operator()(ComplexPoint s) const {
  Complex sum = 0.0;
  for (std::size_t n = 1; n <= coefficients.size(); ++n)
    sum += coefficients[n - 1] * std::exp(-s * std::log(static_cast<double>(n)));
  return sum;
}

BoundCheckReport subharmonic_check(const std::function<Complex(ComplexPoint)>& h,
                                   ComplexPoint center, double ell,
                                   std::size_t n_grid) {
  if (!(ell > 0.0)) throw ConfigError("subharmonic: ell must be > 0");
  if (n_grid == 0) throw ConfigError("subharmonic: n_grid must be > 0");
  const std::size_t n_angular = 2 * n_grid;
  const double dr = ell / static_cast<double>(n_grid);
  const double dphi = kTwoPi / static_cast<double>(n_angular);
  double area = 0.0;
  for (std::size_t i = 0; i < n_grid; ++i) {
    const double rho = (static_cast<double>(i) + 0.5) * dr;
    double ring = 0.0;
    for (std::size_t j = 0; j < n_angular; ++j) {
      const double phi = (static_cast<double>(j) + 0.5) * dphi;
      ring += std::norm(h(center + std::polar(rho, phi)));
    }
    area += ring * rho * dr * dphi;
  }
  const double lhs = std::norm(h(center));
  const double rhs = area / (kPi * ell * ell);
  BoundCheckReport r = BoundCheckReport::make("subharmonic", lhs, rhs, 1.0);
  r.pass = lhs <= rhs * (1.0 + kSubharmonicSlack);
  return r;
}

BoundCheckReport subharmonic_check(const DirichletPolynomial& poly,
                                   ComplexPoint center, double ell,
                                   std::size_t n_grid) {
  return subharmonic_check(
      std::function<Complex(ComplexPoint)>([&](ComplexPoint s) { return poly(s); }),
      center, ell, n_grid);
}

void write_bound_csv(std::ostream& out, std::span<const BoundCheckReport> reports) {
  out << "check,lhs,rhs_model,ratio,pass\n";
  for (const BoundCheckReport& r : reports)
    out << r.check << ',' << format_number(r.lhs) << ','
        << format_number(r.rhs_model) << ',' << format_number(r.ratio) << ','
        << (r.pass ? "true" : "false") << '\n';
}

}  // namespace zetauniv
