#include "zetauniv/fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "zetauniv/errors.hpp"
#include "zetauniv/primes.hpp"

namespace zetauniv {

void Disc::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw ConfigError("disc radius must be > 0");
  if (!std::isfinite(center.real()) || !std::isfinite(center.imag()))
    throw ConfigError("disc center must be finite");
  if (!inside_strip())
    throw ConfigError("disc must lie in 1/2 < Re(s) < 1 (Re spans [" +
                      std::to_string(min_re()) + ", " +
                      std::to_string(max_re()) + "])");
}

std::vector<ComplexPoint> Disc::boundary(std::size_t n) const {
  std::vector<ComplexPoint> out(n);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = center + radius * unit_turn(static_cast<double>(k) /
                                         static_cast<double>(n));
  return out;
}

Complex unit_turn(double x) {
  double a = kTwoPi * x;
  return {std::cos(a), std::sin(a)};
}

Complex twisted_factor(std::uint32_t p, double theta, ComplexPoint s) {
  Complex u = unit_turn(-theta) * std::exp(-s * std::log(static_cast<double>(p)));
  return -std::log(1.0 - u);
}

Complex twisted_product(const AngleAssignment& assignment, ComplexPoint s) {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    sum += twisted_factor(assignment.primes[i], assignment.theta[i], s);
  return sum;
}

SupError sup_error(std::span<const Complex> g_boundary,
                   const AngleAssignment& assignment, const Disc& disc,
                   std::size_t n_samples) {
  if (n_samples < kMinBoundarySamples)
    throw ConfigError("sup_error: need at least 16 boundary samples");
  if (g_boundary.size() != n_samples)
    throw ConfigError("sup_error: g has " + std::to_string(g_boundary.size()) +
                      " samples, expected " + std::to_string(n_samples));
  auto points = disc.boundary(n_samples);
  std::vector<Complex> diff(n_samples);
  SupError out;
  for (std::size_t k = 0; k < n_samples; ++k) {
    diff[k] = g_boundary[k] - twisted_product(assignment, points[k]);
    out.sup = std::max(out.sup, std::abs(diff[k]));
  }
  for (std::size_t k = 0; k < n_samples; ++k) {
    double step = std::abs(diff[(k + 1) % n_samples] - diff[k]);
    out.correction = std::max(out.correction, 0.5 * step);
  }
  return out;
}

namespace {

// Accumulates log(f(b)/f(a)) along the segment a -> b, splitting wherever
// the argument would move by a quarter turn or more.
Complex continue_log(const Expression& f, ComplexPoint a, Complex fa,
                     ComplexPoint b, Complex fb, const EvalConfig& cfg,
                     int depth) {
  Complex ratio = fb / fa;
  if (std::abs(std::arg(ratio)) < kPi / 4) return std::log(ratio);
  if (depth > 30)
    throw ZeroTargetError("target: log f cannot be continued (argument "
                          "jumps near a zero or singularity)");
  ComplexPoint m = 0.5 * (a + b);
  Complex fm = f.evaluate(m, cfg);
  if (std::abs(fm) < kZeroTargetThreshold)
    throw ZeroTargetError("target: |f| < 1e-8 on the disc");
  return continue_log(f, a, fa, m, fm, cfg, depth + 1) +
         continue_log(f, m, fm, b, fb, cfg, depth + 1);
}

}  // namespace

std::vector<Complex> log_target_on_boundary(const Expression& f,
                                            const Disc& disc,
                                            std::size_t n_samples,
                                            const EvalConfig& cfg) {
  constexpr int kRings = 4;
  constexpr int kRaySteps = 8;

  auto check = [&](ComplexPoint s) {
    Complex v = f.evaluate(s, cfg);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) ||
        std::abs(v) < kZeroTargetThreshold) {
      std::ostringstream msg;
      msg << "target: |f| < 1e-8 (log f undefined) near s = " << s.real()
          << (s.imag() < 0 ? " - " : " + ") << std::abs(s.imag()) << "i";
      throw ZeroTargetError(msg.str());
    }
    return v;
  };

  const Complex f0 = check(disc.center);
  const Complex log0 = std::log(f0);
  for (int ring = 1; ring < kRings; ++ring) {
    double rho = disc.radius * ring / kRings;
    for (std::size_t k = 0; k < n_samples; ++k)
      check(disc.center + rho * unit_turn(static_cast<double>(k) / n_samples));
  }

  auto boundary = disc.boundary(n_samples);
  std::vector<Complex> out(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    Complex value = log0;
    ComplexPoint a = disc.center;
    Complex fa = f0;
    for (int step = 1; step <= kRaySteps; ++step) {
      ComplexPoint b = step == kRaySteps
                           ? boundary[k]
                           : disc.center + (boundary[k] - disc.center) *
                                               (static_cast<double>(step) / kRaySteps);
      Complex fb = check(b);
      value += continue_log(f, a, fa, b, fb, cfg, 0);
      a = b;
      fa = fb;
    }
    out[k] = value;
  }
  return out;
}

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t next_prime(std::uint32_t p) {
  std::uint32_t q = p + 1;
  while (!is_prime(q)) ++q;
  return q;
}

double wrap_turn(double x) {
  x -= std::floor(x);
  return x >= 1.0 ? 0.0 : x;
}

// Angle optimizer over the boundary samples. terms_[i][j] caches
// -log(1 - e(-theta_i) p_i^{-s_j}) for the current angles.
class AngleFitter {
public:
  AngleFitter(std::span<const Complex> g, const Disc& disc)
      : g_(g.begin(), g.end()), points_(disc.boundary(g.size())) {}

  std::size_t size() const { return primes_.size(); }
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  const std::vector<double>& theta() const { return theta_; }

  void add_prime(std::uint32_t p, double theta) {
    std::vector<Complex> w(points_.size());
    const double lp = std::log(static_cast<double>(p));
    for (std::size_t j = 0; j < points_.size(); ++j)
      w[j] = std::exp(-points_[j] * lp);
    primes_.push_back(p);
    powers_.push_back(std::move(w));
    theta_.push_back(theta);
    terms_.push_back(terms_for(primes_.size() - 1, theta));
  }

  // theta = frac(-arg(c)/2pi) with c the least-squares coefficient of the
  // current residual on p^{-s}.
  double projected_angle(std::size_t i, std::span<const Complex> residual) const {
    Complex num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < points_.size(); ++j) {
      num += residual[j] * std::conj(powers_[i][j]);
      den += std::norm(powers_[i][j]);
    }
    if (std::abs(num) == 0.0) return 0.0;
    return wrap_turn(-std::arg(num / den) / kTwoPi);
  }

  std::vector<Complex> residual() const {
    std::vector<Complex> r = g_;
    for (const auto& t : terms_)
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= t[j];
    return r;
  }

  double sup() const {
    double m = 0.0;
    for (const Complex& v : residual()) m = std::max(m, std::abs(v));
    return m;
  }

  void set_theta(const std::vector<double>& theta) {
    for (std::size_t i = 0; i < theta.size(); ++i) {
      theta_[i] = wrap_turn(theta[i]);
      terms_[i] = terms_for(i, theta_[i]);
    }
  }

  void initialize_by_projection() {
    std::vector<Complex> r = g_;
    for (std::size_t i = 0; i < size(); ++i) {
      theta_[i] = projected_angle(i, r);
      terms_[i] = terms_for(i, theta_[i]);
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= terms_[i][j];
    }
  }

  // One cyclic pass: each angle in turn is set to the minimizer of the
  // sampled sup with the others held fixed.
  void coordinate_sweep() {
    std::vector<Complex> r = residual();
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = 0; j < r.size(); ++j) r[j] += terms_[i][j];
      auto objective = [&](double th) {
        double m = 0.0;
        Complex rot = unit_turn(-th);
        for (std::size_t j = 0; j < r.size(); ++j)
          m = std::max(m, std::abs(r[j] + std::log(1.0 - rot * powers_[i][j])));
        return m;
      };
      double best = theta_[i];
      double best_value = objective(best);
      constexpr int kGrid = 48;
      for (int k = 0; k < kGrid; ++k) {
        double th = static_cast<double>(k) / kGrid;
        double v = objective(th);
        if (v < best_value) {
          best_value = v;
          best = th;
        }
      }
      // Golden-section refinement around the best grid point.
      const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
      double lo = best - 1.0 / kGrid;
      double hi = best + 1.0 / kGrid;
      double x1 = hi - phi * (hi - lo);
      double x2 = lo + phi * (hi - lo);
      double f1 = objective(x1);
      double f2 = objective(x2);
      for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - phi * (hi - lo);
          f1 = objective(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + phi * (hi - lo);
          f2 = objective(x2);
        }
      }
      double cand = f1 < f2 ? x1 : x2;
      if (std::min(f1, f2) < best_value) best = cand;
      theta_[i] = wrap_turn(best);
      terms_[i] = terms_for(i, theta_[i]);
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= terms_[i][j];
    }
  }

  // Levenberg-Marquardt on the sum of squared boundary residuals. Smooth,
  // so it resolves the correlated directions that cyclic descent on the
  // sup objective crawls along.
  void least_squares_polish(int max_iterations = 200) {
    const std::size_t n = size();
    const std::size_t m = points_.size();
    if (n == 0) return;
    auto cost_of = [&](const std::vector<Complex>& r) {
      double c = 0.0;
      for (const Complex& v : r) c += std::norm(v);
      return c;
    };
    std::vector<Complex> r = residual();
    double cost = cost_of(r);
    double lambda = 1e-3;
    Eigen::MatrixXd jac(2 * m, n);
    Eigen::VectorXd res(2 * m);
    for (int iter = 0; iter < max_iterations && cost > 1e-30; ++iter) {
      for (std::size_t i = 0; i < n; ++i) {
        Complex rot = unit_turn(-theta_[i]);
        for (std::size_t j = 0; j < m; ++j) {
          Complex u = rot * powers_[i][j];
          Complex d = Complex(0.0, kTwoPi) * u / (1.0 - u);
          jac(2 * j, i) = d.real();
          jac(2 * j + 1, i) = d.imag();
        }
      }
      for (std::size_t j = 0; j < m; ++j) {
        res(2 * j) = r[j].real();
        res(2 * j + 1) = r[j].imag();
      }
      Eigen::MatrixXd normal = jac.transpose() * jac;
      Eigen::VectorXd grad = jac.transpose() * res;
      bool improved = false;
      for (int attempt = 0; attempt < 12; ++attempt) {
        Eigen::MatrixXd damped = normal;
        for (std::size_t i = 0; i < n; ++i)
          damped(i, i) += lambda * (normal(i, i) + 1e-12);
        Eigen::VectorXd step = damped.ldlt().solve(-grad);
        std::vector<double> trial = theta_;
        for (std::size_t i = 0; i < n; ++i) trial[i] += step(i);
        auto saved_theta = theta_;
        auto saved_terms = terms_;
        set_theta(trial);
        std::vector<Complex> r_new = residual();
        double c_new = cost_of(r_new);
        if (c_new < cost) {
          double gain = cost - c_new;
          r = std::move(r_new);
          cost = c_new;
          lambda = std::max(lambda / 3.0, 1e-12);
          improved = true;
          if (step.cwiseAbs().maxCoeff() < 1e-15 || gain < 1e-32) return;
          break;
        }
        theta_ = std::move(saved_theta);
        terms_ = std::move(saved_terms);
        lambda *= 4.0;
      }
      if (!improved) return;
    }
  }

private:
  std::vector<Complex> terms_for(std::size_t i, double theta) const {
    std::vector<Complex> t(points_.size());
    Complex rot = unit_turn(-theta);
    for (std::size_t j = 0; j < points_.size(); ++j)
      t[j] = -std::log(1.0 - rot * powers_[i][j]);
    return t;
  }

  std::vector<Complex> g_;
  std::vector<ComplexPoint> points_;
  std::vector<std::uint32_t> primes_;
  std::vector<std::vector<Complex>> powers_;
  std::vector<double> theta_;
  std::vector<std::vector<Complex>> terms_;
};

// Alternates sup-descent sweeps with least-squares polishing until the sup
// stops improving. Returns the number of sweeps used.
int descend(AngleFitter& fitter, double eps, int max_sweeps) {
  int sweeps = 0;
  double current = fitter.sup();
  while (sweeps < max_sweeps && current > eps * 1e-3) {
    auto before = fitter.theta();
    fitter.least_squares_polish();
    double polished = fitter.sup();
    if (polished > current) {
      fitter.set_theta(before);
      polished = current;
    }
    auto polished_theta = fitter.theta();
    fitter.coordinate_sweep();
    ++sweeps;
    double swept = fitter.sup();
    if (swept > polished) {
      fitter.set_theta(polished_theta);
      swept = polished;
    }
    if (current - swept <= 1e-12 * std::max(1.0, current)) {
      current = swept;
      break;
    }
    current = swept;
  }
  return sweeps;
}

}  // namespace

FitResult fit_log_target(std::span<const Complex> g_boundary, const Disc& disc,
                         double eps, double floor_y, const FitBudget& budget) {
  if (!(eps > 0.0)) throw ConfigError("fit: eps must be > 0");
  if (g_boundary.size() < kMinBoundarySamples)
    throw ConfigError("fit: need at least 16 boundary samples");
  if (budget.max_primes < 0 || budget.max_sweeps < 1 || budget.restarts < 0)
    throw ConfigError("fit: invalid budget");

  AngleFitter fitter(g_boundary, disc);
  std::uint32_t last = 1;
  for (std::uint32_t p = 2; p <= floor_y; p = next_prime(p)) {
    fitter.add_prime(p, 0.0);
    last = p;
  }
  if (fitter.size() > static_cast<std::size_t>(budget.max_primes))
    throw ConfigError("fit: floor_y requires more primes than the budget allows");
  fitter.initialize_by_projection();

  std::mt19937_64 rng(budget.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  int sweeps_left = budget.max_sweeps;

  for (;;) {
    sweeps_left -= descend(fitter, eps, std::max(sweeps_left, 1));
    double best = fitter.sup();
    std::vector<double> best_theta = fitter.theta();

    for (int r = 0; r < budget.restarts && best > eps && fitter.size() > 0; ++r) {
      std::vector<double> start(fitter.size());
      for (double& th : start) th = uniform(rng);
      fitter.set_theta(start);
      descend(fitter, eps, std::max(budget.max_sweeps / 4, 1));
      double v = fitter.sup();
      if (v < best) {
        best = v;
        best_theta = fitter.theta();
      }
    }
    fitter.set_theta(best_theta);

    if (best <= eps || fitter.size() >= static_cast<std::size_t>(budget.max_primes) ||
        sweeps_left <= 0)
      break;

    // The new prime starts at the angle that best absorbs the residual.
    auto r = fitter.residual();
    last = next_prime(last);
    fitter.add_prime(last, 0.0);
    std::vector<double> theta = fitter.theta();
    theta.back() = fitter.projected_angle(fitter.size() - 1, r);
    fitter.set_theta(theta);
  }

  FitResult result;
  result.assignment.primes = fitter.primes();
  result.assignment.theta = fitter.theta();
  result.assignment.floor_y = floor_y;
  SupError err = sup_error(g_boundary, result.assignment, disc, g_boundary.size());
  result.sup_error = err.sup;
  result.correction = err.correction;
  result.converged = err.sup <= eps;
  return result;
}

FitResult fit_angles(const Expression& f, const Disc& disc, double eps,
                     double floor_y, const FitBudget& budget) {
  disc.validate();
  auto g = log_target_on_boundary(f, disc, budget.boundary_samples);
  return fit_log_target(g, disc, eps, floor_y, budget);
}

AngleAssignment read_assignment(std::istream& in) {
  AngleAssignment a;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string p_text, theta_text, extra;
    fields >> p_text >> theta_text;
    if (theta_text.empty() || (fields >> extra))
      throw ParseError("assignment: expected 'p theta_p'", line_no, "line");
    std::uint32_t p = 0;
    double theta = 0.0;
    auto rp = std::from_chars(p_text.data(), p_text.data() + p_text.size(), p);
    auto rt = std::from_chars(theta_text.data(),
                              theta_text.data() + theta_text.size(), theta);
    if (rp.ec != std::errc() || rp.ptr != p_text.data() + p_text.size() ||
        rt.ec != std::errc() || rt.ptr != theta_text.data() + theta_text.size())
      throw ParseError("assignment: malformed number", line_no, "line");
    if (!is_prime(p))
      throw ParseError("assignment: " + p_text + " is not prime", line_no, "line");
    if (!(theta >= 0.0 && theta < 1.0))
      throw ParseError("assignment: theta must lie in [0, 1)", line_no, "line");
    if (!a.primes.empty() && p <= a.primes.back())
      throw ParseError("assignment: primes must be strictly ascending", line_no,
                       "line");
    a.primes.push_back(p);
    a.theta.push_back(theta);
  }
  // floor_y: end of the run of consecutive primes starting at 2.
  std::uint32_t expected = 2;
  for (std::uint32_t p : a.primes) {
    if (p != expected) break;
    a.floor_y = p;
    expected = next_prime(p);
  }
  return a;
}

AngleAssignment load_assignment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open assignment file '" + path + "'");
  return read_assignment(in);
}

void write_assignment(std::ostream& out, const AngleAssignment& assignment) {
  char buf[64];
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    auto res = std::to_chars(buf, buf + sizeof buf, assignment.theta[i]);
    out << assignment.primes[i] << ' ' << std::string_view(buf, res.ptr - buf)
        << '\n';
  }
}

}  // namespace zetauniv
