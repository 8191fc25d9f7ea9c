#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "zetauniv/expression.hpp"
#include "zetauniv/types.hpp"

namespace zetauniv {

// Closed disc |s - center| <= radius.
struct Disc {
  ComplexPoint center{0.75, 0.0};
  double radius = 0.1;

  double min_re() const { return center.real() - radius; }
  double max_re() const { return center.real() + radius; }

  // True when 1/2 < Re(s) < 1 on the whole disc.
  bool inside_strip() const { return min_re() > 0.5 && max_re() < 1.0; }

  // Throws ConfigError unless radius > 0 and the disc lies in the strip.
  void validate() const;

  // n equally spaced points center + radius e^{2 pi i k / n}.
  std::vector<ComplexPoint> boundary(std::size_t n) const;
};

// Finite prime set M with angles theta_p in [0, 1). Every prime up to
// floor_y is in M.
struct AngleAssignment {
  std::vector<std::uint32_t> primes;
  std::vector<double> theta;
  double floor_y = 0.0;

  std::size_t size() const { return primes.size(); }
  bool empty() const { return primes.empty(); }
  std::uint32_t max_prime() const { return primes.empty() ? 0 : primes.back(); }
};

// File format: one "p theta_p" pair per line, ascending p. Blank lines and
// lines starting with '#' are ignored. floor_y is recovered as the largest
// prime below which the list has no gap.
AngleAssignment read_assignment(std::istream& in);
AngleAssignment load_assignment(const std::string& path);
void write_assignment(std::ostream& out, const AngleAssignment& assignment);

// e(x) = exp(2 pi i x).
Complex unit_turn(double x);

// -log(1 - e(-theta) p^{-s}), principal branch.
Complex twisted_factor(std::uint32_t p, double theta, ComplexPoint s);

// sum over M of -log(1 - e(-theta_p) p^{-s}).
Complex twisted_product(const AngleAssignment& assignment, ComplexPoint s);

struct SupError {
  double sup = 0.0;
  // Half the sample spacing times a finite-difference estimate of the
  // boundary derivative of the difference.
  double correction = 0.0;
};

inline constexpr std::size_t kMinBoundarySamples = 16;

// Sampled sup over the boundary of |g - twisted_product|. g_boundary holds g
// at disc.boundary(n_samples).
SupError sup_error(std::span<const Complex> g_boundary,
                   const AngleAssignment& assignment, const Disc& disc,
                   std::size_t n_samples);

// Continuous branch of log f on the boundary samples: principal value at
// the center, continued radially. Throws ZeroTargetError if |f| < 1e-8
// anywhere on a polar grid covering the disc.
std::vector<Complex> log_target_on_boundary(const Expression& f,
                                            const Disc& disc,
                                            std::size_t n_samples,
                                            const EvalConfig& cfg = {});

inline constexpr double kZeroTargetThreshold = 1e-8;

struct FitBudget {
  int max_primes = 50;
  int max_sweeps = 200;
  int restarts = 8;
  std::uint64_t seed = 1;
  std::size_t boundary_samples = 64;
};

struct FitResult {
  AngleAssignment assignment;
  double sup_error = 0.0;
  double correction = 0.0;
  bool converged = false;
};

// Fits angles (and grows M beyond {p <= floor_y} if needed) so that the
// twisted product approximates g = log f on the disc to within eps.
FitResult fit_angles(const Expression& f, const Disc& disc, double eps,
                     double floor_y, const FitBudget& budget = {});

// Same, from precomputed g on disc.boundary(g_boundary.size()).
FitResult fit_log_target(std::span<const Complex> g_boundary, const Disc& disc,
                         double eps, double floor_y,
                         const FitBudget& budget = {});

}  // namespace zetauniv
