#pragma once

#include <cstddef>
#include <vector>

#include "zetauniv/types.hpp"

namespace zetauniv {

struct EvalConfig {
  double target_abs_error = 1e-10;
  // Upper bound on Bernoulli correction terms.
  int euler_maclaurin_terms = 30;
  // Main-sum length is cutoff_multiplier * (|t| + 10).
  double cutoff_multiplier = 0.5;
  // log_zeta refuses to continue through points with |zeta| below this.
  double near_zero_threshold = 1e-4;
};

inline constexpr double kMaxHeight = 1e7;

// Validates an EvalConfig; throws ConfigError.
void validate(const EvalConfig& cfg);

// zeta on a horizontal line Im(s) = base + offset, evaluated by
// Euler-Maclaurin summation. The phases n^{-it} are computed once with
// split-precision reduction and reused for every sigma, which is what the
// branch tracking in log_zeta needs.
class ZetaLine {
public:
  ZetaLine(TallShift height, const EvalConfig& cfg = {});

  // zeta(sigma + i t) for sigma > 0.
  Complex at(double sigma) const;

  double height() const { return t_; }
  std::size_t cutoff() const { return cutoff_; }

private:
  double t_;
  std::size_t cutoff_;
  EvalConfig cfg_;
  std::vector<double> log_n_;       // log n, n = 1..N
  std::vector<Complex> rotations_;  // n^{-it}, n = 1..N
};

// zeta(s). Throws PoleError at s = 1, DomainError for Re(s) <= 0,
// RangeError for |Im(s)| > 1e7.
Complex zeta(ComplexPoint s, const EvalConfig& cfg = {});

// zeta(s + i tau) with tau held in split precision.
Complex zeta_shifted(ComplexPoint s, TallShift tau, const EvalConfig& cfg = {});

// log zeta(s), continued along the horizontal segment from 2 + i Im(s) to s,
// starting from the principal value at Re = 2 (where it agrees with the
// Dirichlet series branch). Throws BranchError when |zeta| drops below
// cfg.near_zero_threshold on the path.
Complex log_zeta(ComplexPoint s, const EvalConfig& cfg = {});

Complex log_zeta_shifted(ComplexPoint s, TallShift tau,
                         const EvalConfig& cfg = {});

// Same continuation on a prebuilt line (height must match).
Complex log_zeta_on_line(const ZetaLine& line, double sigma,
                         const EvalConfig& cfg = {});

}  // namespace zetauniv
