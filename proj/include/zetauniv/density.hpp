#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zetauniv/expression.hpp"
#include "zetauniv/fit.hpp"
#include "zetauniv/tau_search.hpp"
#include "zetauniv/zeta.hpp"

namespace zetauniv {

// Parameters of the universality argument at a fixed height T.
//
// D' is the concentric disc of radius R = (sigma0 + r - 1/2)/2 and
// sigma1prime = sigma0 - R its leftmost abscissa. y is the smallest prime
// cutoff for which the subharmonic bound y^{1/4 - sigma1'/2}/(sqrt(pi)(R-r))
// is at most eps (never below floor_y). delta and y_star depend on |M| and
// are filled in by choose_delta.
struct ProofGeometry {
  Disc D;
  Disc Dprime;
  double sigma1prime = 0.0;
  double eps = 0.0;
  double y = 0.0;
  double A = 0.0;
  double B = 0.0;
  std::int64_t T = 0;
  double Y = 0.0;  // (log T)^A
  double H = 0.0;  // (log T)^B
  // D' may reach Re(s) >= 1 when 3 sigma0 + r >= 5/2; recorded, not fatal.
  bool dprime_in_strip = true;
  double c5 = 0.0;
  double delta = 0.0;
  double y_star = 0.0;
};

// Throws ConfigError unless D lies in the strip and B > A > 2/(2(sigma0-r)-1)
// (the message names the violated bound).
ProofGeometry derive_geometry(const Disc& D, double eps, double floor_y,
                              double A, double B, std::int64_t T);

// y^{1/4 - sigma1'/2} / (sqrt(pi) (R - r)).
double subharmonic_epsilon(const ProofGeometry& geom, double y);

// Empirical c5: the mean over n_tau equally spaced shifts in the window of
// the area integral over D' of |sum_{p <= Y, p not in M} log(1 - p^{-s-i tau})|^2,
// divided by y^{1 - 2 sigma1'}. The area integral uses a polar midpoint grid.
double estimate_c5(const ProofGeometry& geom, const AngleAssignment& assignment,
                   const SearchWindow& window, std::size_t n_tau = 128,
                   std::size_t n_radial = 8, std::size_t n_angular = 32);

inline constexpr double kMaxDelta = 0.5;

// Largest delta <= kMaxDelta with c5 delta^{|M|} y^{1/2 - sigma1'} < 1/2
// (strictly, by a 1% margin), then
// y_star = max(y delta^{|M|/(1 - 2 sigma1')}, max M) nudged upward.
void choose_delta(ProofGeometry& geom, const AngleAssignment& assignment,
                  double c5);

// Sup over the boundary of D (the functions are holomorphic, so this is the
// sup over D) of |sum_{p in M} log(1 - p^{-s-i tau}) - sum_{p <= Y} ...|.
class TailMeter {
public:
  TailMeter(const Disc& D, const AngleAssignment& assignment, double Y,
            std::int64_t base, std::size_t n_samples = 64);
  double at(double offset) const;

private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// The subset of C(delta, M, T) where the tail sup is <= eps. Each C
// interval is classified at its ends and midpoint; where those disagree the
// transition is bisected.
HitSet build_E_T(const ProofGeometry& geom, const AngleAssignment& assignment,
                 const SearchWindow& window);

struct DistanceMode {
  enum class Source { TrueZeta, EulerSurrogate };
  Source source = Source::TrueZeta;
  double Y = 0.0;        // surrogate cutoff
  bool log_mode = false;  // compare log zeta with log f (modulo 2 pi i k)

  static DistanceMode true_zeta(bool log_mode = false) {
    return {Source::TrueZeta, 0.0, log_mode};
  }
  static DistanceMode surrogate(double Y, bool log_mode = false) {
    return {Source::EulerSurrogate, Y, log_mode};
  }
  std::string name() const;
};

// Boundary-sampled sup over D of |zeta(s + i tau) - f(s)|, or of the log
// difference in log mode, with the sampling-gap correction of sup_error.
// In surrogate mode zeta is replaced by the Euler product over p <= Y.
SupError sup_dist(TallShift tau, const Expression& f, const Disc& D,
                  const DistanceMode& mode, std::size_t n_samples = 64,
                  const EvalConfig& cfg = {});

struct StageErrors {
  double stage1 = 0.0;  // |log zeta - log Euler product over p <= Y|
  double stage2 = 0.0;  // |log f - twisted product over M|
  double stage3 = 0.0;  // |twisted product - shifted product over M|
  double stage4 = 0.0;  // |shifted product over M - product over p <= Y|
  double total() const { return stage1 + stage2 + stage3 + stage4; }
};

struct DensityRow {
  Interval interval;
  double witness = 0.0;  // offset at which the row's errors were computed
  double sup_error = 0.0;
  StageErrors stages;
};

struct DensityReport {
  SearchWindow window;
  double epsilon = 0.0;
  DistanceMode mode;
  HitSet hits;
  double density = 0.0;
  std::vector<DensityRow> rows;
};

struct DensityOptions {
  // When present, C(delta, M, T) intervals are scanned first and the stage
  // diagnostics include the fit.
  std::optional<AngleAssignment> assignment;
  double delta = 0.2;
  // Cutoff for stages 1 and 4; 0 means (log T)^3 in true-zeta mode and the
  // surrogate cutoff otherwise.
  double Y = 0.0;
  // Also scan the whole window on a grid (slow in true-zeta mode).
  bool fallback_scan = true;
  std::size_t boundary_samples = 64;
  EvalConfig eval;
};

// Measure of {tau in window : sup_dist < eps}, located from seeds (C
// intervals, every zeta_shift height of f inside the window, and the grid
// fallback) and refined by bisection. The step is clamped to
// delta pi / (2 log max M) when an assignment is given.
DensityReport estimate_density(const Expression& f, const Disc& D, double eps,
                               const SearchWindow& window, double step,
                               const DistanceMode& mode,
                               const DensityOptions& options = {});

// Header "tau_offset_start,tau_offset_end,sup_error,stage1,stage2,stage3,stage4",
// one row per hit interval, then
// "summary,<H>,<measure>,<density>,<eps>,<n_intervals>,<mode>".
void write_density_csv(std::ostream& out, const DensityReport& report);

}  // namespace zetauniv
