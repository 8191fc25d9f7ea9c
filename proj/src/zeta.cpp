#include "zetauniv/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "zetauniv/errors.hpp"
#include "zetauniv/phase.hpp"

namespace zetauniv {

namespace {

// B_{2k} / (2k)!, k = 1..30.
constexpr std::array<double, 30> kBernoulliOverFactorial = {
    0.08333333333333333,     -0.001388888888888889,   3.306878306878307e-05,
    -8.267195767195768e-07,  2.08767569878681e-08,    -5.284190138687493e-10,
    1.3382536530684679e-11,  -3.3896802963225827e-13, 8.586062056277845e-15,
    -2.174868698558062e-16,  5.5090028283602295e-18,  -1.3954464685812522e-19,
    3.534707039629467e-21,   -8.953517427037546e-23,  2.267952452337683e-24,
    -5.744790668872202e-26,  1.455172475614865e-27,   -3.6859949406653103e-29,
    9.336734257095045e-31,   -2.36502241570063e-32,   5.990671762482134e-34,
    -1.5174548844682903e-35, 3.843758125454189e-37,   -9.736353072646691e-39,
    2.466247044200681e-40,   -6.247076741820743e-42,  1.5824030244644914e-43,
    -4.008273685948936e-45,  1.0153075855569557e-46,  -2.5718041582418717e-48};

void check_height(double t) {
  if (!std::isfinite(t) || std::abs(t) > kMaxHeight)
    throw RangeError("zeta: height " + std::to_string(t) +
                     " outside validated range |t| <= 1e7");
}

}  // namespace

void validate(const EvalConfig& cfg) {
  if (!(cfg.target_abs_error > 0.0))
    throw ConfigError("EvalConfig: target_abs_error must be > 0");
  if (cfg.euler_maclaurin_terms < 1 ||
      cfg.euler_maclaurin_terms > static_cast<int>(kBernoulliOverFactorial.size()))
    throw ConfigError("EvalConfig: euler_maclaurin_terms must be in [1, 30]");
  if (!(cfg.cutoff_multiplier > 0.0))
    throw ConfigError("EvalConfig: cutoff_multiplier must be > 0");
  if (!(cfg.near_zero_threshold >= 0.0))
    throw ConfigError("EvalConfig: near_zero_threshold must be >= 0");
}

ZetaLine::ZetaLine(TallShift height, const EvalConfig& cfg)
    : t_(height.approx()), cfg_(cfg) {
  validate(cfg);
  check_height(t_);
  cutoff_ = std::max<std::size_t>(
      10, static_cast<std::size_t>(
              std::ceil(cfg.cutoff_multiplier * (std::abs(t_) + 10.0))));

  log_n_.resize(cutoff_ + 1);
  rotations_.resize(cutoff_ + 1);
  const bool real_axis = height.base == 0 && height.offset == 0.0;
  std::shared_ptr<const std::vector<dd::DDouble>> logs;
  if (!real_axis) logs = log_table(cutoff_);
  for (std::size_t n = 1; n <= cutoff_; ++n) {
    if (real_axis) {
      log_n_[n] = std::log(static_cast<double>(n));
      rotations_[n] = 1.0;
      continue;
    }
    const dd::DDouble& l = (*logs)[n];
    log_n_[n] = l.to_double();
    double angle = reduced_angle(height, l);
    rotations_[n] = Complex(std::cos(angle), -std::sin(angle));
  }
}

Complex ZetaLine::at(double sigma) const {
  const Complex s(sigma, t_);
  if (!(sigma > 0.0))
    throw DomainError("zeta: Re(s) must be > 0 (got " + std::to_string(sigma) +
                      ")");
  if (sigma == 1.0 && t_ == 0.0) throw PoleError("zeta: pole at s = 1");

  const std::size_t n_cut = cutoff_;
  Complex sum = 0.0;
  for (std::size_t n = 1; n < n_cut; ++n)
    sum += std::exp(-sigma * log_n_[n]) * rotations_[n];

  const double big_n = static_cast<double>(n_cut);
  const Complex n_pow = std::exp(-sigma * log_n_[n_cut]) * rotations_[n_cut];
  sum += big_n * n_pow / (s - 1.0) + 0.5 * n_pow;

  // Bernoulli corrections: B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}.
  Complex rising = s;
  Complex scale = n_pow / big_n;
  const double inv_n2 = 1.0 / (big_n * big_n);
  const double tol = 0.01 * cfg_.target_abs_error;
  for (int k = 1; k <= cfg_.euler_maclaurin_terms; ++k) {
    Complex term = kBernoulliOverFactorial[k - 1] * rising * scale;
    sum += term;
    if (std::abs(term) < tol) break;
    rising *= (s + static_cast<double>(2 * k - 1)) *
              (s + static_cast<double>(2 * k));
    scale *= inv_n2;
  }
  return sum;
}

Complex zeta_shifted(ComplexPoint s, TallShift tau, const EvalConfig& cfg) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
    throw DomainError("zeta: non-finite argument");
  if (!(s.real() > 0.0)) throw DomainError("zeta: Re(s) must be > 0");
  TallShift height = tau.plus(s.imag());
  if (s.real() == 1.0 && height.base == 0 && height.offset == 0.0)
    throw PoleError("zeta: pole at s = 1");
  check_height(height.approx());
  return ZetaLine(height, cfg).at(s.real());
}

Complex zeta(ComplexPoint s, const EvalConfig& cfg) {
  return zeta_shifted(s, TallShift{}, cfg);
}

Complex log_zeta_on_line(const ZetaLine& line, double sigma,
                         const EvalConfig& cfg) {
  constexpr double kStart = 2.0;
  constexpr double kMaxStep = 0.125;
  constexpr double kMinStep = 1e-9;
  const double threshold = cfg.near_zero_threshold;

  auto guarded = [&](double x) {
    Complex z = line.at(x);
    if (std::abs(z) < threshold)
      throw BranchError("log_zeta: |zeta| < " + std::to_string(threshold) +
                        " at sigma = " + std::to_string(x) +
                        ", t = " + std::to_string(line.height()));
    return z;
  };

  // |zeta(2+it) - 1| <= zeta(2) - 1 < 1, so the principal log is the
  // Dirichlet-series branch there.
  Complex z = guarded(kStart);
  Complex value = std::log(z);
  double x = kStart;
  double step = kMaxStep;
  const double direction = sigma >= kStart ? 1.0 : -1.0;

  while (x != sigma) {
    double next = x + direction * step;
    if ((direction > 0 && next > sigma) || (direction < 0 && next < sigma))
      next = sigma;
    Complex zn = guarded(next);
    Complex ratio = zn / z;
    if (std::abs(std::arg(ratio)) >= kPi / 4) {
      step = 0.5 * std::abs(next - x);
      if (step < kMinStep)
        throw BranchError("log_zeta: argument jumps too fast near sigma = " +
                          std::to_string(x));
      continue;
    }
    value += std::log(ratio);
    x = next;
    z = zn;
    step = std::min(kMaxStep, 2.0 * step);
  }

  // Snap onto exp(value) == z exactly, keeping the tracked branch.
  Complex principal = std::log(z);
  double k = std::round((value.imag() - principal.imag()) / kTwoPi);
  return principal + Complex(0.0, kTwoPi * k);
}

Complex log_zeta_shifted(ComplexPoint s, TallShift tau, const EvalConfig& cfg) {
  if (!(s.real() > 0.0)) throw DomainError("log_zeta: Re(s) must be > 0");
  TallShift height = tau.plus(s.imag());
  if (s.real() == 1.0 && height.base == 0 && height.offset == 0.0)
    throw PoleError("log_zeta: pole at s = 1");
  check_height(height.approx());
  ZetaLine line(height, cfg);
  return log_zeta_on_line(line, s.real(), cfg);
}

Complex log_zeta(ComplexPoint s, const EvalConfig& cfg) {
  return log_zeta_shifted(s, TallShift{}, cfg);
}

}  // namespace zetauniv
