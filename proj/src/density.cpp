#include "zetauniv/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "refine.hpp"
#include "zetauniv/csv.hpp"
#include "zetauniv/errors.hpp"
#include "zetauniv/euler_product.hpp"
#include "zetauniv/primes.hpp"

namespace zetauniv {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double x) { return format_number(x); }

std::vector<std::uint32_t> primes_up_to(double Y) {
  if (Y < 2.0) return {};
  auto table = sieve_primes(static_cast<std::uint64_t>(std::floor(Y)));
  auto span = table.primes();
  return {span.begin(), span.end()};
}

bool in_assignment(const AngleAssignment& a, std::uint32_t p) {
  return std::binary_search(a.primes.begin(), a.primes.end(), p);
}

// Removes the multiple of 2 pi i that best aligns two log branches.
void align_turns(std::vector<Complex>& diff) {
  if (diff.empty()) return;
  double mean = 0.0;
  for (const Complex& d : diff) mean += d.imag();
  mean /= static_cast<double>(diff.size());
  const double k = std::round(mean / kTwoPi);
  for (Complex& d : diff) d -= Complex(0.0, kTwoPi * k);
}

SupError sup_of(const std::vector<Complex>& diff) {
  SupError out;
  const std::size_t n = diff.size();
  for (std::size_t k = 0; k < n; ++k) {
    out.sup = std::max(out.sup, std::abs(diff[k]));
    out.correction =
        std::max(out.correction, 0.5 * std::abs(diff[(k + 1) % n] - diff[k]));
  }
  return out;
}

double sup_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b,
                    bool align) {
  std::vector<Complex> d(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) d[k] = a[k] - b[k];
  if (align) align_turns(d);
  double s = 0.0;
  for (const Complex& v : d) s = std::max(s, std::abs(v));
  return s;
}

// zeta(s + i tau) or its surrogate on fixed boundary points, compared with
// f (or log f).
class DistanceEvaluator {
public:
  DistanceEvaluator(const Expression& f, const Disc& D, const DistanceMode& mode,
                    std::int64_t base, std::size_t n, const EvalConfig& cfg)
      : mode_(mode), base_(base), cfg_(cfg), points_(D.boundary(n)) {
    if (n < kMinBoundarySamples)
      throw ConfigError("sup_dist: need at least 16 boundary samples");
    if (mode.log_mode) {
      target_ = log_target_on_boundary(f, D, n, cfg);
    } else {
      target_.resize(n);
      for (std::size_t k = 0; k < n; ++k) target_[k] = f.evaluate(points_[k], cfg);
    }
    if (mode.source == DistanceMode::Source::EulerSurrogate) {
      if (!(mode.Y >= 2.0))
        throw ConfigError("surrogate mode needs a cutoff Y >= 2");
      auto primes = primes_up_to(mode.Y);
      euler_.emplace(points_, primes, base);
    }
  }

  std::vector<Complex> zeta_side(double offset) const {
    std::vector<Complex> z(points_.size());
    if (euler_) {
      euler_->evaluate(offset, z);
      if (!mode_.log_mode)
        for (Complex& v : z) v = std::exp(v);
      return z;
    }
    const TallShift tau{base_, offset};
    for (std::size_t k = 0; k < points_.size(); ++k)
      z[k] = mode_.log_mode ? log_zeta_shifted(points_[k], tau, cfg_)
                            : zeta_shifted(points_[k], tau, cfg_);
    return z;
  }

  SupError at(double offset) const {
    std::vector<Complex> d = zeta_side(offset);
    for (std::size_t k = 0; k < d.size(); ++k) d[k] -= target_[k];
    if (mode_.log_mode) align_turns(d);
    return sup_of(d);
  }

  const std::vector<ComplexPoint>& points() const { return points_; }

private:
  DistanceMode mode_;
  std::int64_t base_;
  EvalConfig cfg_;
  std::vector<ComplexPoint> points_;
  std::vector<Complex> target_;
  std::optional<ShiftedEulerSum> euler_;
};

}  // namespace

ProofGeometry derive_geometry(const Disc& D, double eps, double floor_y,
                              double A, double B, std::int64_t T) {
  D.validate();
  if (!(eps > 0.0)) throw ConfigError("eps must be > 0");
  if (T < 3) throw ConfigError("T must be >= 3");
  const double sigma0 = D.center.real();
  const double r = D.radius;
  const double threshold = 2.0 / (2.0 * (sigma0 - r) - 1.0);
  if (!(A > threshold))
    throw ConfigError("exponent bound violated: need A > 2/(2(sigma0 - r) - 1) = " +
                      num(threshold) + ", got A = " + num(A));
  if (!(B > A))
    throw ConfigError("exponent bound violated: need B > A, got A = " + num(A) +
                      ", B = " + num(B));

  ProofGeometry g;
  g.D = D;
  g.eps = eps;
  g.A = A;
  g.B = B;
  g.T = T;
  const double R = 0.5 * (sigma0 + r - 0.5);
  g.Dprime = Disc{D.center, R};
  g.sigma1prime = sigma0 - R;
  g.dprime_in_strip = g.Dprime.max_re() < 1.0;
  const double logT = std::log(static_cast<double>(T));
  g.Y = std::pow(logT, A);
  g.H = std::pow(logT, B);
  const double exponent = 0.25 - 0.5 * g.sigma1prime;  // negative
  g.y = std::max(floor_y, std::pow(eps * std::sqrt(kPi) * (R - r), 1.0 / exponent));
  return g;
}

double subharmonic_epsilon(const ProofGeometry& geom, double y) {
  return std::pow(y, 0.25 - 0.5 * geom.sigma1prime) /
         (std::sqrt(kPi) * (geom.Dprime.radius - geom.D.radius));
}

double estimate_c5(const ProofGeometry& geom, const AngleAssignment& assignment,
                   const SearchWindow& window, std::size_t n_tau,
                   std::size_t n_radial, std::size_t n_angular) {
  if (n_tau == 0 || n_radial == 0 || n_angular == 0)
    throw ConfigError("estimate_c5: grid sizes must be positive");
  std::vector<std::uint32_t> tail;
  for (std::uint32_t p : primes_up_to(geom.Y))
    if (!in_assignment(assignment, p)) tail.push_back(p);

  const double R = geom.Dprime.radius;
  const double dr = R / static_cast<double>(n_radial);
  const double dphi = kTwoPi / static_cast<double>(n_angular);
  std::vector<ComplexPoint> points;
  std::vector<double> weights;
  for (std::size_t i = 0; i < n_radial; ++i) {
    const double rho = (static_cast<double>(i) + 0.5) * dr;
    for (std::size_t j = 0; j < n_angular; ++j) {
      points.push_back(geom.Dprime.center +
                       rho * unit_turn((static_cast<double>(j) + 0.5) /
                                       static_cast<double>(n_angular)));
      weights.push_back(rho * dr * dphi);
    }
  }
  const ShiftedEulerSum sum(points, tail, window.T);
  std::vector<Complex> values(points.size());
  double total = 0.0;
  for (std::size_t k = 0; k < n_tau; ++k) {
    const double u = (static_cast<double>(k) + 0.5) * window.H /
                     static_cast<double>(n_tau);
    sum.evaluate(u, values);
    for (std::size_t j = 0; j < values.size(); ++j)
      total += weights[j] * std::norm(values[j]);
  }
  const double mean = total / static_cast<double>(n_tau);
  return mean / std::pow(geom.y, 1.0 - 2.0 * geom.sigma1prime);
}

void choose_delta(ProofGeometry& geom, const AngleAssignment& assignment,
                  double c5) {
  if (!(c5 >= 0.0)) throw ConfigError("c5 must be >= 0");
  geom.c5 = c5;
  const auto m = static_cast<double>(assignment.size());
  double delta = kMaxDelta;
  if (m > 0 && c5 > 0.0) {
    const double bound = 0.5 / (c5 * std::pow(geom.y, 0.5 - geom.sigma1prime));
    delta = std::min(kMaxDelta, 0.99 * std::pow(bound, 1.0 / m));
  }
  geom.delta = delta;
  const double lower =
      std::max(geom.y * std::pow(delta, m / (1.0 - 2.0 * geom.sigma1prime)),
               static_cast<double>(assignment.max_prime()));
  geom.y_star = std::nextafter(lower, std::numeric_limits<double>::infinity());
}

struct TailMeter::Impl {
  std::optional<ShiftedEulerSum> only_y;  // p <= Y, p not in M
  std::optional<ShiftedEulerSum> only_m;  // p in M, p > Y
  std::size_t n;
};

TailMeter::TailMeter(const Disc& D, const AngleAssignment& assignment, double Y,
                     std::int64_t base, std::size_t n_samples) {
  auto impl = std::make_shared<Impl>();
  impl->n = n_samples;
  auto points = D.boundary(n_samples);
  std::vector<std::uint32_t> only_y, only_m;
  for (std::uint32_t p : primes_up_to(Y))
    if (!in_assignment(assignment, p)) only_y.push_back(p);
  for (std::uint32_t p : assignment.primes)
    if (static_cast<double>(p) > Y) only_m.push_back(p);
  impl->only_y.emplace(points, only_y, base);
  impl->only_m.emplace(points, only_m, base);
  impl_ = std::move(impl);
}

double TailMeter::at(double offset) const {
  auto a = impl_->only_y->evaluate(offset);
  auto b = impl_->only_m->evaluate(offset);
  double s = 0.0;
  for (std::size_t k = 0; k < impl_->n; ++k) s = std::max(s, std::abs(a[k] - b[k]));
  return s;
}

HitSet build_E_T(const ProofGeometry& geom, const AngleAssignment& assignment,
                 const SearchWindow& window) {
  if (!(geom.delta > 0.0))
    throw ConfigError("build_E_T: delta not chosen (call choose_delta)");
  const HitSet c = scan_c_delta(window, assignment, geom.delta);
  const TailMeter meter(geom.D, assignment, geom.Y, window.T);
  std::vector<Interval> kept;
  for (const Interval& iv : c.intervals) {
    auto runs = detail::good_runs(iv.start, iv.end, 0.5 * iv.length(), {},
                                  [&](double u) { return meter.at(u) <= geom.eps; });
    for (const auto& run : runs) kept.push_back(run.interval);
  }
  return HitSet::from_intervals(std::move(kept));
}

std::string DistanceMode::name() const {
  std::string s = source == Source::TrueZeta ? "zeta" : "surrogate";
  return log_mode ? s + "-log" : s;
}

SupError sup_dist(TallShift tau, const Expression& f, const Disc& D,
                  const DistanceMode& mode, std::size_t n_samples,
                  const EvalConfig& cfg) {
  return DistanceEvaluator(f, D, mode, tau.base, n_samples, cfg).at(tau.offset);
}

DensityReport estimate_density(const Expression& f, const Disc& D, double eps,
                               const SearchWindow& window, double step,
                               const DistanceMode& mode,
                               const DensityOptions& options) {
  if (!(eps > 0.0)) throw ConfigError("eps must be > 0");
  if (!(step > 0.0)) throw ConfigError("step must be > 0");
  const auto& assign = options.assignment;
  const bool have_m = assign && !assign->empty();
  if (have_m) {
    if (!(options.delta > 0.0 && options.delta < 1.0))
      throw ConfigError("delta must lie in (0, 1)");
    step = std::min(step, options.delta * kPi /
                              (2.0 * std::log(static_cast<double>(assign->max_prime()))));
  }

  const DistanceEvaluator ev(f, D, mode, window.T, options.boundary_samples,
                             options.eval);
  auto good = [&](double u) {
    try {
      return ev.at(u).sup < eps;
    } catch (const BranchError&) {
      return false;
    }
  };

  std::vector<Interval> regions;
  std::vector<double> seeds;
  auto add_region = [&](double a, double b) {
    a = std::max(0.0, a);
    b = std::min(window.H, b);
    if (b >= a) regions.push_back({a, b});
  };
  if (have_m && assign->size() <= kMaxScanPrimes) {
    for (const Interval& iv : scan_c_delta(window, *assign, options.delta).intervals)
      add_region(iv.start - step, iv.end + step);
  }
  for (const TallShift& t0 : f.zeta_shifts()) {
    const double u = static_cast<double>(t0.base - window.T) + t0.offset;
    if (u >= 0.0 && u <= window.H) {
      seeds.push_back(u);
      add_region(u - step, u + step);
    }
  }
  if (options.fallback_scan) add_region(0.0, window.H);
  regions = unite(std::move(regions));

  std::vector<detail::Run> runs;
  for (const Interval& region : regions) {
    auto part = detail::good_runs(region.start, region.end, step, seeds, good);
    runs.insert(runs.end(), part.begin(), part.end());
  }

  DensityReport report;
  report.window = window;
  report.epsilon = eps;
  report.mode = mode;
  std::vector<Interval> intervals;
  for (const auto& run : runs) intervals.push_back(run.interval);
  report.hits = HitSet::from_intervals(std::move(intervals));
  report.density = std::clamp(report.hits.measure / window.H, 0.0, 1.0);

  // Stage diagnostics on the same boundary samples.
  const double Y = options.Y > 0.0 ? options.Y
                   : mode.source == DistanceMode::Source::EulerSurrogate
                       ? mode.Y
                       : std::pow(std::log(static_cast<double>(window.T)), 3.0);
  const auto& points = ev.points();
  const auto y_primes = primes_up_to(Y);
  const ShiftedEulerSum euler_y(points, y_primes, window.T);
  std::optional<ShiftedEulerSum> euler_m;
  std::vector<Complex> twisted, log_f;
  if (have_m) {
    euler_m.emplace(points, assign->primes, window.T);
    for (const ComplexPoint& s : points) twisted.push_back(twisted_product(*assign, s));
    try {
      log_f = log_target_on_boundary(f, D, points.size(), options.eval);
    } catch (const ZeroTargetError&) {
      log_f.clear();
    }
  }
  const bool surrogate_same_y =
      mode.source == DistanceMode::Source::EulerSurrogate && Y == mode.Y;

  for (const auto& run : runs) {
    DensityRow row;
    row.interval = run.interval;
    row.witness = run.witness;
    row.sup_error = ev.at(run.witness).sup;
    const auto ey = euler_y.evaluate(run.witness);
    if (surrogate_same_y) {
      row.stages.stage1 = 0.0;
    } else {
      try {
        std::vector<Complex> lz(points.size());
        const TallShift tau{window.T, run.witness};
        for (std::size_t k = 0; k < points.size(); ++k)
          lz[k] = log_zeta_shifted(points[k], tau, options.eval);
        row.stages.stage1 = sup_abs_diff(lz, ey, true);
      } catch (const Error&) {
        row.stages.stage1 = kNaN;
      }
    }
    if (have_m) {
      const auto em = euler_m->evaluate(run.witness);
      row.stages.stage2 = log_f.empty() ? kNaN : sup_abs_diff(log_f, twisted, true);
      row.stages.stage3 = sup_abs_diff(twisted, em, false);
      row.stages.stage4 = sup_abs_diff(em, ey, false);
    } else {
      row.stages.stage2 = row.stages.stage3 = row.stages.stage4 = kNaN;
    }
    report.rows.push_back(row);
  }
  return report;
}

void write_density_csv(std::ostream& out, const DensityReport& report) {
  out << "tau_offset_start,tau_offset_end,sup_error,stage1,stage2,stage3,stage4\n";
  for (const DensityRow& row : report.rows) {
    out << num(row.interval.start) << ',' << num(row.interval.end) << ','
        << num(row.sup_error) << ',' << num(row.stages.stage1) << ','
        << num(row.stages.stage2) << ',' << num(row.stages.stage3) << ','
        << num(row.stages.stage4) << '\n';
  }
  out << "summary," << num(report.window.H) << ',' << num(report.hits.measure)
      << ',' << num(report.density) << ',' << num(report.epsilon) << ','
      << report.hits.intervals.size() << ',' << report.mode.name() << '\n';
}

}  // namespace zetauniv
