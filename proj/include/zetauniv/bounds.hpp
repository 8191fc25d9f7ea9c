#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zetauniv/tau_search.hpp"
#include "zetauniv/types.hpp"
#include "zetauniv/zeta.hpp"

namespace zetauniv {

// Zeros beta + i gamma with gamma > 0, ascending in gamma.
struct ZeroTable {
  std::vector<double> ordinates;
  std::vector<double> betas;  // 1/2 unless the file gives a second column
  std::string source;

  std::size_t size() const { return ordinates.size(); }
  // Heights up to which the table is taken to be complete: the last ordinate.
  double coverage() const { return ordinates.empty() ? 0.0 : ordinates.back(); }
};

// One zero per line: "gamma" or "gamma beta", gamma strictly ascending and
// positive, 0 < beta < 1. Blank lines and '#' comments are skipped.
// Throws ParseError carrying the 1-based line number.
ZeroTable read_zero_table(std::istream& in, const std::string& source = "");
ZeroTable load_zero_table(const std::string& path);

// (T/2pi) log(T/(2 pi e)) + 7/8.
double riemann_von_mangoldt(double T);

struct ZeroCount {
  std::size_t count = 0;
  double model = 0.0;  // T^{3/2 - sigma} (log T)^5
};

// Zeros with beta > sigma and 0 < gamma < T. Throws CoverageError when T
// exceeds the table's coverage.
ZeroCount zero_count(const ZeroTable& table, double sigma, double T);

// Half-height 2 + (log t)^A + 2 (log t)^B of the rectangle around t.
double block_half_height(double t, double A, double B);

// Smallest T_j in [T, 2T] such that no tabulated zero with
// beta > 1/4 + sigma1/2 has |gamma - T_j| <= block_half_height(T_j).
// Empty when no such T_j exists. Throws CoverageError when the table does
// not reach 2T.
std::optional<double> find_zero_free_block(const ZeroTable& table, double sigma1,
                                           double A, double B, double T);

struct BoundCheckReport {
  std::string check;
  double lhs = 0.0;
  double rhs_model = 0.0;
  double ratio = 0.0;  // lhs / rhs_model, or nan when rhs_model <= 0
  bool pass = false;

  static BoundCheckReport make(std::string check, double lhs, double rhs_model,
                               double constant);
};

inline constexpr double kDefaultCheckConstant = 10.0;

struct TruncationSup {
  double sup = 0.0;
  std::size_t samples = 0;
  std::size_t skipped = 0;  // branch failures near zeros
};

// Sampled sup over t in [T, T + H] of
// |log zeta(sigma + it) + sum_{p <= Y} log(1 - p^{-sigma-it})|, one entry per
// cutoff Y. Samples sit at the midpoints of n_samples equal cells; log zeta
// is computed once per sample and shared by all cutoffs.
std::vector<TruncationSup> truncation_sup(double sigma, std::span<const double> Ys,
                                          const SearchWindow& window,
                                          std::size_t n_samples,
                                          const EvalConfig& cfg = {});

struct ProfileOptions {
  double window_length = 10.0;
  std::size_t n_samples = 200;
  double constant = kDefaultCheckConstant;
  EvalConfig eval;
};

// For each height T: lhs = truncation_sup with Y = (log T)^A, rhs_model =
// (log T)^{1 + A(1/2 - sigma)} (log log T)^2.
std::vector<BoundCheckReport> lemma22_error_profile(
    double sigma, double A, std::span<const double> heights,
    const ProfileOptions& options = {});

// lhs = integral over the window of |sum_{y_star < p <= Y} p^{-sigma-i tau}|^2
// by composite midpoint with doubling and Richardson extrapolation, starting
// from n_quadrature nodes; rhs_model = sum p^{-2 sigma} (H + Y). Throws
// RefinementError when the last two extrapolated values differ by more than
// 1%.
BoundCheckReport mean_square_check(double sigma, double y_star, double Y,
                                   const SearchWindow& window,
                                   std::size_t n_quadrature,
                                   double constant = kDefaultCheckConstant);

// The same integral for an explicit prime list (exposed for testing).
double mean_square_integral(double sigma, std::span<const std::uint32_t> primes,
                            const SearchWindow& window, std::size_t n_quadrature);

// h(s) = sum_{n >= 1} a_n n^{-s}.
struct DirichletPolynomial {
  std::vector<Complex> coefficients;  // a_1, a_2, ...
  Complex operator()(ComplexPoint s) const;
};

inline constexpr double kSubharmonicSlack = 1e-9;

// lhs = |h(center)|^2, rhs = (1/(pi ell^2)) times the polar midpoint
// quadrature of |h|^2 over the disc (n_grid radial by 2 n_grid angular
// nodes); pass iff lhs <= rhs (1 + slack).
BoundCheckReport subharmonic_check(const std::function<Complex(ComplexPoint)>& h,
                                   ComplexPoint center, double ell,
                                   std::size_t n_grid);
BoundCheckReport subharmonic_check(const DirichletPolynomial& poly,
                                   ComplexPoint center, double ell,
                                   std::size_t n_grid);

// Header "check,lhs,rhs_model,ratio,pass" and one row per report.
void write_bound_csv(std::ostream& out, std::span<const BoundCheckReport> reports);

}  // namespace zetauniv
