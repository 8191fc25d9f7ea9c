#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "tau_search_detail.hpp"
#include "zetauniv/errors.hpp"
#include "zetauniv/euler_product.hpp"
#include "zetauniv/tau_search.hpp"

namespace zetauniv {
namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct GramSchmidt {
  Matrix star;  // rows b*_j
  Matrix mu;
  Vector norm2;
};

GramSchmidt gram_schmidt(const Matrix& b) {
  const Eigen::Index n = b.rows();
  GramSchmidt gs{Matrix(b.rows(), b.cols()), Matrix::Zero(n, n), Vector(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    Vector v = b.row(i).transpose();
    for (Eigen::Index j = 0; j < i; ++j) {
      gs.mu(i, j) = b.row(i).dot(gs.star.row(j)) / gs.norm2(j);
      v -= gs.mu(i, j) * gs.star.row(j).transpose();
    }
    gs.star.row(i) = v.transpose();
    gs.norm2(i) = v.squaredNorm();
  }
  return gs;
}

// Textbook LLL with Lovasz constant 0.99 on the rows of b. Dimensions here
// are at most 8, so Gram-Schmidt is simply recomputed after each change.
void lll_reduce(Matrix& b) {
  const Eigen::Index n = b.rows();
  GramSchmidt gs = gram_schmidt(b);
  Eigen::Index k = 1;
  int guard = 0;
  while (k < n && ++guard < 100000) {
    for (Eigen::Index j = k - 1; j >= 0; --j) {
      double q = std::round(gs.mu(k, j));
      if (q != 0.0) {
        b.row(k) -= q * b.row(j);
        gs = gram_schmidt(b);
      }
    }
    double m = gs.mu(k, k - 1);
    if (gs.norm2(k) >= (0.99 - m * m) * gs.norm2(k - 1)) {
      ++k;
    } else {
      b.row(k).swap(b.row(k - 1));
      gs = gram_schmidt(b);
      k = std::max<Eigen::Index>(k - 1, 1);
    }
  }
}

// Depth-first Schnorr-Euchner enumeration of lattice points within radius
// of the target; each leaf goes to the visitor, which returns true to stop.
template <class Visit>
class Enumerator {
public:
  Enumerator(const Matrix& b, const Vector& target, double radius2,
             std::size_t max_leaves, Visit visit)
      : b_(b), gs_(gram_schmidt(b)), target_(target), radius2_(radius2),
        max_leaves_(max_leaves), visit_(visit) {}

  bool run() { return descend(b_.rows() - 1, target_, 0.0); }

private:
  bool descend(Eigen::Index level, const Vector& residual, double partial) {
    if (level < 0) {
      ++leaves_;
      return visit_(Vector(target_ - residual));
    }
    const double c = residual.dot(gs_.star.row(level)) / gs_.norm2(level);
    const double z0 = std::round(c);
    // Zig-zag around the rounded center: z0, z0 + s, z0 - s, z0 + 2s, ...
    // Distances grow monotonically on each side, so a side stops at its
    // first point outside the radius.
    const double s = c >= z0 ? 1.0 : -1.0;
    bool open[2] = {true, true};
    for (int m = 0; open[0] || open[1]; ++m) {
      for (int side = 0; side < 2; ++side) {
        if (!open[side] || (m == 0 && side == 1)) continue;
        const double z = z0 + (side == 0 ? s : -s) * m;
        const double d = (z - c) * (z - c) * gs_.norm2(level) + partial;
        if (d > radius2_) {
          open[side] = false;
          if (m == 0) open[1] = false;
          continue;
        }
        if (leaves_ >= max_leaves_) return false;
        Vector next = residual - z * b_.row(level).transpose();
        if (descend(level - 1, next, d)) return true;
      }
    }
    return false;
  }

  const Matrix& b_;
  GramSchmidt gs_;
  Vector target_;
  double radius2_;
  std::size_t max_leaves_;
  std::size_t leaves_ = 0;
  Visit visit_;
};

constexpr std::size_t kMaxLeaves = 200000;

}  // namespace

std::optional<TallShift> lattice_find_first(const AngleAssignment& assignment,
                                            double delta,
                                            const SearchWindow& window) {
  detail::check_scan_inputs(assignment, delta);
  const std::size_t n = assignment.size();
  if (n > kMaxLatticePrimes)
    throw CapacityError("lattice_find_first: |M| = " + std::to_string(n) +
                        " exceeds 8");
  if (n == 0) return window.at(0.0);

  // Pivot on the largest prime so every frequency ratio is below one.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::reverse(order.begin(), order.end());
  std::vector<std::uint32_t> primes(n);
  std::vector<double> theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    primes[i] = assignment.primes[order[i]];
    theta[i] = assignment.theta[order[i]];
  }
  const PhaseCache cache(window.T, primes);

  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = theta[i] - cache.base_phase(i);
    c[i] -= std::floor(c[i]);
  }
  const double alpha0 = cache.frequency(0);
  const double K = window.H * alpha0;
  const double W = 1.0 / delta;

  // u alpha_i = c_i + k_i with u alpha_0 = c_0 + k_0: coordinates
  // W (k_0 beta_i - k_i - (c_i - c_0 beta_i)) and k_0 / K - 1/2.
  const auto dim = static_cast<Eigen::Index>(n);
  Matrix basis = Matrix::Zero(dim, dim);
  Vector target(dim);
  double radius2 = 0.25;
  for (std::size_t i = 1; i < n; ++i) {
    const double beta = cache.frequency(i) / alpha0;
    const auto col = static_cast<Eigen::Index>(i - 1);
    basis(0, col) = W * beta;
    basis(static_cast<Eigen::Index>(i), col) = W;
    target(col) = W * (c[i] - c[0] * beta);
    radius2 += 0.25 * (1.0 + beta) * (1.0 + beta);
  }
  basis(0, dim - 1) = 1.0 / K;
  target(dim - 1) = 0.5;
  radius2 *= 1.0 + 1e-9;
  lll_reduce(basis);

  std::optional<TallShift> found;
  auto visit = [&](const Vector& v) {
    const double k0 = std::round(v(dim - 1) * K);
    const double from = std::max(0.0, (c[0] + k0 - 0.5 * delta) / alpha0);
    const double to = std::min(window.H, (c[0] + k0 + 0.5 * delta) / alpha0);
    if (!(to > from)) return false;
    auto hits = detail::scan_with_cache(cache, theta, delta, from, to);
    for (const Interval& iv : hits) {
      TallShift tau = window.at(0.5 * (iv.start + iv.end));
      if (c_delta_contains(tau, assignment, delta)) {
        found = tau;
        return true;
      }
    }
    return false;
  };
  Enumerator<decltype(visit)> search(basis, target, radius2, kMaxLeaves, visit);
  search.run();
  return found;
}

}  // namespace zetauniv
