#pragma once

#include <span>
#include <vector>

#include "zetauniv/euler_product.hpp"
#include "zetauniv/tau_search.hpp"

namespace zetauniv::detail {

// Interval construction over [from, to] with precomputed phases.
std::vector<Interval> scan_with_cache(const PhaseCache& cache,
                                      std::span<const double> theta,
                                      double delta, double from, double to);

void check_scan_inputs(const AngleAssignment& assignment, double delta);

}  // namespace zetauniv::detail
