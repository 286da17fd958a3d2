#pragma once

#include <cstdint>
#include <vector>

#include "ripsplot/persistence.hpp"
#include "ripsplot/point_cloud.hpp"

namespace ripsplot {

// Piecewise-constant Betti number; values[i] holds on
// [breakpoints[i], breakpoints[i+1]), the last value onward to infinity.
// Before the first breakpoint the value is 0.
struct BettiCurve {
	int degree = 0;
	std::vector<double> breakpoints;  // sorted, distinct
	std::vector<std::int64_t> values;

	std::int64_t value_at(double t) const;
};

// Brute-force beta_k of the Rips complex at threshold t, computed as
// #k-simplices - rank(boundary_k) - rank(boundary_{k+1}) by dense Gaussian
// elimination over Z/2. Shares no code with the reduction engine on purpose:
// it is the independent check. Tiny inputs only.
std::int64_t betti_at(const DistanceMatrix& dm, double t, int degree, int max_dim);

// Counting view of a diagram: value at t is the number of degree-k features
// with birth <= t < death.
BettiCurve betti_curve_from_diagram(const PersistenceDiagram& diag, int degree);

}  // namespace ripsplot
