#pragma once

#include <span>
#include <vector>

namespace blowzoom {

// Exact optimum of the line problem
//     max sum_i c_i phi(x_i)
// over 1-Lipschitz phi : [-L, L] -> [0, oo) with phi(-L) = phi(+L) = 0
// (equivalently 0 <= phi(x) <= dist(x, {-L, +L})).
//
// Solved through the dual: a min-cost flow on the path graph whose endpoints
// dispose for free and whose interior nodes may absorb deficit for free. The
// dynamic program carries the convex piecewise-linear value function in the
// transported flow, maintained as a max-heap of hinge points.
//
// xs must be sorted ascending with xs[i] in [-L, L]; no duplicates.
double line_flat_optimum(std::span<const double> xs, std::span<const double> cs, double L);

// Exact optimum of the general problem
//     max sum_i c_i phi_i
//     s.t. |phi_i - phi_j| <= ||x_i - x_j||_2,  -fill_i <= phi_i <= disposal_i
// for points in R^dim (positions flattened dim-major). Computed as the optimal
// value of the dual transportation problem (surplus routed to deficits, or
// destroyed at cost disposal_i; deficits covered at cost fill_i) by successive
// shortest augmenting paths with node potentials.
double ssp_flat_optimum(int dim, std::span<const double> positions, std::span<const double> charges,
                        std::span<const double> disposal, std::span<const double> fill);

// Balanced optimal transport between two weighted point sets under an
// arbitrary caller-supplied metric, by the same successive-shortest-path
// engine. cost(i, j) gives the distance between source i and sink j.
double ssp_assignment(std::span<const double> supply, std::span<const double> demand,
                      const std::vector<std::vector<double>>& cost);

}  // namespace blowzoom
