#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "relaywise/allocators.hpp"

namespace relaywise {

struct OracleReport {
    std::vector<double> best_powers;  // aligned with the group's user order
    double best_sum_capacity = 0.0;
    int grid_resolution = 0;
    bool refined = false;
    std::vector<std::pair<std::string, std::string>> kkt_violations;
};

/// Default grid resolution for a group of n users, sized so the simplex face
/// enumeration stays desk-scale.
int default_grid_resolution(int n_users);

/// Brute-force maximization of the sum capacity over the power simplex for a
/// fixed per-user strategy assignment: every capacity in play is nondecreasing
/// in its own power, so the face sum(p) = budget is enumerated and the best
/// point refined by coordinate-descent transfers.
OracleReport grid_maximize(const RelayGroup& group,
                           const std::map<std::string, Strategy>& assignment, double budget,
                           double prefactor, int resolution = 0);

/// Finite-difference KKT certificate for an allocation: budget and cap
/// feasibility, equal marginal rates among interior users, and the right
/// inequalities for zero-power and capped users.
OracleReport kkt_check(const RelayGroup& group, const Allocation& allocation,
                       double fd_step = 0.0);

}  // namespace relaywise
