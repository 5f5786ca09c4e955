#pragma once

#include <functional>
#include <span>
#include <vector>

namespace relaywise {

/// One user's relay-power demand as a function of the water level mu.
/// demand must be continuous, nonincreasing, strictly decreasing where
/// positive, and identically zero for mu >= zero_threshold. cap is a hard
/// per-user ceiling applied as min(demand(mu), cap).
struct DemandCurve {
    std::function<double(double)> demand;
    double zero_threshold = 0.0;
    double cap = 0.0;
};

struct WaterLevelSolution {
    double mu = 0.0;  // 0 encodes "budget constraint inactive"
    std::vector<double> powers;
    double slack = 0.0;
};

/// Finds the water level mu* at which total (cap-clamped) demand equals the
/// budget, by bisection. If even the saturated demands fit inside the budget
/// the constraint is inactive: everyone gets its saturated demand and mu = 0.
WaterLevelSolution solve_water_level(std::span<const DemandCurve> curves, double budget,
                                     double rel_tol = 1e-12);

/// Water-filling with per-user base levels and ceilings, solved exactly by a
/// sorted breakpoint scan over the water height w = 1/mu. User i's power is
/// clamp(w / gain_i - base_i, 0, cap_i).
WaterLevelSolution bounded_waterfill(std::span<const double> bases, std::span<const double> caps,
                                     std::span<const double> gains, double budget);
WaterLevelSolution bounded_waterfill(std::span<const double> bases, std::span<const double> caps,
                                     double budget);

/// The piecewise-linear curve min((1/(gain*mu) - base)+, cap) as a DemandCurve.
DemandCurve linear_demand_curve(double base, double cap, double gain = 1.0);

/// The closed-form concave-rational demand curve shared by the AF and CF
/// allocations, with coefficients (a, b). Power is positive iff mu < a.
DemandCurve rational_demand_curve(double a, double b);

}  // namespace relaywise
