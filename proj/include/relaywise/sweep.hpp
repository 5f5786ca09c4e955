#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relaywise/hybrid.hpp"

namespace relaywise {

enum class Mode { Direct, Rdf, Ndf, Af, Cf, HybridNorss, HybridExhaustive };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

struct RelaySolve {
    std::string relay_id;
    Allocation alloc;
    std::optional<Partition> partition;  // set for hybrid modes
};

struct NetworkResult {
    std::vector<RelaySolve> relays;
    double sum_capacity = 0.0;
};

/// Solves every relay group independently with the chosen mode; the network
/// sum capacity is the sum over relays. budget_override replaces each
/// relay's total_power when set.
NetworkResult solve_network(const Scenario& scenario, Mode mode,
                            std::optional<double> budget_override = std::nullopt);

struct SweepResult {
    std::vector<double> budgets;
    std::vector<Mode> modes;
    std::vector<std::vector<NetworkResult>> series;  // [mode][budget]
    std::string fingerprint;
    bool log_spacing = false;
};

SweepResult sweep(const Scenario& scenario, const std::vector<Mode>& modes, double budget_min,
                  double budget_max, int points, bool log_spacing);

}  // namespace relaywise
