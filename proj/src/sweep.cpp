#include "relaywise/sweep.hpp"

#include <cmath>
#include <stdexcept>

namespace relaywise {

std::string to_string(Mode m) {
    switch (m) {
        case Mode::Direct: return "direct";
        case Mode::Rdf: return "rdf";
        case Mode::Ndf: return "ndf";
        case Mode::Af: return "af";
        case Mode::Cf: return "cf";
        case Mode::HybridNorss: return "hybrid-norss";
        case Mode::HybridExhaustive: return "hybrid-exhaustive";
    }
    return "?";
}

Mode parse_mode(const std::string& s) {
    if (s == "direct") return Mode::Direct;
    if (s == "rdf") return Mode::Rdf;
    if (s == "ndf") return Mode::Ndf;
    if (s == "af") return Mode::Af;
    if (s == "cf") return Mode::Cf;
    if (s == "hybrid-norss") return Mode::HybridNorss;
    if (s == "hybrid-exhaustive") return Mode::HybridExhaustive;
    throw std::invalid_argument("unknown mode: " + s);
}

NetworkResult solve_network(const Scenario& scenario, Mode mode,
                            std::optional<double> budget_override) {
    scenario.validate();
    NetworkResult net;
    for (const auto& group_in : scenario.relays) {
        RelayGroup group = group_in;
        if (budget_override) group.total_power = *budget_override;

        RelaySolve rs;
        rs.relay_id = group.id;
        switch (mode) {
            case Mode::Direct: rs.alloc = allocate_direct(group, scenario.prefactor); break;
            case Mode::Rdf: rs.alloc = allocate_rdf(group, scenario.prefactor); break;
            case Mode::Ndf: rs.alloc = allocate_ndf(group, scenario.prefactor); break;
            case Mode::Af: rs.alloc = allocate_af(group, scenario.prefactor); break;
            case Mode::Cf: rs.alloc = allocate_cf(group, scenario.prefactor); break;
            case Mode::HybridNorss: {
                HybridResult h = norss(group, scenario.prefactor);
                rs.alloc = std::move(h.allocation);
                rs.partition = std::move(h.partition);
                break;
            }
            case Mode::HybridExhaustive: {
                HybridResult h = exhaustive_hybrid(group, scenario.prefactor);
                rs.alloc = std::move(h.allocation);
                rs.partition = std::move(h.partition);
                break;
            }
        }
        net.sum_capacity += rs.alloc.sum_capacity;
        net.relays.push_back(std::move(rs));
    }
    return net;
}

SweepResult sweep(const Scenario& scenario, const std::vector<Mode>& modes, double budget_min,
                  double budget_max, int points, bool log_spacing) {
    if (modes.empty()) throw std::invalid_argument("no modes selected");
    if (points < 2) throw std::invalid_argument("sweep needs at least 2 points");
    if (!(budget_min >= 0.0) || !(budget_max > budget_min)) {
        throw std::invalid_argument("need 0 <= budget_min < budget_max");
    }
    if (log_spacing && budget_min <= 0.0) {
        throw std::invalid_argument("log spacing needs budget_min > 0");
    }

    SweepResult result;
    result.modes = modes;
    result.fingerprint = scenario.fingerprint;
    result.log_spacing = log_spacing;
    for (int i = 0; i < points; ++i) {
        double t = static_cast<double>(i) / (points - 1);
        double b = log_spacing
                       ? std::exp(std::log(budget_min) + t * (std::log(budget_max) - std::log(budget_min)))
                       : budget_min + t * (budget_max - budget_min);
        result.budgets.push_back(b);
    }

    result.series.resize(modes.size());
    for (size_t m = 0; m < modes.size(); ++m) {
        result.series[m].reserve(result.budgets.size());
        for (double b : result.budgets) {
            result.series[m].push_back(solve_network(scenario, modes[m], b));
        }
    }
    return result;
}

}  // namespace relaywise
