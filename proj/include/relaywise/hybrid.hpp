#pragma once

#include <set>
#include <string>
#include <vector>

#include "relaywise/allocators.hpp"

namespace relaywise {

/// An NDF/CF assignment of a relay group's users.
struct Partition {
    std::set<std::string> ndf_set;
    std::set<std::string> cf_set;

    void validate(const RelayGroup& group) const;
};

/// One step of the NORSS decision trace.
struct TraceStep {
    std::string action;  // "strict-cf", "initial-solve", "freeze", "switch"
    std::string user;
    bool accepted = false;
    double sum_before = 0.0;
    double sum_after = 0.0;
};

struct HybridResult {
    Partition partition;
    Allocation allocation;
    std::vector<TraceStep> trace;
    std::set<std::string> ndf_strict;
};

/// Optimal power allocation for a fixed NDF/CF partition: one shared water
/// level over the mixed curve set. DF-ineligible users placed in the NDF set
/// get cap 0 (zero power, direct capacity).
Allocation allocate_partition(const RelayGroup& group, const Partition& partition,
                              double prefactor);

/// Extra relay power needed before CF matches the NDF ceiling for this user:
/// thre2 - ndf_cap. +inf when the user has no direct link. Only defined for
/// users with source_relay_snr > direct_snr.
double switch_cost(const LinkBudget& link);

/// Near-optimum relaying strategy selection: strict-CF set formation,
/// initial NDF/CF solve with strict-NDF freezing, then greedy cheapest-switch
/// NDF-to-CF moves accepted only on sum-capacity improvement.
HybridResult norss(const RelayGroup& group, double prefactor);

/// Enumerates every partition respecting the strict-CF constraint and
/// returns the best. Guarded to at most 20 free users.
HybridResult exhaustive_hybrid(const RelayGroup& group, double prefactor);

}  // namespace relaywise
