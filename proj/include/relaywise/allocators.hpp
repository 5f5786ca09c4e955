#pragma once

#include <map>
#include <string>

#include "relaywise/model.hpp"
#include "relaywise/waterfill.hpp"

namespace relaywise {

enum class UserClass { HighPotential, LowPotential, Nonrelayed };

std::string to_string(UserClass c);

/// Result of one relay group's power allocation under one strategy (or one
/// hybrid partition, in which case user_strategy varies per user).
struct Allocation {
    Strategy strategy = Strategy::Direct;
    std::map<std::string, double> powers;
    double water_level = 0.0;
    std::map<std::string, UserClass> classes;
    std::map<std::string, Strategy> user_strategy;
    std::map<std::string, double> user_capacity;
    double sum_capacity = 0.0;
    double slack = 0.0;
};

Allocation allocate_direct(const RelayGroup& group, double prefactor);
Allocation allocate_rdf(const RelayGroup& group, double prefactor);
Allocation allocate_ndf(const RelayGroup& group, double prefactor);
Allocation allocate_af(const RelayGroup& group, double prefactor);
Allocation allocate_cf(const RelayGroup& group, double prefactor);

UserClass classify_user(const LinkBudget& link, double power, double water_level,
                        Strategy strategy);

/// Recomputes capacities, classes and sum_capacity from powers and the
/// per-user strategy tags already present in the allocation.
void finalize_allocation(const RelayGroup& group, Allocation& alloc, double prefactor);

}  // namespace relaywise
