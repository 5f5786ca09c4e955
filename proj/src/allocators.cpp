#include "relaywise/allocators.hpp"

#include <cmath>
#include <vector>

namespace relaywise {

namespace {

constexpr double kZeroPowerTol = 1e-12;

Allocation make_base_allocation(const RelayGroup& group, Strategy strategy, double prefactor) {
    Allocation alloc;
    alloc.strategy = strategy;
    alloc.slack = group.total_power;
    for (const auto& u : group.users) {
        alloc.powers[u.id] = 0.0;
        alloc.user_strategy[u.id] = strategy;
        alloc.classes[u.id] = UserClass::Nonrelayed;
        alloc.user_capacity[u.id] = user_capacity(u.link, strategy, 0.0, prefactor);
    }
    return alloc;
}

Allocation allocate_df(const RelayGroup& group, Strategy strategy, double prefactor) {
    group.validate();
    Allocation alloc = make_base_allocation(group, strategy, prefactor);

    std::vector<size_t> active;
    std::vector<double> bases, caps;
    for (size_t i = 0; i < group.users.size(); ++i) {
        const auto& link = group.users[i].link;
        if (!df_eligible(link)) continue;
        LinkDerived d = derive(link);
        active.push_back(i);
        bases.push_back(strategy == Strategy::Rdf ? d.rdf_base : d.ndf_base);
        caps.push_back(strategy == Strategy::Rdf ? d.rdf_cap : d.ndf_cap);
    }

    if (!active.empty()) {
        WaterLevelSolution wl = bounded_waterfill(bases, caps, group.total_power);
        alloc.water_level = wl.mu;
        alloc.slack = wl.slack;
        for (size_t k = 0; k < active.size(); ++k) {
            alloc.powers[group.users[active[k]].id] = wl.powers[k];
        }
    }
    finalize_allocation(group, alloc, prefactor);
    return alloc;
}

Allocation allocate_rational(const RelayGroup& group, Strategy strategy, double prefactor) {
    group.validate();
    Allocation alloc = make_base_allocation(group, strategy, prefactor);

    std::vector<size_t> active;
    std::vector<DemandCurve> curves;
    for (size_t i = 0; i < group.users.size(); ++i) {
        const auto& link = group.users[i].link;
        if (link.relay_dest_gain <= 0.0 || link.source_relay_snr <= 0.0) continue;
        LinkDerived d = derive(link);
        active.push_back(i);
        curves.push_back(strategy == Strategy::Af ? rational_demand_curve(d.af_a, d.af_b)
                                                  : rational_demand_curve(d.cf_x, d.cf_y));
    }

    if (!active.empty()) {
        WaterLevelSolution wl = solve_water_level(curves, group.total_power);
        alloc.water_level = wl.mu;
        alloc.slack = wl.slack;
        for (size_t k = 0; k < active.size(); ++k) {
            alloc.powers[group.users[active[k]].id] = wl.powers[k];
        }
    }
    finalize_allocation(group, alloc, prefactor);
    return alloc;
}

}  // namespace

std::string to_string(UserClass c) {
    switch (c) {
        case UserClass::HighPotential: return "HPU";
        case UserClass::LowPotential: return "LPU";
        case UserClass::Nonrelayed: return "NU";
    }
    return "?";
}

UserClass classify_user(const LinkBudget& link, double power, double /*water_level*/,
                        Strategy strategy) {
    if (strategy == Strategy::Direct) return UserClass::Nonrelayed;
    if (power <= kZeroPowerTol) return UserClass::Nonrelayed;
    if (strategy == Strategy::Rdf || strategy == Strategy::Ndf) {
        if (!df_eligible(link)) return UserClass::Nonrelayed;
        LinkDerived d = derive(link);
        double cap = strategy == Strategy::Rdf ? d.rdf_cap : d.ndf_cap;
        if (power >= cap - 1e-9 * std::max(cap, 1.0)) return UserClass::LowPotential;
    }
    return UserClass::HighPotential;
}

void finalize_allocation(const RelayGroup& group, Allocation& alloc, double prefactor) {
    alloc.sum_capacity = 0.0;
    for (const auto& u : group.users) {
        alloc.user_capacity[u.id] =
            user_capacity(u.link, alloc.user_strategy[u.id], alloc.powers[u.id], prefactor);
        alloc.classes[u.id] = classify_user(u.link, alloc.powers[u.id], alloc.water_level,
                                            alloc.user_strategy[u.id]);
        alloc.sum_capacity += alloc.user_capacity[u.id];
    }
}

Allocation allocate_direct(const RelayGroup& group, double prefactor) {
    group.validate();
    Allocation alloc = make_base_allocation(group, Strategy::Direct, prefactor);
    finalize_allocation(group, alloc, prefactor);
    return alloc;
}

Allocation allocate_rdf(const RelayGroup& group, double prefactor) {
    return allocate_df(group, Strategy::Rdf, prefactor);
}

Allocation allocate_ndf(const RelayGroup& group, double prefactor) {
    return allocate_df(group, Strategy::Ndf, prefactor);
}

Allocation allocate_af(const RelayGroup& group, double prefactor) {
    return allocate_rational(group, Strategy::Af, prefactor);
}

Allocation allocate_cf(const RelayGroup& group, double prefactor) {
    return allocate_rational(group, Strategy::Cf, prefactor);
}

}  // namespace relaywise
