#include "relaywise/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace relaywise {

namespace {

constexpr double kSwitchGain = 1e-12;  // minimum sum-capacity improvement to accept a switch

bool cap_active(double power, double cap) {
    return power >= cap - 1e-9 * std::max(cap, 1.0);
}

}  // namespace

void Partition::validate(const RelayGroup& group) const {
    if (ndf_set.size() + cf_set.size() != group.users.size()) {
        throw std::invalid_argument("partition does not cover the group");
    }
    for (const auto& u : group.users) {
        bool in_ndf = ndf_set.count(u.id) > 0;
        bool in_cf = cf_set.count(u.id) > 0;
        if (in_ndf == in_cf) {
            throw std::invalid_argument("user must be in exactly one partition set: " + u.id);
        }
    }
}

Allocation allocate_partition(const RelayGroup& group, const Partition& partition,
                              double prefactor) {
    group.validate();
    partition.validate(group);

    Allocation alloc;
    alloc.slack = group.total_power;
    for (const auto& u : group.users) {
        alloc.powers[u.id] = 0.0;
        alloc.user_strategy[u.id] =
            partition.ndf_set.count(u.id) ? Strategy::Ndf : Strategy::Cf;
    }

    std::vector<size_t> active;
    std::vector<DemandCurve> curves;
    for (size_t i = 0; i < group.users.size(); ++i) {
        const auto& u = group.users[i];
        LinkDerived d = derive(u.link);
        if (partition.ndf_set.count(u.id)) {
            if (!df_eligible(u.link)) continue;  // cap 0: zero power, direct capacity
            active.push_back(i);
            curves.push_back(linear_demand_curve(d.ndf_base, d.ndf_cap));
        } else {
            if (u.link.relay_dest_gain <= 0.0 || u.link.source_relay_snr <= 0.0) continue;
            active.push_back(i);
            curves.push_back(rational_demand_curve(d.cf_x, d.cf_y));
        }
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

double switch_cost(const LinkBudget& link) {
    if (!(link.source_relay_snr > link.direct_snr)) {
        throw std::invalid_argument("switch_cost is undefined for strict-CF users");
    }
    LinkDerived d = derive(link);
    if (!std::isfinite(d.thre2)) return kInf;
    return d.thre2 - d.ndf_cap;
}

HybridResult norss(const RelayGroup& group, double prefactor) {
    group.validate();
    HybridResult res;

    // Step 1: users whose direct link beats the relay link are CF no matter what.
    for (const auto& u : group.users) {
        if (u.link.direct_snr >= u.link.source_relay_snr) {
            res.partition.cf_set.insert(u.id);
            res.trace.push_back({"strict-cf", u.id, true, 0.0, 0.0});
        } else {
            res.partition.ndf_set.insert(u.id);
        }
    }

    // Step 2: solve the initial partition and freeze the NDF users whose
    // decodability constraint is inactive; less power can only come their way
    // after a switch, so NDF stays optimal for them.
    res.allocation = allocate_partition(group, res.partition, prefactor);
    res.trace.push_back({"initial-solve", "", true, 0.0, res.allocation.sum_capacity});

    std::set<std::string> unfrozen;
    for (const auto& uid : res.partition.ndf_set) {
        const auto& link = group.user(uid).link;
        if (df_eligible(link)) {
            double cap = derive(link).ndf_cap;
            if (!cap_active(res.allocation.powers.at(uid), cap)) {
                res.ndf_strict.insert(uid);
                continue;
            }
        }
        unfrozen.insert(uid);
    }

    // Step 3: greedy cheapest-switch NDF-to-CF moves.
    while (!unfrozen.empty()) {
        std::string pick;
        double best_cost = kInf;
        for (const auto& uid : unfrozen) {  // ordered: ties go to the lowest id
            double cost = switch_cost(group.user(uid).link);
            if (cost < best_cost) {
                best_cost = cost;
                pick = uid;
            }
        }
        if (pick.empty()) pick = *unfrozen.begin();

        Partition cand = res.partition;
        cand.ndf_set.erase(pick);
        cand.cf_set.insert(pick);
        Allocation cand_alloc = allocate_partition(group, cand, prefactor);

        TraceStep step{"switch", pick, false, res.allocation.sum_capacity,
                       cand_alloc.sum_capacity};
        if (cand_alloc.sum_capacity > res.allocation.sum_capacity + kSwitchGain) {
            step.accepted = true;
            res.partition = std::move(cand);
            res.allocation = std::move(cand_alloc);
        } else {
            res.ndf_strict.insert(pick);
        }
        res.trace.push_back(step);
        unfrozen.erase(pick);
    }
    return res;
}

HybridResult exhaustive_hybrid(const RelayGroup& group, double prefactor) {
    group.validate();

    std::vector<std::string> free_users;
    Partition base;
    for (const auto& u : group.users) {
        if (u.link.direct_snr >= u.link.source_relay_snr) {
            base.cf_set.insert(u.id);
        } else {
            free_users.push_back(u.id);
        }
    }
    if (free_users.size() > 20) {
        throw std::invalid_argument("too many users for exhaustive enumeration");
    }

    HybridResult best;
    bool have_best = false;
    const size_t m = free_users.size();
    for (size_t mask = 0; mask < (size_t{1} << m); ++mask) {
        Partition p = base;
        for (size_t b = 0; b < m; ++b) {
            if (mask & (size_t{1} << b)) {
                p.cf_set.insert(free_users[b]);
            } else {
                p.ndf_set.insert(free_users[b]);
            }
        }
        Allocation alloc = allocate_partition(group, p, prefactor);
        bool better = !have_best || alloc.sum_capacity > best.allocation.sum_capacity;
        if (!better && alloc.sum_capacity == best.allocation.sum_capacity) {
            // Tie-break: larger CF set, then lexicographically smaller CF set.
            if (p.cf_set.size() != best.partition.cf_set.size()) {
                better = p.cf_set.size() > best.partition.cf_set.size();
            } else {
                better = p.cf_set < best.partition.cf_set;
            }
        }
        if (better) {
            best.partition = std::move(p);
            best.allocation = std::move(alloc);
            have_best = true;
        }
    }
    best.trace.push_back({"exhaustive", "", true, 0.0, best.allocation.sum_capacity});
    return best;
}

}  // namespace relaywise
