#pragma once

#include <random>
#include <string>
#include <vector>

#include "relaywise/model.hpp"

namespace relaywise::testing {

// Reference link used throughout the unit tests.
inline LinkBudget ref_link() { return {1.0, 3.0, 1.0}; }

inline bool near_abs(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline RelayGroup single_user_group(const LinkBudget& link, double budget,
                                    const std::string& id = "u1") {
    return RelayGroup{"r1", budget, {{id, link}}};
}

inline LinkBudget random_link(std::mt19937& rng, double db_min = 0.0, double db_max = 20.0) {
    std::uniform_real_distribution<double> db(db_min, db_max);
    return LinkBudget{to_linear(db(rng)), to_linear(db(rng)), to_linear(db(rng))};
}

// A random group of 1-4 users with SNRs uniform in 0-20 dB and a budget
// log-uniform in [0.1, 100].
inline RelayGroup random_group(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> nd(1, 4);
    std::uniform_real_distribution<double> logb(std::log(0.1), std::log(100.0));
    RelayGroup g;
    g.id = "r" + std::to_string(seed);
    g.total_power = std::exp(logb(rng));
    int n = nd(rng);
    for (int i = 0; i < n; ++i) {
        g.users.push_back({"u" + std::to_string(i + 1), random_link(rng)});
    }
    return g;
}

inline LinkBudget random_df_eligible_link(std::mt19937& rng) {
    for (;;) {
        LinkBudget l = random_link(rng);
        if (df_eligible(l)) return l;
    }
}

// Users from the bundled four-user demo scenario (data/four_user_uplink.json).
inline const std::vector<SourceNode>& sample_users() {
    static const std::vector<SourceNode> users = {
        {"user1", {to_linear(12.25), to_linear(19.51), to_linear(11.84)}},
        {"user2", {to_linear(7.03), to_linear(16.45), to_linear(7.03)}},
        {"user3", {to_linear(9.03), to_linear(11.84), to_linear(18.06)}},
        {"user4", {to_linear(8.06), to_linear(9.03), to_linear(16.45)}},
    };
    return users;
}

inline RelayGroup sample_group(double budget) { return RelayGroup{"relay1", budget, sample_users()}; }

}  // namespace relaywise::testing
