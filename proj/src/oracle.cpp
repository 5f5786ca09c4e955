#include "relaywise/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace relaywise {

namespace {

double objective(const RelayGroup& group, const std::vector<Strategy>& strategies,
                 const std::vector<double>& powers, double prefactor) {
    double sum = 0.0;
    for (size_t i = 0; i < group.users.size(); ++i) {
        sum += user_capacity(group.users[i].link, strategies[i], powers[i], prefactor);
    }
    return sum;
}

std::vector<Strategy> resolve_assignment(const RelayGroup& group,
                                         const std::map<std::string, Strategy>& assignment) {
    std::vector<Strategy> out;
    out.reserve(group.users.size());
    for (const auto& u : group.users) {
        auto it = assignment.find(u.id);
        if (it == assignment.end()) {
            throw std::invalid_argument("assignment missing user: " + u.id);
        }
        out.push_back(it->second);
    }
    return out;
}

}  // namespace

int default_grid_resolution(int n_users) {
    if (n_users <= 2) return 1000;
    if (n_users == 3) return 200;
    return 60;
}

OracleReport grid_maximize(const RelayGroup& group,
                           const std::map<std::string, Strategy>& assignment, double budget,
                           double prefactor, int resolution) {
    group.validate();
    const size_t n = group.users.size();
    if (n > 4) throw std::invalid_argument("grid_maximize supports at most 4 users");
    if (!std::isfinite(budget) || budget < 0.0) throw std::invalid_argument("budget must be >= 0");
    if (resolution <= 0) resolution = default_grid_resolution(static_cast<int>(n));

    std::vector<Strategy> strategies = resolve_assignment(group, assignment);

    OracleReport report;
    report.grid_resolution = resolution;
    report.best_powers.assign(n, 0.0);
    report.best_sum_capacity = objective(group, strategies, report.best_powers, prefactor);
    if (budget == 0.0) return report;

    // Every per-user capacity is nondecreasing in its own power, so the
    // optimum lies on the face sum(p) = budget; enumerate its grid points.
    const double step = budget / resolution;
    std::vector<double> point(n, 0.0);
    std::function<void(size_t, int)> enumerate = [&](size_t idx, int remaining) {
        if (idx + 1 == n) {
            point[idx] = remaining * step;
            double val = objective(group, strategies, point, prefactor);
            if (val > report.best_sum_capacity) {
                report.best_sum_capacity = val;
                report.best_powers = point;
            }
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            point[idx] = k * step;
            enumerate(idx + 1, remaining - k);
        }
    };
    enumerate(0, resolution);

    // Coordinate-descent refinement: transfer power between user pairs with a
    // shrinking step until the grid gap is closed.
    if (n > 1) {
        std::vector<double>& p = report.best_powers;
        double h = step;
        const double h_floor = 1e-10 * budget;
        while (h > h_floor) {
            bool improved = false;
            for (size_t i = 0; i < n; ++i) {
                for (size_t j = 0; j < n; ++j) {
                    if (i == j || p[j] <= 0.0) continue;
                    double delta = std::min(h, p[j]);
                    std::vector<double> q = p;
                    q[i] += delta;
                    q[j] -= delta;
                    double val = objective(group, strategies, q, prefactor);
                    if (val > report.best_sum_capacity) {
                        report.best_sum_capacity = val;
                        p = std::move(q);
                        improved = true;
                    }
                }
            }
            if (!improved) h *= 0.5;
        }
        report.refined = true;
    }
    return report;
}

OracleReport kkt_check(const RelayGroup& group, const Allocation& allocation, double fd_step) {
    group.validate();
    const double budget = group.total_power;
    const size_t n = group.users.size();

    if (fd_step != 0.0 && (!(fd_step > 0.0) || fd_step > 1e-2 * budget)) {
        throw std::invalid_argument("fd_step outside (0, 1e-2 * budget]");
    }
    if (fd_step == 0.0) fd_step = 1e-6 * budget;

    OracleReport report;
    report.best_sum_capacity = allocation.sum_capacity;

    const double p_tol = 1e-9 * std::max(budget, 1.0);
    double spent = 0.0;
    std::vector<double> powers(n), caps(n, kInf), marginals(n, 0.0);
    std::vector<bool> at_zero(n, false), at_cap(n, false);

    for (size_t i = 0; i < n; ++i) {
        const auto& u = group.users[i];
        powers[i] = allocation.powers.at(u.id);
        spent += powers[i];
        if (powers[i] < -1e-12) {
            report.kkt_violations.emplace_back(u.id, "negative power");
        }
        Strategy strat = allocation.user_strategy.at(u.id);
        if ((strat == Strategy::Rdf || strat == Strategy::Ndf) && df_eligible(u.link)) {
            LinkDerived d = derive(u.link);
            caps[i] = strat == Strategy::Rdf ? d.rdf_cap : d.ndf_cap;
            if (powers[i] > caps[i] + 1e-9 * std::max(caps[i], 1.0)) {
                report.kkt_violations.emplace_back(u.id, "power exceeds decodability cap");
            }
        }
        at_zero[i] = powers[i] <= p_tol;
        at_cap[i] = std::isfinite(caps[i]) &&
                    powers[i] >= caps[i] - 1e-9 * std::max(caps[i], 1.0);
    }
    report.best_powers = powers;

    if (spent > budget + p_tol) {
        report.kkt_violations.emplace_back("", "total power exceeds budget");
    }
    const double slack = budget - spent;

    if (budget == 0.0) return report;  // vacuous stationarity

    // One-sided differences at the boundaries keep the min() kink out of the
    // marginal-rate estimate.
    auto marginal = [&](size_t i) {
        const auto& u = group.users[i];
        Strategy strat = allocation.user_strategy.at(u.id);
        auto cap_at = [&](double p) { return user_capacity(u.link, strat, p, 1.0); };
        double p = std::max(powers[i], 0.0);
        double lo = p - fd_step, hi = p + fd_step;
        if (at_zero[i]) {
            lo = 0.0;
            hi = fd_step;
        } else if (at_cap[i]) {
            hi = std::min(p, caps[i]);
            lo = hi - fd_step;
        }
        if (lo < 0.0) lo = 0.0;
        return (cap_at(hi) - cap_at(lo)) / (hi - lo);
    };
    for (size_t i = 0; i < n; ++i) marginals[i] = marginal(i);

    std::vector<size_t> interior;
    for (size_t i = 0; i < n; ++i) {
        if (!at_zero[i] && !at_cap[i]) interior.push_back(i);
    }

    const double slack_tol = 1e-6 * std::max(budget, 1.0);
    if (!interior.empty()) {
        double lambda = 0.0;
        for (size_t i : interior) lambda += marginals[i];
        lambda /= static_cast<double>(interior.size());
        const double eq_tol = 1e-4 * std::max(lambda, 1e-12);
        const double ineq_tol = 1e-3 * std::max(lambda, 1e-12);

        for (size_t i : interior) {
            if (std::abs(marginals[i] - lambda) > eq_tol) {
                report.kkt_violations.emplace_back(group.users[i].id,
                                                   "interior marginal rate not equalized");
            }
        }
        for (size_t i = 0; i < n; ++i) {
            if (at_zero[i] && marginals[i] > lambda + ineq_tol) {
                report.kkt_violations.emplace_back(group.users[i].id,
                                                   "zero-power user has marginal above water level");
            }
            if (at_cap[i] && !at_zero[i] && marginals[i] < lambda - ineq_tol) {
                report.kkt_violations.emplace_back(group.users[i].id,
                                                   "capped user has marginal below water level");
            }
        }
        if (slack > slack_tol) {
            report.kkt_violations.emplace_back("", "budget slack with interior users");
        }
    } else if (slack > slack_tol) {
        // Budget inactive: nothing may want more power.
        for (size_t i = 0; i < n; ++i) {
            if (!at_cap[i] && marginals[i] > 1e-9) {
                report.kkt_violations.emplace_back(group.users[i].id,
                                                   "uncapped user starved despite budget slack");
            }
        }
    }
    return report;
}

}  // namespace relaywise
