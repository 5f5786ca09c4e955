#include "relaywise/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "relaywise/model.hpp"

namespace relaywise {

namespace {

double clamped_demand(const DemandCurve& c, double mu) {
    double d = c.demand(mu);
    if (!(d >= 0.0)) d = 0.0;
    return std::min(d, c.cap);
}

double total_demand(std::span<const DemandCurve> curves, double mu) {
    double sum = 0.0;
    for (const auto& c : curves) sum += clamped_demand(c, mu);
    return sum;
}

// Defensive: a non-monotone curve breaks the bisection silently, so sample
// 16 log-spaced points and insist on nonincreasing demand.
void check_monotone(const DemandCurve& c) {
    if (!(c.zero_threshold > 0.0)) return;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 16; ++k) {
        double mu = c.zero_threshold * std::pow(10.0, -6.0 + 6.0 * k / 15.0);
        double d = clamped_demand(c, mu);
        if (d > prev * (1.0 + 1e-9) + 1e-12) {
            throw std::invalid_argument("demand curve is not nonincreasing in mu");
        }
        prev = d;
    }
}

}  // namespace

WaterLevelSolution solve_water_level(std::span<const DemandCurve> curves, double budget,
                                     double rel_tol) {
    if (curves.empty()) throw std::invalid_argument("empty curve list");
    if (!std::isfinite(budget) || budget < 0.0) throw std::invalid_argument("budget must be >= 0");
    if (!(rel_tol > 0.0) || rel_tol > 1e-3) throw std::invalid_argument("rel_tol out of range");
    for (const auto& c : curves) check_monotone(c);

    const size_t n = curves.size();
    double mu_zero_max = 0.0;
    for (const auto& c : curves) mu_zero_max = std::max(mu_zero_max, c.zero_threshold);

    WaterLevelSolution sol;
    sol.powers.assign(n, 0.0);

    if (budget == 0.0 || mu_zero_max == 0.0) {
        sol.mu = mu_zero_max;
        sol.slack = budget;
        return sol;
    }

    // Saturated demand: what each user would take with the constraint gone.
    double saturated_total = 0.0;
    std::vector<double> saturated(n);
    for (size_t i = 0; i < n; ++i) {
        double mu_tiny = std::max(curves[i].zero_threshold, 1.0) * 1e-18;
        saturated[i] = clamped_demand(curves[i], mu_tiny);
        saturated_total += saturated[i];
    }
    if (saturated_total <= budget) {
        sol.mu = 0.0;
        sol.powers = saturated;
        sol.slack = budget - saturated_total;
        return sol;
    }

    double hi = (1.0 + 1e-12) * mu_zero_max;  // total demand 0 here
    double lo = hi * 1e-18;
    while (total_demand(curves, lo) < budget && lo > 1e-300) lo *= 0.5;

    const double tol = rel_tol * std::max(budget, 1.0);
    double mu = hi;
    for (int it = 0; it < 200; ++it) {
        mu = 0.5 * (lo + hi);
        double t = total_demand(curves, mu);
        if (std::abs(t - budget) <= tol) break;
        if (t > budget) {
            lo = mu;
        } else {
            hi = mu;
        }
    }

    sol.mu = mu;
    double spent = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sol.powers[i] = clamped_demand(curves[i], mu);
        spent += sol.powers[i];
    }

    // The bisection stops within tol of the budget; spend the residue exactly
    // so the constraint binds. Overshoot shrinks everyone proportionally,
    // undershoot tops up the funded users first, then the next user in line.
    if (spent > budget && spent > 0.0) {
        double scale = budget / spent;
        for (double& p : sol.powers) p *= scale;
        spent = budget;
    }
    double deficit = budget - spent;
    if (deficit > 0.0) {
        std::vector<size_t> order(n);
        for (size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            if ((sol.powers[a] > 0.0) != (sol.powers[b] > 0.0)) return sol.powers[a] > 0.0;
            return curves[a].zero_threshold > curves[b].zero_threshold;
        });
        for (size_t i : order) {
            if (deficit <= 0.0) break;
            double headroom = curves[i].cap - sol.powers[i];
            if (!(headroom > 0.0)) continue;
            double add = std::min(headroom, deficit);
            sol.powers[i] += add;
            deficit -= add;
        }
    }
    sol.slack = std::max(0.0, deficit);
    return sol;
}

DemandCurve linear_demand_curve(double base, double cap, double gain) {
    if (!(gain > 0.0) || !std::isfinite(base) || base < 0.0) {
        throw std::invalid_argument("linear_demand_curve: bad base or gain");
    }
    DemandCurve c;
    c.cap = std::max(cap, 0.0);
    c.zero_threshold = base > 0.0 ? 1.0 / (gain * base) : kInf;
    c.demand = [base, gain](double mu) {
        if (!(mu > 0.0)) return kInf;
        return std::max(0.0, 1.0 / (gain * mu) - base);
    };
    if (c.cap == 0.0) c.zero_threshold = 0.0;
    return c;
}

DemandCurve rational_demand_curve(double a, double b) {
    if (!(a > 0.0) || b < 0.0) throw std::invalid_argument("rational_demand_curve: need a > 0, b >= 0");
    DemandCurve c;
    c.cap = kInf;
    c.zero_threshold = a;
    if (b < 1e-12 * a) {
        // Relay adjacent to the source: the curve degenerates to a plain
        // water-fill with base 1/a.
        c.demand = [a](double mu) {
            if (!(mu > 0.0)) return kInf;
            return std::max(0.0, 1.0 / mu - 1.0 / a);
        };
        return c;
    }
    const double r = a / b;
    c.demand = [a, b, r](double mu) {
        if (!(mu > 0.0)) return kInf;
        if (mu >= a) return 0.0;
        // Rationalized form of (-(r+2) + sqrt(r^2 + (4a/mu)(1+r))) / (2(a+b)):
        // stable when mu is close to a.
        double s = std::sqrt(r * r + (4.0 * a / mu) * (1.0 + r));
        return 4.0 * (1.0 + r) * (a / mu - 1.0) / ((s + r + 2.0) * 2.0 * (a + b));
    };
    return c;
}

WaterLevelSolution bounded_waterfill(std::span<const double> bases, std::span<const double> caps,
                                     std::span<const double> gains, double budget) {
    const size_t n = bases.size();
    if (n == 0) throw std::invalid_argument("empty curve list");
    if (caps.size() != n || gains.size() != n) throw std::invalid_argument("misaligned lists");
    if (!std::isfinite(budget) || budget < 0.0) throw std::invalid_argument("budget must be >= 0");

    std::vector<double> w0(n), w1(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(gains[i] > 0.0)) throw std::invalid_argument("gains must be positive");
        if (!std::isfinite(bases[i]) || bases[i] < 0.0) throw std::invalid_argument("bad base");
        if (caps[i] < 0.0) throw std::invalid_argument("bad cap");
        w0[i] = gains[i] * bases[i];
        w1[i] = std::isfinite(caps[i]) ? gains[i] * (bases[i] + caps[i]) : kInf;
    }

    auto power_at = [&](double w, size_t i) {
        return std::clamp((w - w0[i]) / gains[i], 0.0, caps[i]);
    };
    auto total_at = [&](double w) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += power_at(w, i);
        return s;
    };

    WaterLevelSolution sol;
    sol.powers.assign(n, 0.0);

    if (budget == 0.0) {
        double w0_min = *std::min_element(w0.begin(), w0.end());
        sol.mu = w0_min > 0.0 ? 1.0 / w0_min : kInf;
        sol.slack = 0.0;
        return sol;
    }

    bool any_infinite_cap = false;
    double cap_total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        if (std::isfinite(caps[i])) {
            cap_total += caps[i];
        } else {
            any_infinite_cap = true;
        }
    }
    if (!any_infinite_cap && cap_total <= budget) {
        sol.mu = 0.0;
        for (size_t i = 0; i < n; ++i) sol.powers[i] = caps[i];
        sol.slack = budget - cap_total;
        return sol;
    }

    std::vector<double> bp;
    bp.reserve(2 * n);
    for (size_t i = 0; i < n; ++i) {
        bp.push_back(w0[i]);
        if (std::isfinite(w1[i])) bp.push_back(w1[i]);
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

    double w_star = -1.0;
    for (size_t k = 0; k + 1 < bp.size() && w_star < 0.0; ++k) {
        double ta = total_at(bp[k]);
        double tb = total_at(bp[k + 1]);
        if (budget <= tb) {
            w_star = tb > ta ? bp[k] + (budget - ta) * (bp[k + 1] - bp[k]) / (tb - ta) : bp[k];
        }
    }
    if (w_star < 0.0) {
        // Beyond the last breakpoint only uncapped users keep absorbing.
        double w_last = bp.back();
        double t_last = total_at(w_last);
        double slope = 0.0;
        for (size_t i = 0; i < n; ++i) {
            if (!std::isfinite(w1[i])) slope += 1.0 / gains[i];
        }
        if (slope <= 0.0) throw std::logic_error("waterfill scan failed");  // unreachable
        w_star = w_last + (budget - t_last) / slope;
    }

    sol.mu = 1.0 / w_star;
    double spent = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sol.powers[i] = power_at(w_star, i);
        spent += sol.powers[i];
    }
    sol.slack = std::max(0.0, budget - spent);
    return sol;
}

WaterLevelSolution bounded_waterfill(std::span<const double> bases, std::span<const double> caps,
                                     double budget) {
    std::vector<double> gains(bases.size(), 1.0);
    return bounded_waterfill(bases, caps, gains, budget);
}

}  // namespace relaywise
