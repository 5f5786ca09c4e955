#include "relaywise/model.hpp"

#include <algorithm>
#include <set>

namespace relaywise {

namespace {

double log2_1p(double x) { return std::log2(1.0 + x); }

void require_nonneg_power(double p) {
    if (p < 0.0 || !std::isfinite(p)) {
        throw std::invalid_argument("relay power must be finite and >= 0");
    }
}

}  // namespace

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Direct: return "direct";
        case Strategy::Rdf: return "rdf";
        case Strategy::Ndf: return "ndf";
        case Strategy::Af: return "af";
        case Strategy::Cf: return "cf";
    }
    return "?";
}

void LinkBudget::validate() const {
    for (double v : {direct_snr, source_relay_snr, relay_dest_gain}) {
        if (!std::isfinite(v) || v < 0.0) {
            throw std::invalid_argument("link SNRs and gains must be finite and >= 0");
        }
    }
}

double capacity_direct(const LinkBudget& link, double prefactor) {
    return prefactor * log2_1p(link.direct_snr);
}

double df_upper_bound(const LinkBudget& link, double prefactor) {
    return prefactor * log2_1p(link.source_relay_snr);
}

double capacity_rdf(const LinkBudget& link, double relay_power, double prefactor) {
    require_nonneg_power(relay_power);
    double combined = prefactor * log2_1p(link.direct_snr + relay_power * link.relay_dest_gain);
    return std::min(combined, df_upper_bound(link, prefactor));
}

double capacity_ndf(const LinkBudget& link, double relay_power, double prefactor) {
    require_nonneg_power(relay_power);
    double two_hop =
        prefactor * (log2_1p(link.direct_snr) + log2_1p(relay_power * link.relay_dest_gain));
    return std::min(two_hop, df_upper_bound(link, prefactor));
}

double capacity_af(const LinkBudget& link, double relay_power, double prefactor) {
    require_nonneg_power(relay_power);
    double rg = relay_power * link.relay_dest_gain;
    double af_term = 0.0;
    if (rg > 0.0 && link.source_relay_snr > 0.0) {
        af_term = link.source_relay_snr * rg / (link.source_relay_snr + rg + 1.0);
    }
    return prefactor * log2_1p(link.direct_snr + af_term);
}

double cf_compression_noise(const LinkBudget& link, double relay_power) {
    require_nonneg_power(relay_power);
    double rg = relay_power * link.relay_dest_gain;
    if (rg <= 0.0) return kInf;
    return (link.source_relay_snr + link.direct_snr + 1.0) / (rg * (link.direct_snr + 1.0));
}

double capacity_cf(const LinkBudget& link, double relay_power, double prefactor) {
    require_nonneg_power(relay_power);
    double sigma = cf_compression_noise(link, relay_power);
    if (std::isinf(sigma)) return capacity_direct(link, prefactor);
    return prefactor * log2_1p(link.direct_snr + link.source_relay_snr / (1.0 + sigma));
}

double user_capacity(const LinkBudget& link, Strategy strategy, double relay_power,
                     double prefactor) {
    switch (strategy) {
        case Strategy::Direct:
            return capacity_direct(link, prefactor);
        case Strategy::Rdf:
            if (!df_eligible(link)) return capacity_direct(link, prefactor);
            return capacity_rdf(link, relay_power, prefactor);
        case Strategy::Ndf:
            if (!df_eligible(link)) return capacity_direct(link, prefactor);
            return capacity_ndf(link, relay_power, prefactor);
        case Strategy::Af:
            return capacity_af(link, relay_power, prefactor);
        case Strategy::Cf:
            return capacity_cf(link, relay_power, prefactor);
    }
    throw std::logic_error("unknown strategy");
}

LinkDerived derive(const LinkBudget& link, double prefactor) {
    link.validate();
    const double sd = link.direct_snr;
    const double sr = link.source_relay_snr;
    const double g = link.relay_dest_gain;

    LinkDerived d;
    d.df_upper = df_upper_bound(link, prefactor);

    if (g > 0.0) {
        d.rdf_base = (1.0 + sd) / g;
        d.ndf_base = 1.0 / g;
        d.rdf_cap = std::max(0.0, (sr - sd) / g);
        d.ndf_cap = std::max(0.0, (sr - sd) / (g * (1.0 + sd)));
        d.af_a = sr * g / ((sr + 1.0) * (1.0 + sd));
        d.af_b = g / (sr + 1.0);
        d.cf_x = sr * g / (sr + sd + 1.0);
        d.cf_y = g * (1.0 + sd) / (sr + sd + 1.0);
        if (sd > 0.0) {
            d.thre2 = std::max(0.0, (sr + sd + 1.0) * (sr - sd) / (g * sd * (1.0 + sd)));
        }
        // sd == 0 leaves thre2 at +inf: CF never matches the DF bound at
        // finite power when there is no direct link.
    } else {
        d.rdf_base = kInf;
        d.ndf_base = kInf;
        d.rdf_cap = 0.0;
        d.ndf_cap = 0.0;
    }
    return d;
}

void RelayGroup::validate() const {
    if (!std::isfinite(total_power) || total_power < 0.0) {
        throw std::invalid_argument("relay total_power must be finite and >= 0");
    }
    if (users.empty()) throw std::invalid_argument("relay has no users");
    std::set<std::string> ids;
    for (const auto& u : users) {
        u.link.validate();
        if (!ids.insert(u.id).second) {
            throw std::invalid_argument("duplicate user id: " + u.id);
        }
    }
}

const SourceNode& RelayGroup::user(const std::string& user_id) const {
    for (const auto& u : users) {
        if (u.id == user_id) return u;
    }
    throw std::invalid_argument("unknown user id: " + user_id);
}

void Scenario::validate() const {
    if (relays.empty()) throw std::invalid_argument("scenario has no relays");
    if (user_count <= 0) throw std::invalid_argument("user_count must be positive");
    if (!(prefactor > 0.0) || !std::isfinite(prefactor)) {
        throw std::invalid_argument("prefactor must be positive");
    }
    std::set<std::string> uids, rids;
    for (const auto& r : relays) {
        r.validate();
        if (!rids.insert(r.id).second) throw std::invalid_argument("duplicate relay id: " + r.id);
        for (const auto& u : r.users) {
            if (!uids.insert(u.id).second) {
                throw std::invalid_argument("duplicate user id: " + u.id);
            }
        }
    }
}

}  // namespace relaywise
