#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace relaywise {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Converts a dB value to a linear power ratio.
inline double to_linear(double value_db) { return std::pow(10.0, value_db / 10.0); }

/// Relaying strategy for a single user.
enum class Strategy { Direct, Rdf, Ndf, Af, Cf };

std::string to_string(Strategy s);

/// The SNR triple characterizing one source node's links, all linear ratios:
/// received direct-link SNR, source-to-relay SNR, and the normalized
/// relay-to-destination channel gain.
struct LinkBudget {
    double direct_snr = 0.0;
    double source_relay_snr = 0.0;
    double relay_dest_gain = 0.0;

    void validate() const;
};

/// Per-link derived constants: decode-and-forward ceiling, water-fill bases,
/// AF/CF curve coefficients and the NDF-to-CF crossover threshold.
///
/// df_upper carries the prefactor passed to derive(); everything else is in
/// power units or dimensionless.
struct LinkDerived {
    double df_upper = 0.0;
    double rdf_base = kInf;
    double rdf_cap = 0.0;
    double ndf_base = kInf;
    double ndf_cap = 0.0;
    double af_a = 0.0;
    double af_b = 0.0;
    double cf_x = 0.0;
    double cf_y = 0.0;
    double thre2 = kInf;
};

/// True when decode-and-forward relaying can improve on the direct link:
/// the relay must hear the source better than the destination does, and
/// must be able to reach the destination at all.
inline bool df_eligible(const LinkBudget& link) {
    return link.source_relay_snr > link.direct_snr && link.relay_dest_gain > 0.0;
}

LinkDerived derive(const LinkBudget& link, double prefactor = 0.5);

// Per-user capacities in bits per channel use. relay_power is the power the
// relay spends on this user; prefactor is the 1/(2K) channel-share factor.
double capacity_direct(const LinkBudget& link, double prefactor);
double df_upper_bound(const LinkBudget& link, double prefactor);
double capacity_rdf(const LinkBudget& link, double relay_power, double prefactor);
double capacity_ndf(const LinkBudget& link, double relay_power, double prefactor);
double capacity_af(const LinkBudget& link, double relay_power, double prefactor);
double capacity_cf(const LinkBudget& link, double relay_power, double prefactor);

/// Variance of the Wyner-Ziv compression noise at the relay. Returns +inf
/// when the relay spends no power (CF then degenerates to the direct link).
double cf_compression_noise(const LinkBudget& link, double relay_power);

/// Capacity of one user under the given strategy. DF strategies fall back to
/// the direct-link capacity for DF-ineligible users (they are never relayed,
/// so the decodability ceiling does not apply).
double user_capacity(const LinkBudget& link, Strategy strategy, double relay_power,
                     double prefactor);

struct SourceNode {
    std::string id;
    LinkBudget link;
};

/// One relay with its total power budget and the users it assists.
struct RelayGroup {
    std::string id;
    double total_power = 0.0;
    std::vector<SourceNode> users;

    void validate() const;
    const SourceNode& user(const std::string& user_id) const;
};

struct Scenario {
    std::vector<RelayGroup> relays;
    int user_count = 0;
    double prefactor = 0.0;
    std::string fingerprint;

    void validate() const;
};

}  // namespace relaywise
