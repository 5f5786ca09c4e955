#include "relaywise/scenario.hpp"

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace relaywise {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ScenarioError(where + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) fail(where, "unknown key '" + it.key() + "'");
    }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) fail(where, "missing field '" + key + "'");
    if (!obj[key].is_number()) fail(where, "field '" + key + "' must be a number");
    return obj[key].get<double>();
}

double read_snr(const json& user, const std::string& stem, bool linear_units,
                const std::string& where) {
    const std::string key = stem + (linear_units ? "_linear" : "_db");
    double v = require_number(user, key, where);
    if (linear_units) {
        if (v < 0.0) fail(where, "field '" + key + "' must be >= 0");
        return v;
    }
    return to_linear(v);
}

}  // namespace

std::string fingerprint_of(const std::string& content) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : content) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Scenario parse_scenario(const std::string& text, const std::string& name) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(name + ": " + e.what());
    }
    if (!doc.is_object()) fail(name, "top level must be an object");
    reject_unknown_keys(doc, {"units", "user_count", "prefactor", "relays", "description"}, name);

    bool linear_units = false;
    if (doc.contains("units")) {
        std::string units = doc["units"].is_string() ? doc["units"].get<std::string>() : "";
        if (units == "linear") {
            linear_units = true;
        } else if (units != "db") {
            fail(name, "units must be 'db' or 'linear'");
        }
    }

    if (!doc.contains("relays") || !doc["relays"].is_array() || doc["relays"].empty()) {
        fail(name, "scenario needs a non-empty 'relays' array");
    }

    Scenario sc;
    sc.fingerprint = fingerprint_of(text);
    int total_users = 0;
    for (size_t r = 0; r < doc["relays"].size(); ++r) {
        const json& jr = doc["relays"][r];
        const std::string rwhere = name + ": relays[" + std::to_string(r) + "]";
        if (!jr.is_object()) fail(rwhere, "must be an object");
        reject_unknown_keys(jr, {"id", "total_power", "users"}, rwhere);

        RelayGroup group;
        group.id = jr.contains("id") ? jr["id"].get<std::string>() : "relay" + std::to_string(r + 1);
        group.total_power = jr.contains("total_power") ? require_number(jr, "total_power", rwhere) : 0.0;
        if (group.total_power < 0.0) fail(rwhere, "total_power must be >= 0");

        if (!jr.contains("users") || !jr["users"].is_array() || jr["users"].empty()) {
            fail(rwhere, "relay has no users");
        }
        for (size_t u = 0; u < jr["users"].size(); ++u) {
            const json& ju = jr["users"][u];
            const std::string uwhere = rwhere + ".users[" + std::to_string(u) + "]";
            if (!ju.is_object()) fail(uwhere, "must be an object");
            const std::string suffix = linear_units ? "_linear" : "_db";
            reject_unknown_keys(ju,
                                {"id", "direct_snr" + suffix, "source_relay_snr" + suffix,
                                 "relay_dest_gain" + suffix},
                                uwhere);
            SourceNode node;
            node.id = ju.contains("id") ? ju["id"].get<std::string>()
                                        : "user" + std::to_string(++total_users);
            node.link.direct_snr = read_snr(ju, "direct_snr", linear_units, uwhere);
            node.link.source_relay_snr = read_snr(ju, "source_relay_snr", linear_units, uwhere);
            node.link.relay_dest_gain = read_snr(ju, "relay_dest_gain", linear_units, uwhere);
            group.users.push_back(std::move(node));
        }
        sc.relays.push_back(std::move(group));
    }

    int counted = 0;
    for (const auto& g : sc.relays) counted += static_cast<int>(g.users.size());
    sc.user_count = doc.contains("user_count") ? doc["user_count"].get<int>() : counted;
    if (sc.user_count <= 0) fail(name, "user_count must be positive");
    sc.prefactor = doc.contains("prefactor") ? doc["prefactor"].get<double>()
                                             : 1.0 / (2.0 * sc.user_count);

    try {
        sc.validate();
    } catch (const std::invalid_argument& e) {
        fail(name, e.what());
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

}  // namespace relaywise
