#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "relaywise/allocators.hpp"
#include "relaywise/oracle.hpp"

using namespace relaywise;
using namespace relaywise::testing;

namespace {

RelayGroup two_user_df_group(double budget) {
    return RelayGroup{"r1",
                      budget,
                      {{"u1", {0.0, 3.0, 1.0}}, {"u2", {1.0, 7.0, 1.0}}}};
}

std::map<std::string, Strategy> uniform_assignment(const RelayGroup& g, Strategy s) {
    std::map<std::string, Strategy> a;
    for (const auto& u : g.users) a[u.id] = s;
    return a;
}

}  // namespace

TEST_CASE("RDF water-fill, budget 4: equal capacities") {
    Allocation a = allocate_rdf(two_user_df_group(4.0), 0.25);
    CHECK(a.powers.at("u1") == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(a.powers.at("u2") == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(a.classes.at("u1") == UserClass::HighPotential);
    CHECK(a.classes.at("u2") == UserClass::HighPotential);
    // equal relay-to-destination gains: every high-potential user ends up at
    // the same capacity
    CHECK(a.user_capacity.at("u1") == doctest::Approx(0.25 * std::log2(3.5)).epsilon(1e-12));
    CHECK(a.user_capacity.at("u2") == doctest::Approx(a.user_capacity.at("u1")).epsilon(1e-12));
}

TEST_CASE("RDF water-fill, budget 8: ceiling binds") {
    Allocation a = allocate_rdf(two_user_df_group(8.0), 0.25);
    CHECK(a.powers.at("u1") == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(a.powers.at("u2") == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(a.classes.at("u1") == UserClass::LowPotential);
    CHECK(a.classes.at("u2") == UserClass::HighPotential);
    CHECK(a.user_capacity.at("u1") == doctest::Approx(0.25 * std::log2(4.0)));
}

TEST_CASE("RDF ineligible user stays on the direct link") {
    RelayGroup g = single_user_group({3.0, 2.0, 1.0}, 100.0);
    Allocation a = allocate_rdf(g, 0.5);
    CHECK(a.powers.at("u1") == 0.0);
    CHECK(a.classes.at("u1") == UserClass::Nonrelayed);
    CHECK(a.user_capacity.at("u1") == doctest::Approx(0.5 * std::log2(4.0)));
    CHECK(a.slack == doctest::Approx(100.0));
}

TEST_CASE("NDF water-fill, budget 4: symmetric bases") {
    Allocation a = allocate_ndf(two_user_df_group(4.0), 0.25);
    CHECK(a.powers.at("u1") == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a.powers.at("u2") == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a.classes.at("u1") == UserClass::HighPotential);
    CHECK(a.classes.at("u2") == UserClass::HighPotential);
}

TEST_CASE("NDF water-fill, budget 8: both capped, slack remains") {
    Allocation a = allocate_ndf(two_user_df_group(8.0), 0.25);
    CHECK(a.powers.at("u1") == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(a.powers.at("u2") == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(a.slack == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a.classes.at("u1") == UserClass::LowPotential);
    CHECK(a.classes.at("u2") == UserClass::LowPotential);
    CHECK(a.user_capacity.at("u1") == doctest::Approx(0.25 * std::log2(4.0)));
    CHECK(a.user_capacity.at("u2") == doctest::Approx(0.25 * std::log2(8.0)));
}

TEST_CASE("AF single user absorbs the whole budget") {
    Allocation a = allocate_af(single_user_group(ref_link(), 7.0), 0.5);
    CHECK(a.powers.at("u1") == doctest::Approx(7.0).epsilon(1e-8));
    CHECK(a.classes.at("u1") == UserClass::HighPotential);
}

TEST_CASE("AF matches the grid oracle on sample users 3 and 4") {
    RelayGroup g{"r1", 10.0, {sample_users()[2], sample_users()[3]}};
    Allocation a = allocate_af(g, 0.25);
    OracleReport r = grid_maximize(g, uniform_assignment(g, Strategy::Af), 10.0, 0.25);
    CHECK(a.sum_capacity == doctest::Approx(r.best_sum_capacity).epsilon(1e-4));
}

TEST_CASE("CF single user, large budgets") {
    Allocation a = allocate_cf(single_user_group(ref_link(), 10.0), 0.5);
    CHECK(a.powers.at("u1") == doctest::Approx(10.0).epsilon(1e-8));
    CHECK(a.sum_capacity == doctest::Approx(0.5 * std::log2(4.4)).epsilon(1e-8));

    Allocation zero = allocate_cf(single_user_group(ref_link(), 0.0), 0.5);
    CHECK(zero.powers.at("u1") == 0.0);
    CHECK(zero.sum_capacity == doctest::Approx(0.5));
}

TEST_CASE("classify_user") {
    CHECK(classify_user(ref_link(), 1.0, 0.5, Strategy::Ndf) == UserClass::LowPotential);
    CHECK(classify_user(ref_link(), 0.5, 0.4, Strategy::Rdf) == UserClass::HighPotential);
    CHECK(classify_user({3.0, 2.0, 1.0}, 0.0, 0.1, Strategy::Rdf) == UserClass::Nonrelayed);
    CHECK(classify_user(ref_link(), 0.0, 0.1, Strategy::Af) == UserClass::Nonrelayed);
    CHECK(classify_user(ref_link(), 2.0, 0.1, Strategy::Af) == UserClass::HighPotential);
}

TEST_CASE("dominance: NDF >= RDF and CF >= AF on random groups") {
    for (unsigned seed = 1; seed <= 60; ++seed) {
        RelayGroup g = random_group(seed);
        double pf = 1.0 / (2.0 * g.users.size());
        CHECK(allocate_ndf(g, pf).sum_capacity >= allocate_rdf(g, pf).sum_capacity - 1e-9);
        CHECK(allocate_cf(g, pf).sum_capacity >= allocate_af(g, pf).sum_capacity - 1e-9);
    }
}

TEST_CASE("sum capacity is nondecreasing in budget for every strategy") {
    RelayGroup g = sample_group(0.0);
    double prev[4] = {0.0, 0.0, 0.0, 0.0};
    for (double b : {0.0, 0.01, 0.1, 0.5, 1.0, 5.0, 20.0, 100.0, 1000.0}) {
        g.total_power = b;
        double vals[4] = {allocate_rdf(g, 0.125).sum_capacity,
                          allocate_ndf(g, 0.125).sum_capacity,
                          allocate_af(g, 0.125).sum_capacity,
                          allocate_cf(g, 0.125).sum_capacity};
        for (int i = 0; i < 4; ++i) {
            CHECK(vals[i] >= prev[i] - 1e-12);
            prev[i] = vals[i];
        }
    }
}

TEST_CASE("saturation at very large budgets") {
    RelayGroup g = sample_group(0.0);
    double caps_total = 0.0;
    for (const auto& u : g.users) caps_total += derive(u.link).rdf_cap;
    g.total_power = 1e4 * caps_total;

    double df_sum = 0.0;
    for (const auto& u : g.users) df_sum += df_upper_bound(u.link, 0.125);

    CHECK(allocate_rdf(g, 0.125).sum_capacity == doctest::Approx(df_sum).epsilon(1e-9));
    CHECK(allocate_ndf(g, 0.125).sum_capacity == doctest::Approx(df_sum).epsilon(1e-9));

    double af_bound = 0.0;
    for (const auto& u : g.users) {
        af_bound += 0.125 * std::log2(1.0 + u.link.direct_snr + u.link.source_relay_snr);
    }
    double af_sum = allocate_af(g, 0.125).sum_capacity;
    double cf_sum = allocate_cf(g, 0.125).sum_capacity;
    CHECK(af_sum < af_bound);
    CHECK(cf_sum < af_bound + 1e-12);
    CHECK(af_sum == doctest::Approx(af_bound).epsilon(1e-3));
    CHECK(cf_sum == doctest::Approx(af_bound).epsilon(1e-3));
}

TEST_CASE("equal-gain corollary: RDF equal capacities, NDF equal increments") {
    std::mt19937 rng(31);
    for (int t = 0; t < 25; ++t) {
        double gain = to_linear(std::uniform_real_distribution<double>(0.0, 15.0)(rng));
        RelayGroup g;
        g.id = "r";
        g.total_power = std::uniform_real_distribution<double>(0.5, 20.0)(rng);
        int n = 2 + static_cast<int>(rng() % 3);
        for (int i = 0; i < n; ++i) {
            LinkBudget l = random_link(rng);
            l.relay_dest_gain = gain;
            g.users.push_back({"u" + std::to_string(i + 1), l});
        }
        double pf = 1.0 / (2.0 * n);

        Allocation rdf = allocate_rdf(g, pf);
        double hpu_cap = -1.0;
        for (const auto& u : g.users) {
            if (rdf.classes.at(u.id) != UserClass::HighPotential) continue;
            if (hpu_cap < 0.0) hpu_cap = rdf.user_capacity.at(u.id);
            CHECK(near_abs(rdf.user_capacity.at(u.id), hpu_cap, 1e-9));
        }

        Allocation ndf = allocate_ndf(g, pf);
        double hpu_gain = -1.0;
        for (const auto& u : g.users) {
            if (ndf.classes.at(u.id) != UserClass::HighPotential) continue;
            double inc = ndf.user_capacity.at(u.id) - capacity_direct(u.link, pf);
            if (hpu_gain < 0.0) hpu_gain = inc;
            CHECK(near_abs(inc, hpu_gain, 1e-9));
        }
    }
}

TEST_CASE("marginal rates equalize across interior users") {
    for (unsigned seed = 100; seed < 120; ++seed) {
        RelayGroup g = random_group(seed);
        double pf = 1.0 / (2.0 * g.users.size());
        for (auto alloc : {allocate_rdf(g, pf), allocate_ndf(g, pf), allocate_af(g, pf),
                           allocate_cf(g, pf)}) {
            OracleReport r = kkt_check(g, alloc);
            CHECK(r.kkt_violations.empty());
        }
    }
}
