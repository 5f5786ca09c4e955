#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "relaywise/model.hpp"

using namespace relaywise;
using relaywise::testing::ref_link;

TEST_CASE("to_linear") {
    CHECK(to_linear(0.0) == doctest::Approx(1.0));
    CHECK(to_linear(10.0) == doctest::Approx(10.0));
    CHECK(to_linear(12.25) == doctest::Approx(std::pow(10.0, 1.225)).epsilon(1e-12));
}

TEST_CASE("capacity_direct") {
    CHECK(capacity_direct(ref_link(), 0.5) == doctest::Approx(0.5));
    CHECK(capacity_direct({0.0, 3.0, 1.0}, 0.5) == 0.0);
    CHECK(capacity_direct({3.0, 3.0, 1.0}, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("df_upper_bound") {
    CHECK(df_upper_bound(ref_link(), 0.5) == doctest::Approx(1.0));
    CHECK(df_upper_bound({1.0, 0.0, 1.0}, 0.5) == 0.0);
    // dB-specified input: 16.45 dB relay link
    LinkBudget l{to_linear(7.03), to_linear(16.45), to_linear(7.03)};
    CHECK(df_upper_bound(l, 0.125) ==
          doctest::Approx(0.125 * std::log2(1.0 + std::pow(10.0, 1.645))).epsilon(1e-12));
}

TEST_CASE("capacity_rdf") {
    CHECK(capacity_rdf(ref_link(), 0.0, 0.5) == doctest::Approx(0.5));
    CHECK(capacity_rdf(ref_link(), 1.0, 0.5) == doctest::Approx(0.5 * std::log2(3.0)));
    CHECK(capacity_rdf(ref_link(), 2.0, 0.5) == doctest::Approx(1.0));  // ceiling active
    CHECK(capacity_rdf(ref_link(), 100.0, 0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(capacity_rdf(ref_link(), -1.0, 0.5), std::invalid_argument);
}

TEST_CASE("capacity_ndf") {
    CHECK(capacity_ndf(ref_link(), 0.0, 0.5) == doctest::Approx(0.5));
    CHECK(capacity_ndf(ref_link(), 0.5, 0.5) ==
          doctest::Approx(0.5 * (std::log2(2.0) + std::log2(1.5))));
    CHECK(capacity_ndf(ref_link(), 1.0, 0.5) == doctest::Approx(1.0));  // exactly at ndf_cap
}

TEST_CASE("capacity_af") {
    CHECK(capacity_af(ref_link(), 0.0, 0.5) == doctest::Approx(0.5));
    CHECK(capacity_af(ref_link(), 1.0, 0.5) == doctest::Approx(0.5 * std::log2(2.6)));
    // monotone approach to the 1/2 log2(1 + Sd + Sr) asymptote, never reaching it
    double bound = 0.5 * std::log2(5.0);
    double prev = 0.0;
    for (double p : {1.0, 10.0, 100.0, 1e4, 1e8}) {
        double c = capacity_af(ref_link(), p, 0.5);
        CHECK(c > prev);
        CHECK(c < bound);
        prev = c;
    }
    CHECK(capacity_af(ref_link(), 1e12, 0.5) == doctest::Approx(bound).epsilon(1e-6));
}

TEST_CASE("cf_compression_noise") {
    CHECK(cf_compression_noise(ref_link(), 5.0) == doctest::Approx(0.5));
    CHECK(cf_compression_noise(ref_link(), 1.0) == doctest::Approx(2.5));
    CHECK(cf_compression_noise(ref_link(), 1e15) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::isinf(cf_compression_noise(ref_link(), 0.0)));
    CHECK(std::isinf(cf_compression_noise({1.0, 3.0, 0.0}, 5.0)));
}

TEST_CASE("capacity_cf") {
    CHECK(capacity_cf(ref_link(), 0.0, 0.5) == doctest::Approx(0.5));
    CHECK(capacity_cf(ref_link(), 5.0, 0.5) == doctest::Approx(1.0));  // P = thre2
    CHECK(capacity_cf(ref_link(), 10.0, 0.5) == doctest::Approx(0.5 * std::log2(4.4)));
}

TEST_CASE("derive on the reference link") {
    LinkDerived d = derive(ref_link());
    CHECK(d.df_upper == doctest::Approx(1.0));
    CHECK(d.rdf_base == doctest::Approx(2.0));
    CHECK(d.rdf_cap == doctest::Approx(2.0));
    CHECK(d.ndf_base == doctest::Approx(1.0));
    CHECK(d.ndf_cap == doctest::Approx(1.0));
    CHECK(d.af_a == doctest::Approx(0.375));
    CHECK(d.af_b == doctest::Approx(0.25));
    CHECK(d.cf_x == doctest::Approx(0.6));
    CHECK(d.cf_y == doctest::Approx(0.4));
    CHECK(d.thre2 == doctest::Approx(5.0));
}

TEST_CASE("derive edge cases") {
    LinkDerived d = derive({2.0, 2.0, 1.0});
    CHECK(d.rdf_cap == 0.0);
    CHECK(d.ndf_cap == 0.0);

    d = derive({0.0, 3.0, 1.0});
    CHECK(std::isinf(d.thre2));  // no direct link: CF never matches the DF bound

    d = derive({1.0, 3.0, 0.0});
    CHECK(std::isinf(d.rdf_base));
    CHECK(d.rdf_cap == 0.0);
    CHECK(d.ndf_cap == 0.0);
}

TEST_CASE("derived identities over random links") {
    std::mt19937 rng(7);
    for (int i = 0; i < 500; ++i) {
        LinkBudget l = relaywise::testing::random_link(rng);
        LinkDerived d = derive(l);
        CHECK(d.cf_x + d.cf_y == doctest::Approx(l.relay_dest_gain).epsilon(1e-12));
        CHECK(d.af_a >= 0.0);
        CHECK(d.af_b >= 0.0);
        if (std::isfinite(d.thre2) && d.ndf_cap > 0.0) {
            CHECK(d.thre2 >= d.ndf_cap - 1e-12);
        }
    }
}

TEST_CASE("threshold identities") {
    std::mt19937 rng(11);
    for (int i = 0; i < 1000; ++i) {
        LinkBudget l = relaywise::testing::random_df_eligible_link(rng);
        LinkDerived d = derive(l);
        double up = df_upper_bound(l, 0.5);
        CHECK(capacity_ndf(l, d.ndf_cap, 0.5) == doctest::Approx(up).epsilon(1e-12));
        if (l.direct_snr > 0.0) {
            CHECK(capacity_cf(l, d.thre2, 0.5) == doctest::Approx(up).epsilon(1e-9));
        }
    }
}

TEST_CASE("ordering and shape of the capacity curves") {
    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
        LinkBudget l = relaywise::testing::random_link(rng);
        double up = df_upper_bound(l, 0.5);
        double af_bound = 0.5 * std::log2(1.0 + l.direct_snr + l.source_relay_snr);
        double prev[4] = {-1.0, -1.0, -1.0, -1.0};
        for (double p : {0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0}) {
            double rdf = capacity_rdf(l, p, 0.5);
            double ndf = capacity_ndf(l, p, 0.5);
            double af = capacity_af(l, p, 0.5);
            double cf = capacity_cf(l, p, 0.5);
            CHECK(rdf <= ndf + 1e-12);
            CHECK(ndf <= up + 1e-12);
            CHECK(af <= cf + 1e-12);
            CHECK(af < af_bound);
            // nondecreasing in power
            CHECK(rdf >= prev[0] - 1e-12);
            CHECK(ndf >= prev[1] - 1e-12);
            CHECK(af >= prev[2] - 1e-12);
            CHECK(cf >= prev[3] - 1e-12);
            prev[0] = rdf; prev[1] = ndf; prev[2] = af; prev[3] = cf;
        }
    }
}

TEST_CASE("concavity by finite differences (pre-clamp region)") {
    std::mt19937 rng(17);
    for (int i = 0; i < 50; ++i) {
        LinkBudget l = relaywise::testing::random_link(rng);
        auto check_concave = [&](auto f) {
            double h = 0.05;
            double prev_slope = relaywise::kInf;
            for (double p = h; p < 3.0; p += h) {
                double slope = (f(p + h) - f(p)) / h;
                CHECK(slope <= prev_slope + 1e-9);
                prev_slope = slope;
            }
        };
        check_concave([&](double p) { return capacity_af(l, p, 0.5); });
        check_concave([&](double p) { return capacity_cf(l, p, 0.5); });
        // RDF/NDF unclamped branches
        check_concave([&](double p) {
            return 0.5 * std::log2(1.0 + l.direct_snr + p * l.relay_dest_gain);
        });
        check_concave([&](double p) { return 0.5 * std::log2(1.0 + p * l.relay_dest_gain); });
    }
}

TEST_CASE("link validation") {
    CHECK_THROWS_AS(LinkBudget({-1.0, 1.0, 1.0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(LinkBudget({1.0, relaywise::kInf, 1.0}).validate(), std::invalid_argument);
    CHECK_NOTHROW(ref_link().validate());
}
