#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "helpers.hpp"
#include "twrc/bounds.hpp"
#include "twrc/polytope.hpp"
#include "twrc/uplink.hpp"

using namespace twrc;
using twrc::testing::random_canonical;
using twrc::testing::unit_channel;

namespace {

double hl(double x) { return std::log1p(x) / std::log(2.0) / 2.0; }

SystemParams from_received(Vec4 a) {
    SystemParams p = unit_channel();
    for (int i = 0; i < 4; ++i) {
        p.h[i] = std::sqrt(a[i]);
        p.P[i] = 1;
    }
    return p;
}

}  // namespace

TEST_CASE("gaussian rate") {
    CHECK(gaussian_rate(0, 1, 1) == 0.0);
    CHECK(gaussian_rate(3, 0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(gaussian_rate(2, 3, 1) == doctest::Approx(std::log2(1.5) / 2).epsilon(1e-15));
    CHECK(gaussian_rate(2, 3, 1) == doctest::Approx(0.29248125).epsilon(1e-8));
}

TEST_CASE("lattice rate") {
    CHECK(lattice_rate(0.5 * (2 + 1), 2, 1) == 0.0);
    CHECK(lattice_rate(0, 1, 1) == 0.0);
    CHECK(lattice_rate(1, 0, 1) == doctest::Approx(std::log2(1.5) / 2).epsilon(1e-15));
    CHECK(lattice_rate(0.1, 0, 1) == 0.0);
}

TEST_CASE("lattice rate loses at most half a bit") {
    for (int a = 0; a < 100; ++a)
        for (int b = 0; b < 100; ++b)
            for (double s2 : {0.01, 1.0, 100.0}) {
                const double p = std::pow(10.0, -3 + 6 * a / 99.0);
                const double I = b == 0 ? 0.0 : std::pow(10.0, -3 + 6 * b / 99.0);
                CHECK(lattice_rate(p, I, s2) >= gaussian_rate(p, I, s2) - 0.5 - 1e-12);
            }
}

TEST_CASE("power allocation") {
    const UplinkPowerAlloc u = uplink_power_alloc(unit_channel());
    CHECK(u.p10 == 0.5);
    CHECK(u.p11 == 0.0);
    CHECK(u.p30 == 0.5);
    CHECK(u.p31 == 0.0);

    const UplinkPowerAlloc v = uplink_power_alloc(from_received({4, 2, 3, 1}));
    CHECK(v.p10 == doctest::Approx(1.0));
    CHECK(v.p11 == doctest::Approx(2.0));
    CHECK(v.p30 == doctest::Approx(0.5));
    CHECK(v.p31 == doctest::Approx(2.0));

    SystemParams z = unit_channel();
    z.h[1] = 0;
    const UplinkPowerAlloc w = uplink_power_alloc(z);
    CHECK(w.p10 == 0.0);
    CHECK(w.p11 == 1.0);

    CHECK_THROWS_AS(uplink_power_alloc(from_received({1, 2, 1, 1})), ValidationError);
    CHECK_THROWS_AS(uplink_power_alloc(from_received({2, 1, 1, 2})), ValidationError);
    CHECK(alloc_feasible(v, from_received({4, 2, 3, 1})));
    CHECK_FALSE(alloc_feasible({3, 2, 0, 0}, from_received({4, 2, 3, 1})));
}

TEST_CASE("decoding orders") {
    using S = DecodeStep;
    CHECK(decoding_order("U1") == DecodingOrder{S::G1, S::LA, S::G3, S::LB});
    CHECK(decoding_order("U2") == DecodingOrder{S::G3, S::LB, S::G1, S::LA});
    CHECK(decoding_order("U3") == DecodingOrder{S::G1, S::G3, S::LA, S::LB});
    CHECK(decoding_order("U4") == DecodingOrder{S::G3, S::G1, S::LA, S::LB});
    CHECK(decoding_order("U5") == DecodingOrder{S::G1, S::G3, S::LB, S::LA});
    CHECK(decoding_order("U6") == DecodingOrder{S::G3, S::G1, S::LB, S::LA});
    CHECK_THROWS(decoding_order("U7"));
    for (const char* l : {"U1", "U2", "U3", "U4", "U5", "U6"}) {
        DecodingOrder o = decoding_order(l);
        std::sort(o.begin(), o.end());
        CHECK(o == DecodingOrder{S::G1, S::G3, S::LA, S::LB});
    }
    const auto all = all_decoding_orders();
    CHECK(all.size() == 24);
    CHECK(std::set<DecodingOrder>(all.begin(), all.end()).size() == 24);
}

TEST_CASE("SIC recursion") {
    using S = DecodeStep;
    const UplinkRates r = uplink_achievable({0.5, 0, 0.5, 0}, decoding_order("U1"), 1.0);
    CHECK(r.R10 == 0.0);
    CHECK(r.R30 == 0.0);

    // G1 sees both lattice codewords of pair A (2 p10) as noise, then LA is clean.
    const UplinkRates s = uplink_achievable({1, 2, 0, 0}, {S::G1, S::LA, S::G3, S::LB}, 1.0);
    CHECK(s.R11 == doctest::Approx(hl(2.0 / 3.0)).epsilon(1e-15));
    CHECK(s.R10 == doctest::Approx(std::log2(1.5) / 2).epsilon(1e-15));
    CHECK(s.R30 == 0.0);
    CHECK(s.R31 == 0.0);

    // Hand evaluation for a full order with every term active.
    const UplinkPowerAlloc a{1, 2, 3, 4};
    const UplinkRates t = uplink_achievable(a, {S::LB, S::G3, S::G1, S::LA}, 2.0);
    CHECK(t.R30 == doctest::Approx(std::max(0.0, 0.5 * std::log2(0.5 + 3.0 / (4 + 2 + 2 + 2)))));
    CHECK(t.R31 == doctest::Approx(hl(4.0 / (2 + 2 + 2))));
    CHECK(t.R11 == doctest::Approx(hl(2.0 / (2 + 2))));
    CHECK(t.R10 == doctest::Approx(0.5 * std::log2(0.5 + 1.0 / 2)));

    const UplinkRates z = uplink_achievable({0, 0, 0, 0}, decoding_order("U3"), 1.0);
    CHECK(user_rates(z) == RateTuple{});
    CHECK(user_rates({1, 2, 3, 4}) == RateTuple{{3, 1, 7, 3}});
}

TEST_CASE("vertex formulas") {
    std::mt19937_64 eng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const CapacityTerms t = capacity_terms(random_canonical(eng));
        const auto vs = uplink_vertices(t);
        REQUIRE(vs.size() == 6);
        const double C3 = t.C[2], C4 = t.C[3];
        const double C13 = t.Cpair[k13], C23 = t.Cpair[k23];
        CHECK(linf(vs[0].rates, RateTuple{{C13 - C3, C23 - C3, C3, C4}}) < 1e-12);
        for (const UplinkVertex& v : vs) {
            for (double x : v.split) CHECK(x >= 0.0);
            CHECK(v.rates[0] == doctest::Approx(v.split[0] + v.split[1]));
            CHECK(v.rates[1] == v.split[0]);
            CHECK(v.rates[2] == doctest::Approx(v.split[2] + v.split[3]));
            CHECK(v.rates[3] == v.split[2]);
        }
        // Every listed vertex is a vertex of the uplink polytope, and the lists agree.
        const VertexSet mx = maximal_vertices(enumerate_vertices(uplink_polytope(t)));
        std::vector<RateTuple> listed;
        for (const UplinkVertex& v : vs) listed.push_back(v.rates);
        CHECK(same_point_set(listed, mx.vertices, 1e-8));
    }
}

TEST_CASE("symmetric and zero channels") {
    const auto vs = uplink_vertices(capacity_terms(unit_channel()));
    const RateTuple& u1 = vs[0].rates;
    const RateTuple& u2 = vs[1].rates;
    CHECK(linf(RateTuple{{u1[2], u1[3], u1[0], u1[1]}}, u2) < 1e-15);

    SystemParams z = unit_channel();
    z.h = {0, 0, 0, 0};
    for (const UplinkVertex& v : uplink_vertices(capacity_terms(z))) CHECK(v.rates == RateTuple{});
    for (const GapCertificate& c : uplink_certificate(z)) {
        CHECK(c.pass);
        CHECK(max_slack(c) == 0.0);
    }
}

TEST_CASE("non-canonical ordering makes a split negative") {
    const CapacityTerms t = capacity_terms(from_received({1, 3, 2, 1}));
    CHECK(t.C[0] - t.C[1] < 0.0);  // the U.2 split R11' = C1 - C2
    CHECK_THROWS_AS(uplink_vertices(t), InternalError);
}

TEST_CASE("certificates") {
    for (const GapCertificate& c : uplink_certificate(unit_channel())) {
        CHECK(c.pass);
        CHECK(max_slack(c) <= 0.5);
        CHECK(c.link == Link::Uplink);
    }
    std::mt19937_64 eng(42);
    for (int trial = 0; trial < 500; ++trial) {
        const SystemParams p = random_canonical(eng);
        const HalfspaceSystem poly = uplink_polytope(capacity_terms(p));
        for (const GapCertificate& c : uplink_certificate(p)) {
            CHECK(c.pass);
            CHECK(contains(poly, c.achieved, 1e-9));
            for (int i = 0; i < 4; ++i) {
                CHECK(c.achieved[i] + 0.5 + 1e-7 >= c.target[i]);
                CHECK(c.slack[i] == c.target[i] - c.achieved[i]);
            }
        }
    }
}
