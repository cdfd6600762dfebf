#include <doctest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <limits>
#include <random>

#include "twrc/model.hpp"

using namespace twrc;
using Big = boost::multiprecision::cpp_dec_float_50;

namespace {

SystemParams unit_channel() {
    SystemParams p;
    p.h = {1, 1, 1, 1};
    p.g = {1, 1, 1, 1};
    p.P = {1, 1, 1, 1};
    p.sigma2 = {1, 1, 1, 1};
    p.sigmaR2 = 1;
    p.PR = 1;
    return p;
}

double big_half_log2(double x) {
    const Big v = Big(1) + Big(x);
    return static_cast<double>(boost::multiprecision::log(v) / (2 * boost::multiprecision::log(Big(2))));
}

}  // namespace

TEST_CASE("unit channel terms") {
    const CapacityTerms t = capacity_terms(unit_channel());
    for (int i = 0; i < 4; ++i) {
        CHECK(t.C[i] == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(t.D[i] == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(t.sigmaBar2[i] == 1.0);
    }
    const double c = std::log(3.0) / std::log(2.0) / 2.0;
    for (double x : t.Cpair) CHECK(x == doctest::Approx(c).epsilon(1e-14));
}

TEST_CASE("zero uplink gain") {
    SystemParams p = unit_channel();
    p.h[0] = 0;
    const CapacityTerms t = capacity_terms(p);
    CHECK(t.C[0] == 0.0);
    CHECK(t.Cpair[k13] == doctest::Approx(t.C[2]).epsilon(1e-15));
    CHECK(t.cross(0, 2) == t.Cpair[k13]);
    CHECK(t.cross(3, 1) == t.Cpair[k24]);
    CHECK_THROWS_AS(t.cross(0, 1), InternalError);
}

TEST_CASE("C1 against a 50-digit evaluation") {
    SystemParams p = unit_channel();
    p.h[0] = 2;
    const CapacityTerms t = capacity_terms(p);
    CHECK(t.C[0] == doctest::Approx(big_half_log2(4.0)).epsilon(1e-15));
    CHECK(t.C[0] == doctest::Approx(1.160964).epsilon(1e-6));
}

TEST_CASE("zero downlink gain gives infinite effective noise") {
    SystemParams p = unit_channel();
    p.g[2] = 0;
    const CapacityTerms t = capacity_terms(p);
    CHECK(std::isinf(t.sigmaBar2[2]));
    CHECK(t.D[2] == 0.0);
    CHECK(effective_noise(2.0, -2.0) == 0.5);
}

TEST_CASE("validation") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    auto bad = [](auto mutate) {
        SystemParams p = unit_channel();
        mutate(p);
        return p;
    };
    CHECK_THROWS_AS(capacity_terms(bad([](SystemParams& p) { p.sigma2[1] = 0; })), ValidationError);
    CHECK_THROWS_AS(capacity_terms(bad([](SystemParams& p) { p.sigma2[1] = -1; })), ValidationError);
    CHECK_THROWS_AS(capacity_terms(bad([](SystemParams& p) { p.sigmaR2 = 0; })), ValidationError);
    CHECK_THROWS_AS(capacity_terms(bad([=](SystemParams& p) { p.sigmaR2 = inf; })), ValidationError);
    CHECK_THROWS_AS(capacity_terms(bad([](SystemParams& p) { p.PR = -1; })), ValidationError);
    CHECK_THROWS_AS(capacity_terms(bad([](SystemParams& p) { p.P[3] = -0.5; })), ValidationError);
    CHECK_THROWS_AS(capacity_terms(bad([=](SystemParams& p) { p.h[0] = nan; })), ValidationError);
    CHECK_THROWS_AS(capacity_terms(bad([=](SystemParams& p) { p.g[0] = inf; })), ValidationError);
    CHECK_NOTHROW(capacity_terms(bad([](SystemParams& p) { p.h[0] = -3; })));
    CHECK_NOTHROW(capacity_terms(bad([](SystemParams& p) { p.PR = 0; })));

    try {
        capacity_terms(bad([](SystemParams& p) { p.PR = -1; }));
        FAIL("expected a throw");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("PR") != std::string::npos);
    }
}

TEST_CASE("make_rate clamps float noise and rejects real negatives") {
    const RateTuple r = make_rate({-1e-13, 0.25, 1e-13, 1}, "test");
    CHECK(r[0] == 0.0);
    CHECK(r[2] == 0.0);
    CHECK(r[1] == 0.25);
    CHECK_THROWS_AS(make_rate({-1e-6, 0, 0, 0}, "test"), InternalError);
    CHECK_THROWS_AS(make_rate({std::nan(""), 0, 0, 0}, "test"), InternalError);
}

TEST_CASE("properties on random channels") {
    std::mt19937_64 eng(11);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int trial = 0; trial < 500; ++trial) {
        SystemParams p;
        for (int i = 0; i < 4; ++i) {
            p.h[i] = u(eng);
            p.g[i] = u(eng);
            p.P[i] = u(eng);
            p.sigma2[i] = u(eng);
        }
        p.sigmaR2 = u(eng);
        p.PR = u(eng);
        const CapacityTerms t = capacity_terms(p);

        // Scale invariance.
        const double c = u(eng);
        SystemParams q = p;
        for (double& h : q.h) h *= c;
        q.sigmaR2 *= c * c;
        const CapacityTerms s = capacity_terms(q);
        for (int i = 0; i < 4; ++i) CHECK(std::fabs(s.C[i] - t.C[i]) <= 1e-12 * std::max(1.0, t.C[i]));
        for (int k = 0; k < 4; ++k) CHECK(std::fabs(s.Cpair[k] - t.Cpair[k]) <= 1e-12 * std::max(1.0, t.Cpair[k]));

        // Monotonicity.
        SystemParams more = p;
        more.P[trial % 4] *= 1.5;
        more.PR *= 1.5;
        const CapacityTerms m = capacity_terms(more);
        CHECK(m.C[trial % 4] >= t.C[trial % 4]);
        for (int i = 0; i < 4; ++i) CHECK(m.D[i] >= t.D[i]);

        // Pair terms dominate their members.
        for (auto [i, j] : {std::pair{0, 2}, {0, 3}, {1, 2}, {1, 3}}) {
            CHECK(t.cross(i, j) >= t.C[i]);
            CHECK(t.cross(i, j) >= t.C[j]);
        }
        for (int i = 0; i < 4; ++i) {
            CHECK(t.C[i] >= 0.0);
            CHECK(t.D[i] >= 0.0);
            CHECK(t.C[i] == doctest::Approx(big_half_log2(p.h[i] * p.h[i] * p.P[i] / p.sigmaR2)).epsilon(1e-13));
        }
    }
}

TEST_CASE("case labels print") {
    CHECK(to_string(CaseLabel::I) == "I");
    CHECK(to_string(CaseLabel::II) == "II");
    CHECK(to_string(CaseLabel::III) == "III");
}
