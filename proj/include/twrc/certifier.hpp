#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "twrc/certificate.hpp"
#include "twrc/downlink.hpp"
#include "twrc/effective.hpp"
#include "twrc/model.hpp"

namespace twrc {

// Per-link certificates for one canonicalization of the channel. Targets and
// achieved points are in effective indexing; eff.perm maps them back.
struct LinkRun {
    RateOrder order;
    EffectiveSystem eff;
    CaseLabel caseLabel = CaseLabel::I;
    std::vector<GapCertificate> uplink;
    std::vector<GapCertificate> downlink;
};

struct CombinedVertex {
    RateTuple vertex;  // maximal vertex of the original outer bound
    RateTuple target;  // (vertex - 1/2)^+
    int run = 0;       // index into Theorem1Report::runs
    bool uplinkInHull = false;
    bool downlinkInHull = false;
    GapCertificate certificate;
};

struct Theorem1Report {
    std::vector<LinkRun> runs;
    std::vector<CombinedVertex> combined;
    bool pass = true;
};

struct Theorem1Options {
    DownlinkOptions downlink;
};

// Hull membership tolerance used by the combined check.
inline constexpr double kHullTol = 1e-7;

Theorem1Report verify_theorem1(const SystemParams& params, const Theorem1Options& opt = {});

std::string order_tag(const RateOrder& o);

struct Range {
    double lo = 0.1;
    double hi = 10.0;
};

struct MonteCarloConfig {
    int trials = 1000;
    std::uint64_t seed = 1;
    Range gainRange;
    Range powerRange;
    Range noiseRange;
    void validate() const;
};

struct ChannelRanges {
    Range gain;
    Range power;
    Range noise;
};

// Log-uniform draws of |h_i|, |g_i| (gain), P_i, P_R (power), sigma_i^2 and
// sigma_R^2 (noise).
SystemParams random_channel(std::mt19937_64& eng, const ChannelRanges& r);
SystemParams random_channel(std::uint64_t seed, const ChannelRanges& r);

// Log-uniform draw in [lo, hi] built from raw engine bits, so streams agree
// across standard libraries.
double log_uniform(std::mt19937_64& eng, const Range& r);

struct MonteCarloResult {
    int trials = 0;
    int passed = 0;  // channels whose whole report passed
    int uplinkCerts = 0, uplinkPassed = 0;
    int downlinkCerts = 0, downlinkPassed = 0;
    int combinedCerts = 0, combinedPassed = 0;
    double maxSlackUplink = 0.0;
    double maxSlackDownlink = 0.0;
    double maxSlackCombined = 0.0;
    SystemParams worstChannel;  // largest combined slack
    int worstTrial = -1;
    std::map<std::string, int> caseCounts;
    std::map<std::string, int> subcaseCounts;  // every tag of every case, zeros included
};

MonteCarloResult monte_carlo(const MonteCarloConfig& cfg, const Theorem1Options& opt = {});

struct OracleVertex {
    Link link = Link::Uplink;
    std::string label;
    RateTuple target;
    double recipeSlack = 0.0;  // max_i slack of the closed-form recipe
    double oracleSlack = 0.0;  // min over the grid of max_i slack
    RateTuple oracleAchieved;
    bool oracleInPolytope = true;  // every grid point evaluated stayed inside
};

struct OracleReport {
    EffectiveSystem eff;
    CaseLabel caseLabel = CaseLabel::I;
    std::vector<OracleVertex> vertices;
};

// Grid search over uplink decoding orders and received powers, and over the
// relay power simplex for the schemes of the classified case, on the default
// canonicalization.
OracleReport brute_force_gap(const SystemParams& params, int gridSteps);

}  // namespace twrc
