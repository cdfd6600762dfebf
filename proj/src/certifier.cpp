#include "twrc/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twrc/bounds.hpp"
#include "twrc/polytope.hpp"
#include "twrc/uplink.hpp"

namespace twrc {

std::string order_tag(const RateOrder& o) {
    return std::string(o.firstLargerA ? "12" : "21") + "/" + (o.firstLargerB ? "34" : "43");
}

namespace {

bool same_order(const RateOrder& a, const RateOrder& b) {
    return a.firstLargerA == b.firstLargerA && a.firstLargerB == b.firstLargerB;
}

LinkRun make_run(const SystemParams& params, const RateOrder& order, const Theorem1Options& opt) {
    LinkRun run;
    run.order = order;
    run.eff = canonicalize(params, order);
    run.caseLabel = classify_case(capacity_terms(run.eff.params).sigmaBar2);
    run.uplink = uplink_certificate(run.eff.params);
    run.downlink = downlink_certificate(run.eff.params, opt.downlink);
    return run;
}

std::vector<RateTuple> achieved_original(const LinkRun& run, const std::vector<GapCertificate>& certs) {
    std::vector<RateTuple> out;
    for (const GapCertificate& c : certs) out.push_back(to_original(run.eff, c.achieved));
    return out;
}

RateTuple combine(const std::vector<RateTuple>& pts, const std::vector<double>& lambda) {
    RateTuple r;
    for (std::size_t j = 0; j < pts.size(); ++j)
        for (int i = 0; i < 4; ++i) r[i] += lambda[j] * pts[j][i];
    return r;
}

}  // namespace

Theorem1Report verify_theorem1(const SystemParams& params, const Theorem1Options& opt) {
    const CapacityTerms t = capacity_terms(params);
    const HalfspaceSystem outer = outer_bound(t);
    const VertexSet maxv = maximal_vertices(enumerate_vertices(outer));

    Theorem1Report rep;
    auto run_for = [&](const RateOrder& o) {
        for (std::size_t k = 0; k < rep.runs.size(); ++k)
            if (same_order(rep.runs[k].order, o)) return static_cast<int>(k);
        rep.runs.push_back(make_run(params, o, opt));
        return static_cast<int>(rep.runs.size() - 1);
    };
    // The default order always runs so that per-link certificates exist even
    // when the outer bound collapses to the origin.
    run_for(RateOrder{});

    for (std::size_t k = 0; k < maxv.vertices.size(); ++k) {
        const RateTuple& V = maxv.vertices[k];
        CombinedVertex cv;
        cv.vertex = V;
        for (int i = 0; i < 4; ++i) cv.target[i] = std::max(0.0, V[i] - kHalfBit);
        cv.run = run_for(rate_order_of(V));
        const LinkRun& run = rep.runs[cv.run];

        const std::vector<RateTuple> up = achieved_original(run, run.uplink);
        const std::vector<RateTuple> down = achieved_original(run, run.downlink);
        const auto lu = downward_hull_weights(up, cv.target, kHullTol);
        const auto ld = downward_hull_weights(down, cv.target, kHullTol);
        cv.uplinkInHull = lu.has_value();
        cv.downlinkInHull = ld.has_value();

        RateTuple got;
        if (lu && ld) {
            const RateTuple a = combine(up, *lu);
            const RateTuple b = combine(down, *ld);
            for (int i = 0; i < 4; ++i) got[i] = std::max(0.0, std::min(a[i], b[i]));
        }
        std::string detail = "order " + order_tag(run.order) + ", case " + to_string(run.caseLabel);
        if (!cv.uplinkInHull) detail += ", target outside uplink hull";
        if (!cv.downlinkInHull) detail += ", target outside downlink hull";
        cv.certificate = make_certificate(Link::Combined, "V" + std::to_string(k + 1), V, got,
                                          cv.uplinkInHull && cv.downlinkInHull && contains(outer, got, kTightTol),
                                          detail);
        rep.combined.push_back(cv);
    }

    for (const LinkRun& run : rep.runs) {
        for (const auto* certs : {&run.uplink, &run.downlink})
            for (const GapCertificate& c : *certs) rep.pass = rep.pass && c.pass;
    }
    for (const CombinedVertex& cv : rep.combined) rep.pass = rep.pass && cv.certificate.pass;
    return rep;
}

// ---- Monte Carlo -------------------------------------------------------------

namespace {

void validate_range(const Range& r, const char* name) {
    if (!(r.lo > 0.0) || !std::isfinite(r.hi) || !(r.hi >= r.lo)) {
        throw ValidationError(std::string(name) + " must satisfy 0 < lo <= hi < inf");
    }
}

}  // namespace

void MonteCarloConfig::validate() const {
    if (trials < 1) throw ValidationError("trials must be >= 1");
    validate_range(gainRange, "gainRange");
    validate_range(powerRange, "powerRange");
    validate_range(noiseRange, "noiseRange");
}

double log_uniform(std::mt19937_64& eng, const Range& r) {
    const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    const double x = std::exp(std::log(r.lo) + u * (std::log(r.hi) - std::log(r.lo)));
    return std::clamp(x, r.lo, r.hi);
}

SystemParams random_channel(std::mt19937_64& eng, const ChannelRanges& r) {
    validate_range(r.gain, "gain range");
    validate_range(r.power, "power range");
    validate_range(r.noise, "noise range");
    SystemParams p;
    for (int i = 0; i < 4; ++i) p.h[i] = log_uniform(eng, r.gain);
    for (int i = 0; i < 4; ++i) p.g[i] = log_uniform(eng, r.gain);
    for (int i = 0; i < 4; ++i) p.P[i] = log_uniform(eng, r.power);
    for (int i = 0; i < 4; ++i) p.sigma2[i] = log_uniform(eng, r.noise);
    p.sigmaR2 = log_uniform(eng, r.noise);
    p.PR = log_uniform(eng, r.power);
    return p;
}

SystemParams random_channel(std::uint64_t seed, const ChannelRanges& r) {
    std::mt19937_64 eng(seed);
    return random_channel(eng, r);
}

MonteCarloResult monte_carlo(const MonteCarloConfig& cfg, const Theorem1Options& opt) {
    cfg.validate();
    MonteCarloResult res;
    for (CaseLabel c : {CaseLabel::I, CaseLabel::II, CaseLabel::III}) {
        res.caseCounts[to_string(c)] = 0;
        for (const std::string& tag : subcase_tags(c)) res.subcaseCounts[tag] = 0;
    }
    std::mt19937_64 eng(cfg.seed);
    const ChannelRanges ranges{cfg.gainRange, cfg.powerRange, cfg.noiseRange};
    res.maxSlackUplink = res.maxSlackDownlink = res.maxSlackCombined = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < cfg.trials; ++trial) {
        const SystemParams p = random_channel(eng, ranges);
        const Theorem1Report rep = verify_theorem1(p, opt);
        ++res.trials;
        if (rep.pass) ++res.passed;
        for (const LinkRun& run : rep.runs) {
            ++res.caseCounts[to_string(run.caseLabel)];
            for (const GapCertificate& c : run.uplink) {
                ++res.uplinkCerts;
                if (c.pass) ++res.uplinkPassed;
                res.maxSlackUplink = std::max(res.maxSlackUplink, max_slack(c));
            }
            for (const GapCertificate& c : run.downlink) {
                ++res.downlinkCerts;
                if (c.pass) ++res.downlinkPassed;
                res.maxSlackDownlink = std::max(res.maxSlackDownlink, max_slack(c));
                ++res.subcaseCounts[c.detail];
            }
        }
        for (const CombinedVertex& cv : rep.combined) {
            ++res.combinedCerts;
            if (cv.certificate.pass) ++res.combinedPassed;
            const double s = max_slack(cv.certificate);
            if (s > res.maxSlackCombined) {
                res.maxSlackCombined = s;
                res.worstChannel = p;
                res.worstTrial = trial;
            }
        }
    }
    return res;
}

// ---- brute-force oracle ------------------------------------------------------

namespace {

double linspace(double hi, int k, int steps) { return hi * static_cast<double>(k) / static_cast<double>(steps - 1); }

struct Tracker {
    std::vector<OracleVertex>* out;
    std::size_t first;
    std::size_t count;
    void offer(const RateTuple& got) {
        for (std::size_t v = first; v < first + count; ++v) {
            OracleVertex& o = (*out)[v];
            double s = -std::numeric_limits<double>::infinity();
            for (int i = 0; i < 4; ++i) s = std::max(s, o.target[i] - got[i]);
            if (s < o.oracleSlack) {
                o.oracleSlack = s;
                o.oracleAchieved = got;
            }
        }
    }
};

// Compositions of n into parts parts (each >= 0, sum <= n).
void simplex_points(int parts, int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == parts) {
        out.push_back(cur);
        return;
    }
    int used = 0;
    for (int c : cur) used += c;
    for (int k = 0; k <= n - used; ++k) {
        cur.push_back(k);
        simplex_points(parts, n, cur, out);
        cur.pop_back();
    }
}

std::vector<Scheme> schemes_for(CaseLabel c) {
    switch (c) {
        case CaseLabel::I: return {Scheme::S41};
        case CaseLabel::II: return {Scheme::S42, Scheme::S43};
        case CaseLabel::III: return {Scheme::S44};
    }
    return {};
}

int scheme_slots(Scheme s) {
    switch (s) {
        case Scheme::S41:
        case Scheme::S43: return 2;
        case Scheme::S42: return 4;
        case Scheme::S44: return 3;
    }
    return 0;
}

}  // namespace

OracleReport brute_force_gap(const SystemParams& params, int gridSteps) {
    if (gridSteps < 2) throw ValidationError("gridSteps must be >= 2");
    OracleReport rep;
    rep.eff = canonicalize(params);
    const SystemParams& p = rep.eff.params;
    const CapacityTerms t = capacity_terms(p);
    rep.caseLabel = classify_case(t.sigmaBar2);

    const std::vector<GapCertificate> upCerts = uplink_certificate(p);
    const std::vector<GapCertificate> downCerts = downlink_certificate(p);
    for (const auto* certs : {&upCerts, &downCerts}) {
        for (const GapCertificate& c : *certs) {
            OracleVertex o;
            o.link = c.link;
            o.label = c.vertexLabel;
            o.target = c.target;
            o.recipeSlack = max_slack(c);
            o.oracleSlack = std::numeric_limits<double>::infinity();
            rep.vertices.push_back(o);
        }
    }

    // Uplink: every decoding order over a grid of received powers.
    const HalfspaceSystem upPoly = uplink_polytope(t);
    Tracker up{&rep.vertices, 0, upCerts.size()};
    Vec4 a{};
    for (int i = 0; i < 4; ++i) a[i] = p.h[i] * p.h[i] * p.P[i];
    const std::vector<DecodingOrder> orders = all_decoding_orders();
    bool upInside = true;
    for (int i10 = 0; i10 < gridSteps; ++i10) {
        const double p10 = linspace(std::min(a[0], a[1]), i10, gridSteps);
        for (int i11 = 0; i11 < gridSteps; ++i11) {
            const double p11 = linspace(std::max(0.0, a[0] - p10), i11, gridSteps);
            for (int i30 = 0; i30 < gridSteps; ++i30) {
                const double p30 = linspace(std::min(a[2], a[3]), i30, gridSteps);
                for (int i31 = 0; i31 < gridSteps; ++i31) {
                    const double p31 = linspace(std::max(0.0, a[2] - p30), i31, gridSteps);
                    const UplinkPowerAlloc alloc{p10, p11, p30, p31};
                    for (const DecodingOrder& ord : orders) {
                        const RateTuple got = user_rates(uplink_achievable(alloc, ord, p.sigmaR2));
                        if (!contains(upPoly, got, kTightTol)) upInside = false;
                        up.offer(got);
                    }
                }
            }
        }
    }

    // The recipe allocations join the grid as anchors, so the search always
    // covers the closed-form points.
    const UplinkPowerAlloc anchor = uplink_power_alloc(p);
    for (const DecodingOrder& ord : orders) up.offer(user_rates(uplink_achievable(anchor, ord, p.sigmaR2)));

    // Downlink: the relay power simplex for each scheme valid in this case.
    const HalfspaceSystem downPoly = downlink_polytope(rep.caseLabel, t);
    const HalfspaceSystem generic = downlink_generic(t);
    Tracker down{&rep.vertices, upCerts.size(), downCerts.size()};
    bool downInside = true;
    for (Scheme sc : schemes_for(rep.caseLabel)) {
        std::vector<std::vector<int>> pts;
        std::vector<int> cur;
        simplex_points(scheme_slots(sc), gridSteps - 1, cur, pts);
        for (const std::vector<int>& q : pts) {
            DownlinkPowerAlloc alloc;
            alloc.scheme = sc;
            for (std::size_t k = 0; k < q.size(); ++k) alloc.p[k] = linspace(p.PR, q[k], gridSteps);
            const RateTuple got = scheme_rates(alloc, t.sigmaBar2);
            if (!contains(downPoly, got, kTightTol) || !contains(generic, got, kTightTol)) downInside = false;
            down.offer(got);
        }
    }

    for (const DownlinkVertex& v : downlink_vertices(rep.caseLabel, t)) {
        const DownlinkPowerAlloc alloc = alloc_for_vertex(rep.caseLabel, v.label, p).alloc;
        down.offer(scheme_rates(alloc, t.sigmaBar2));
    }

    for (std::size_t v = 0; v < rep.vertices.size(); ++v) {
        rep.vertices[v].oracleInPolytope = v < upCerts.size() ? upInside : downInside;
    }
    return rep;
}

}  // namespace twrc
