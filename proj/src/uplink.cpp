#include "twrc/uplink.hpp"

#include <algorithm>
#include <cmath>

#include "twrc/bounds.hpp"

namespace twrc {

std::string to_string(DecodeStep s) {
    switch (s) {
        case DecodeStep::G1: return "G1";
        case DecodeStep::G3: return "G3";
        case DecodeStep::LA: return "LA";
        case DecodeStep::LB: return "LB";
    }
    return "?";
}

double gaussian_rate(double p, double interference, double sigmaR2) {
    return 0.5 * std::log2(1.0 + p / (interference + sigmaR2));
}

double lattice_rate(double p, double interference, double sigmaR2) {
    return 0.5 * std::max(0.0, std::log2(0.5 + p / (interference + sigmaR2)));
}

UplinkPowerAlloc uplink_power_alloc(const SystemParams& params) {
    params.validate();
    Vec4 a{};
    for (int i = 0; i < 4; ++i) a[i] = params.h[i] * params.h[i] * params.P[i];
    if (a[0] < a[1]) throw ValidationError("uplink_power_alloc: requires h1^2 P1 >= h2^2 P2 (canonicalize first)");
    if (a[2] < a[3]) throw ValidationError("uplink_power_alloc: requires h3^2 P3 >= h4^2 P4 (canonicalize first)");
    return {0.5 * a[1], a[0] - a[1], 0.5 * a[3], a[2] - a[3]};
}

bool alloc_feasible(const UplinkPowerAlloc& x, const SystemParams& params, double tol) {
    Vec4 a{};
    for (int i = 0; i < 4; ++i) a[i] = params.h[i] * params.h[i] * params.P[i];
    return x.p10 >= -tol && x.p11 >= -tol && x.p30 >= -tol && x.p31 >= -tol && x.p10 + x.p11 <= a[0] + tol &&
           x.p10 <= a[1] + tol && x.p30 + x.p31 <= a[2] + tol && x.p30 <= a[3] + tol;
}

std::vector<UplinkVertex> uplink_vertices(const CapacityTerms& t) {
    const double C1 = t.C[0], C2 = t.C[1], C3 = t.C[2], C4 = t.C[3];
    const double C13 = t.Cpair[k13], C14 = t.Cpair[k14], C23 = t.Cpair[k23], C24 = t.Cpair[k24];
    auto make = [](const char* label, Vec4 split) {
        for (double& x : split) x = make_rate({x, 0, 0, 0}, label)[0];
        UplinkVertex v;
        v.label = label;
        v.split = split;
        v.rates = make_rate({split[0] + split[1], split[0], split[2] + split[3], split[2]}, label);
        return v;
    };
    return {
        make("U1", {C23 - C3, C13 - C23, C4, C3 - C4}),
        make("U2", {C2, C1 - C2, C14 - C1, C13 - C14}),
        make("U3", {C24 - C4, C13 - C23, C4, C23 - C24}),
        make("U4", {C24 - C4, C14 - C24, C4, C13 - C14}),
        make("U5", {C2, C13 - C23, C24 - C2, C23 - C24}),
        make("U6", {C2, C14 - C24, C24 - C2, C13 - C14}),
    };
}

DecodingOrder decoding_order(const std::string& label) {
    using S = DecodeStep;
    if (label == "U1") return {S::G1, S::LA, S::G3, S::LB};
    if (label == "U2") return {S::G3, S::LB, S::G1, S::LA};
    if (label == "U3") return {S::G1, S::G3, S::LA, S::LB};
    if (label == "U4") return {S::G3, S::G1, S::LA, S::LB};
    if (label == "U5") return {S::G1, S::G3, S::LB, S::LA};
    if (label == "U6") return {S::G3, S::G1, S::LB, S::LA};
    throw ValidationError("decoding_order: unknown vertex label " + label);
}

std::vector<DecodingOrder> all_decoding_orders() {
    DecodingOrder o{DecodeStep::G1, DecodeStep::G3, DecodeStep::LA, DecodeStep::LB};
    std::vector<DecodingOrder> out;
    do {
        out.push_back(o);
    } while (std::next_permutation(o.begin(), o.end()));
    return out;
}

UplinkRates uplink_achievable(const UplinkPowerAlloc& a, const DecodingOrder& order, double sigmaR2) {
    // Residual power of each step while it is still undecoded.
    auto load = [&](DecodeStep s) {
        switch (s) {
            case DecodeStep::G1: return a.p11;
            case DecodeStep::G3: return a.p31;
            case DecodeStep::LA: return 2.0 * a.p10;
            case DecodeStep::LB: return 2.0 * a.p30;
        }
        return 0.0;
    };
    UplinkRates r;
    for (std::size_t k = 0; k < order.size(); ++k) {
        double interference = 0.0;
        for (std::size_t m = k + 1; m < order.size(); ++m) interference += load(order[m]);
        switch (order[k]) {
            case DecodeStep::G1: r.R11 = gaussian_rate(a.p11, interference, sigmaR2); break;
            case DecodeStep::G3: r.R31 = gaussian_rate(a.p31, interference, sigmaR2); break;
            case DecodeStep::LA: r.R10 = lattice_rate(a.p10, interference, sigmaR2); break;
            case DecodeStep::LB: r.R30 = lattice_rate(a.p30, interference, sigmaR2); break;
        }
    }
    return r;
}

RateTuple user_rates(const UplinkRates& r) { return RateTuple{{r.R10 + r.R11, r.R10, r.R30 + r.R31, r.R30}}; }

std::vector<GapCertificate> uplink_certificate(const SystemParams& params) {
    const CapacityTerms t = capacity_terms(params);
    const UplinkPowerAlloc alloc = uplink_power_alloc(params);
    const HalfspaceSystem poly = uplink_polytope(t);
    std::vector<GapCertificate> out;
    for (const UplinkVertex& v : uplink_vertices(t)) {
        const RateTuple got = user_rates(uplink_achievable(alloc, decoding_order(v.label), params.sigmaR2));
        out.push_back(make_certificate(Link::Uplink, v.label, v.rates, got, contains(poly, got, kTightTol)));
    }
    return out;
}

}  // namespace twrc
