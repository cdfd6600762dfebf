#pragma once

#include <array>
#include <string>
#include <vector>

#include "twrc/certificate.hpp"
#include "twrc/model.hpp"

namespace twrc {

// Received powers at the relay. Both lattice codewords of pair A arrive at p10
// and both of pair B at p30.
struct UplinkPowerAlloc {
    double p10 = 0.0;
    double p11 = 0.0;
    double p30 = 0.0;
    double p31 = 0.0;
};

// G1 = x11, G3 = x31 (Gaussian), LA = x10 + x2, LB = x30 + x4 (lattice sums).
enum class DecodeStep { G1, G3, LA, LB };
using DecodingOrder = std::array<DecodeStep, 4>;

std::string to_string(DecodeStep s);

struct UplinkRates {
    double R10 = 0.0;
    double R11 = 0.0;
    double R30 = 0.0;
    double R31 = 0.0;
};

struct UplinkVertex {
    std::string label;
    RateTuple rates;
    Vec4 split{};  // R10', R11', R30', R31'
};

double gaussian_rate(double p, double interference, double sigmaR2);
double lattice_rate(double p, double interference, double sigmaR2);

UplinkPowerAlloc uplink_power_alloc(const SystemParams& params);
bool alloc_feasible(const UplinkPowerAlloc& a, const SystemParams& params, double tol = kTightTol);

std::vector<UplinkVertex> uplink_vertices(const CapacityTerms& t);

// Vertex label "U1".."U6".
DecodingOrder decoding_order(const std::string& label);

// All 24 permutations of the four steps, in lexicographic order.
std::vector<DecodingOrder> all_decoding_orders();

UplinkRates uplink_achievable(const UplinkPowerAlloc& alloc, const DecodingOrder& order, double sigmaR2);

// Per-user rates: R1 = R10+R11, R2 = R10, R3 = R30+R31, R4 = R30.
RateTuple user_rates(const UplinkRates& r);

// One certificate per vertex U1..U6; params must be canonical.
std::vector<GapCertificate> uplink_certificate(const SystemParams& params);

}  // namespace twrc
