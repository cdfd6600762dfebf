#pragma once

#include <random>

#include "twrc/certifier.hpp"
#include "twrc/effective.hpp"
#include "twrc/model.hpp"

namespace twrc::testing {

inline SystemParams unit_channel() {
    SystemParams p;
    p.h = {1, 1, 1, 1};
    p.g = {1, 1, 1, 1};
    p.P = {1, 1, 1, 1};
    p.sigma2 = {1, 1, 1, 1};
    p.sigmaR2 = 1;
    p.PR = 1;
    return p;
}

// A channel whose effective noise powers are exactly s (g = 1) with unit uplink.
inline SystemParams with_noise(const Vec4& s, double PR) {
    SystemParams p = unit_channel();
    p.sigma2 = s;
    p.PR = PR;
    return p;
}

inline SystemParams random_canonical(std::mt19937_64& eng) {
    return canonicalize(random_channel(eng, ChannelRanges{})).params;
}

}  // namespace twrc::testing
