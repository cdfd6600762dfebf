#pragma once

#include <array>

#include "twrc/model.hpp"

namespace twrc {

// Which user of each pair carries the larger target rate.
struct RateOrder {
    bool firstLargerA = true;  // R1 >= R2
    bool firstLargerB = true;  // R3 >= R4
};

RateOrder rate_order_of(const RateTuple& r);

struct EffectiveSystem {
    SystemParams params;
    // perm[j] is the original (0-based) user shown as effective user j.
    std::array<int, 4> perm{0, 1, 2, 3};
    bool pairSwapped = false;
};

EffectiveSystem canonicalize(const SystemParams& params, RateOrder order = {});

// Effective-indexed rates to original indexing, and back.
RateTuple to_original(const EffectiveSystem& e, const RateTuple& r);
RateTuple to_effective(const EffectiveSystem& e, const RateTuple& r);

// The ordering conditions the achievability proofs assume.
bool is_canonical(const SystemParams& p);

}  // namespace twrc
