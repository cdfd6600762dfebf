#include "twrc/effective.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace twrc {

RateOrder rate_order_of(const RateTuple& r) { return {r[0] >= r[1], r[2] >= r[3]}; }

namespace {

void swap_users(SystemParams& p, std::array<int, 4>& perm, int i, int j) {
    std::swap(p.h[i], p.h[j]);
    std::swap(p.g[i], p.g[j]);
    std::swap(p.P[i], p.P[j]);
    std::swap(p.sigma2[i], p.sigma2[j]);
    std::swap(perm[i], perm[j]);
}

void weaken_uplink(SystemParams& p, int strong, int weak) {
    const double a1 = p.h[strong] * p.h[strong] * p.P[strong];
    const double a2 = p.h[weak] * p.h[weak] * p.P[weak];
    if (!(a1 < a2)) return;
    if (!(p.P[weak] > 0.0) || !(p.P[strong] >= 0.0)) {
        throw ValidationError("canonicalize: P[" + std::to_string(weak) + "] must be > 0 to rescale h");
    }
    double h = std::fabs(p.h[strong]) * std::sqrt(p.P[strong] / p.P[weak]);
    // Rounding may leave h^2 P one ulp above the target; the ordering must hold exactly.
    while (h > 0.0 && h * h * p.P[weak] > a1) h = std::nextafter(h, 0.0);
    p.h[weak] = h;
}

// Raise the noise of the first user so both users of the pair see the
// weaker user's SNR g^2/sigma^2.
void weaken_downlink(SystemParams& p, int first, int second) {
    const double snr1 = p.g[first] * p.g[first] / p.sigma2[first];
    const double snr2 = p.g[second] * p.g[second] / p.sigma2[second];
    if (!(snr2 < snr1)) return;
    if (!(snr2 > 0.0)) {
        p.sigma2[first] = std::numeric_limits<double>::infinity();
        return;
    }
    const double target = effective_noise(p.sigma2[second], p.g[second]);
    double s = p.g[first] * p.g[first] / snr2;
    while (effective_noise(s, p.g[first]) < target) s = std::nextafter(s, std::numeric_limits<double>::infinity());
    p.sigma2[first] = s;
}

}  // namespace

EffectiveSystem canonicalize(const SystemParams& params, RateOrder order) {
    params.validate();
    EffectiveSystem e;
    e.params = params;
    if (!order.firstLargerA) swap_users(e.params, e.perm, 0, 1);
    if (!order.firstLargerB) swap_users(e.params, e.perm, 2, 3);

    weaken_uplink(e.params, 0, 1);
    weaken_uplink(e.params, 2, 3);
    weaken_downlink(e.params, 0, 1);
    weaken_downlink(e.params, 2, 3);

    const double sb2 = effective_noise(e.params.sigma2[1], e.params.g[1]);
    const double sb4 = effective_noise(e.params.sigma2[3], e.params.g[3]);
    if (sb4 < sb2) {
        swap_users(e.params, e.perm, 0, 2);
        swap_users(e.params, e.perm, 1, 3);
        e.pairSwapped = true;
    }
    return e;
}

RateTuple to_original(const EffectiveSystem& e, const RateTuple& r) {
    RateTuple out;
    for (int j = 0; j < 4; ++j) out[e.perm[j]] = r[j];
    return out;
}

RateTuple to_effective(const EffectiveSystem& e, const RateTuple& r) {
    RateTuple out;
    for (int j = 0; j < 4; ++j) out[j] = r[e.perm[j]];
    return out;
}

bool is_canonical(const SystemParams& p) {
    Vec4 a{}, s{};
    for (int i = 0; i < 4; ++i) {
        a[i] = p.h[i] * p.h[i] * p.P[i];
        s[i] = effective_noise(p.sigma2[i], p.g[i]);
    }
    return a[0] >= a[1] && a[2] >= a[3] && s[0] >= s[1] && s[2] >= s[3] && s[3] >= s[1];
}

}  // namespace twrc
