#include "twrc/model.hpp"

#include <cmath>
#include <limits>

namespace twrc {

namespace {

void require_positive(double v, const std::string& field) {
    if (!(v > 0.0)) throw ValidationError(field + " must be > 0");
}

void require_nonnegative(double v, const std::string& field) {
    if (!(v >= 0.0) || std::isinf(v)) throw ValidationError(field + " must be finite and >= 0");
}

void require_finite(double v, const std::string& field) {
    if (!std::isfinite(v)) throw ValidationError(field + " must be finite");
}

}  // namespace

void SystemParams::validate() const {
    for (int i = 0; i < 4; ++i) {
        const std::string idx = "[" + std::to_string(i) + "]";
        require_finite(h[i], "h" + idx);
        require_finite(g[i], "g" + idx);
        require_nonnegative(P[i], "P" + idx);
        // +inf is admitted: the effective system may push a noise variance to infinity.
        require_positive(sigma2[i], "sigma2" + idx);
    }
    require_positive(sigmaR2, "sigmaR2");
    require_finite(sigmaR2, "sigmaR2");
    require_nonnegative(PR, "PR");
}

RateTuple make_rate(const Vec4& v, const char* what) {
    RateTuple out;
    for (int i = 0; i < 4; ++i) {
        double x = v[i];
        if (std::isnan(x)) throw InternalError(std::string(what) + ": NaN component");
        if (x < -kClampTol) {
            throw InternalError(std::string(what) + ": negative component " + std::to_string(x));
        }
        if (std::fabs(x) < kClampTol) x = 0.0;
        out.r[i] = x;
    }
    return out;
}

double CapacityTerms::cross(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i == 0 && j == 2) return Cpair[k13];
    if (i == 0 && j == 3) return Cpair[k14];
    if (i == 1 && j == 2) return Cpair[k23];
    if (i == 1 && j == 3) return Cpair[k24];
    throw InternalError("cross: not a cross pair");
}

std::string to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::I: return "I";
        case CaseLabel::II: return "II";
        case CaseLabel::III: return "III";
    }
    return "?";
}

double half_log1p(double x) { return 0.5 * std::log2(1.0 + x); }

double effective_noise(double sigma2, double g) {
    const double g2 = g * g;
    if (g2 == 0.0) return std::numeric_limits<double>::infinity();
    return sigma2 / g2;
}

CapacityTerms capacity_terms(const SystemParams& p) {
    p.validate();
    CapacityTerms t;
    Vec4 rx{};
    for (int i = 0; i < 4; ++i) {
        rx[i] = p.h[i] * p.h[i] * p.P[i];
        t.C[i] = half_log1p(rx[i] / p.sigmaR2);
        t.sigmaBar2[i] = effective_noise(p.sigma2[i], p.g[i]);
        // P_R / inf evaluates to 0, so D_i = 0 when g_i = 0.
        t.D[i] = half_log1p(p.PR / t.sigmaBar2[i]);
    }
    t.Cpair[k13] = half_log1p((rx[0] + rx[2]) / p.sigmaR2);
    t.Cpair[k14] = half_log1p((rx[0] + rx[3]) / p.sigmaR2);
    t.Cpair[k23] = half_log1p((rx[1] + rx[2]) / p.sigmaR2);
    t.Cpair[k24] = half_log1p((rx[1] + rx[3]) / p.sigmaR2);
    return t;
}

}  // namespace twrc
