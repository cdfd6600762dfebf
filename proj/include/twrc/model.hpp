#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace twrc {

using Vec4 = std::array<double, 4>;

// Global tolerance policy.
inline constexpr double kTightTol = 1e-9;
inline constexpr double kGapTol = 1e-7;
inline constexpr double kDedupTol = 1e-8;
inline constexpr double kClampTol = 1e-12;
inline constexpr double kHalfBit = 0.5;

// Bad input supplied by the caller (CLI exit code 2).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A construction that the analysis guarantees cannot fail did fail.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

struct SystemParams {
    Vec4 h{};       // user-to-relay amplitude gains
    Vec4 g{};       // relay-to-user amplitude gains
    Vec4 P{};       // user power budgets
    Vec4 sigma2{};  // user noise variances
    double sigmaR2 = 1.0;
    double PR = 0.0;

    // Throws ValidationError naming the offending field.
    void validate() const;
};

struct RateTuple {
    Vec4 r{};

    double& operator[](int i) { return r[i]; }
    double operator[](int i) const { return r[i]; }
    bool operator==(const RateTuple&) const = default;
};

// Clamps components in (-kClampTol, kClampTol) to exactly zero; a component
// below -kClampTol is a caller bug and raises InternalError.
RateTuple make_rate(const Vec4& v, const char* what = "rate tuple");

// Indices into CapacityTerms::Cpair.
enum PairIndex { k13 = 0, k14 = 1, k23 = 2, k24 = 3 };

struct CapacityTerms {
    Vec4 C{};
    Vec4 D{};
    Vec4 Cpair{};      // C13, C14, C23, C24
    Vec4 sigmaBar2{};  // sigma_i^2 / g_i^2, +inf when g_i = 0

    // Cross-pair term for 0-based users i in {0,1}, j in {2,3}.
    double cross(int i, int j) const;
};

enum class CaseLabel { I, II, III };

std::string to_string(CaseLabel c);

// 0.5 * log2(1 + x)
double half_log1p(double x);

double effective_noise(double sigma2, double g);

CapacityTerms capacity_terms(const SystemParams& p);

}  // namespace twrc
