#include "twrc/downlink.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "twrc/bounds.hpp"

namespace twrc {

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::S41: return "4.1";
        case Scheme::S42: return "4.2";
        case Scheme::S43: return "4.3";
        case Scheme::S44: return "4.4";
    }
    return "?";
}

std::string to_string(Pr4Subcase s) {
    switch (s) {
        case Pr4Subcase::D23_i: return "D2.3(i)";
        case Pr4Subcase::D25_i: return "D2.5(i)";
        case Pr4Subcase::D25_ii: return "D2.5(ii)";
        case Pr4Subcase::D25_iii: return "D2.5(iii)";
        case Pr4Subcase::D25_iv: return "D2.5(iv)";
        case Pr4Subcase::D25_v: return "D2.5(v)";
        case Pr4Subcase::D25_vi: return "D2.5(vi)";
    }
    return "?";
}

std::string to_string(PlanTag t) {
    switch (t) {
        case PlanTag::DecodeRestAsNoise: return "decode-treating-rest-as-noise";
        case PlanTag::DecodeWithSelfMessage: return "decode-with-self-message";
        case PlanTag::KnownCodewordSkip: return "known-codeword-skip";
        case PlanTag::SicRemove: return "SIC-remove";
    }
    return "?";
}

CaseLabel classify_case(const Vec4& s) {
    if (!(s[0] >= s[1] && s[2] >= s[3] && s[3] >= s[1])) {
        throw ValidationError("classify_case: effective noise powers are not in canonical order");
    }
    if (s[3] >= s[0]) return CaseLabel::I;
    if (s[2] >= s[0]) return CaseLabel::II;
    return CaseLabel::III;
}

// Rate maps. s holds the effective noise powers, 0-based (s[0] is user 1).

RateTuple rates_case1(double p1, double p2, const Vec4& s) {
    return make_rate({half_log1p(p2 / s[1]), half_log1p(p2 / s[0]), half_log1p(p1 / (p2 + s[3])),
                      half_log1p(p1 / (p2 + s[2]))},
                     "rates_case1");
}

RateTuple rates_case2_s1(const Vec4& p, const Vec4& s) {
    const double R1 = half_log1p(p[3] / s[1]) + half_log1p(p[1] / (p[2] + p[3] + s[3]));
    const double R2 = half_log1p(p[1] / (p[2] + p[3] + s[0]));
    const double R3 = half_log1p(p[0] / (p[1] + p[2] + p[3] + s[0])) + half_log1p(p[2] / (p[3] + s[3]));
    const double R4 =
        std::min(half_log1p(p[0] / (p[1] + p[3] + s[2])), half_log1p(p[0] / (p[1] + p[2] + p[3] + s[0])));
    return make_rate({R1, R2, R3, R4}, "rates_case2_s1");
}

RateTuple rates_case2_s2(double p1, double p2, const Vec4& s) {
    return make_rate({half_log1p(p2 / s[1]), half_log1p(p2 / (p1 + s[0])), half_log1p(p1 / (p2 + s[3])),
                      half_log1p(p1 / (p2 + s[2]))},
                     "rates_case2_s2");
}

RateTuple rates_case3(double p1, double p2, double p3, const Vec4& s) {
    const double R1 = half_log1p(p3 / s[1]) + half_log1p(p1 / (p2 + p3 + s[2]));
    const double R2 = std::min(half_log1p(p1 / (p2 + s[0])), half_log1p(p1 / (p2 + p3 + s[2])));
    return make_rate({R1, R2, half_log1p(p2 / (p3 + s[3])), half_log1p(p2 / (p3 + s[2]))}, "rates_case3");
}

RateTuple scheme_rates(const DownlinkPowerAlloc& a, const Vec4& s) {
    switch (a.scheme) {
        case Scheme::S41: return rates_case1(a.p[0], a.p[1], s);
        case Scheme::S42: return rates_case2_s1(a.p, s);
        case Scheme::S43: return rates_case2_s2(a.p[0], a.p[1], s);
        case Scheme::S44: return rates_case3(a.p[0], a.p[1], a.p[2], s);
    }
    throw InternalError("scheme_rates: unknown scheme");
}

std::vector<DownlinkVertex> downlink_vertices(CaseLabel c, const CapacityTerms& t) {
    const double D1 = t.D[0], D2 = t.D[1], D3 = t.D[2], D4 = t.D[3];
    auto v = [](const char* label, Vec4 r) { return DownlinkVertex{label, make_rate(r, label)}; };
    switch (c) {
        case CaseLabel::I:
            return {v("D1.1", {D2, D1, 0, 0}), v("D1.2", {D2 - D4, D1 - D4, D4, D3}),
                    v("D1.3", {D2 - D3, D1 - D3, D3, D3})};
        case CaseLabel::II:
            return {v("D2.1", {D2, D1, 0, 0}), v("D2.2", {D2 - D4, 0, D4, D3}),
                    v("D2.3", {D2 - D4 + D1, D1, D4 - D1, 0}), v("D2.4", {D2 - D3, D1 - D3, D3, D3}),
                    v("D2.5", {D2 - D4 + D1 - D3, D1 - D3, D4 - D1 + D3, D3})};
        case CaseLabel::III:
            return {v("D3.1", {D2, D1, 0, 0}), v("D3.2", {D2 - D4, 0, D4, D3}), v("D3.3", {D2 - D3, 0, D3, D3}),
                    v("D3.4", {D2 - D4 + D1, D1, D4 - D1, D3 - D1}),
                    v("D3.5", {D2 - D3 + D1, D1, D3 - D1, D3 - D1})};
    }
    throw InternalError("downlink_vertices: unknown case");
}

std::vector<std::string> subcase_tags(CaseLabel c) {
    switch (c) {
        case CaseLabel::I: return {"D1.1", "D1.2(a)", "D1.2(b)", "D1.3(a)", "D1.3(b)"};
        case CaseLabel::II:
            return {"D2.1(a)",  "D2.1(b)",  "D2.2(a)",   "D2.2(b)",  "D2.3(i)",   "D2.3(ii)",  "D2.3(iii)",
                    "D2.4(i)",  "D2.4(ii)", "D2.4(iii)", "D2.4(iv)", "D2.4(v)",   "D2.5(i)",   "D2.5(ii)",
                    "D2.5(iii)", "D2.5(iv)", "D2.5(v)",  "D2.5(vi)", "D2.5(vii)", "D2.5(viii)"};
        case CaseLabel::III:
            return {"D3.1(a)", "D3.1(b)", "D3.2(a)", "D3.2(b)", "D3.3(a)",
                    "D3.3(b)", "D3.4(a)", "D3.4(b)", "D3.5(a)", "D3.5(b)"};
    }
    return {};
}

// ---- pR4 windows -------------------------------------------------------------

namespace {

// sigma1^2 sigma3^2 / (sigma3^2 - 2 sigma1^2), +inf when sigma3^2 <= 2 sigma1^2.
double d25_threshold(const Vec4& s) {
    const double den = s[2] - 2.0 * s[0];
    if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
    return s[0] * s[2] / den;
}

bool case2_order(const Vec4& s) { return s[2] >= s[0] && s[0] >= s[3] && s[3] >= s[1]; }

}  // namespace

bool pr4_predicate(Pr4Subcase sc, const Vec4& s, double PR) {
    if (!case2_order(s)) return false;
    const double s1 = s[0], s3 = s[2];
    const double thr = d25_threshold(s);
    switch (sc) {
        case Pr4Subcase::D23_i: return PR >= s1;
        case Pr4Subcase::D25_i: return s3 >= 3 * s1 && PR >= s3;
        case Pr4Subcase::D25_ii: return s3 >= 3 * s1 && PR > thr && PR < s3;
        case Pr4Subcase::D25_iii: return s3 >= 3 * s1 && PR <= thr;
        case Pr4Subcase::D25_iv: return s3 >= 2 * s1 && s3 < 3 * s1 && PR >= thr;
        case Pr4Subcase::D25_v: return s3 >= 2 * s1 && s3 < 3 * s1 && PR > s3 && PR < thr;
        case Pr4Subcase::D25_vi: return s3 >= 2 * s1 && s3 < 3 * s1 && PR <= s3;
    }
    return false;
}

Pr4Inputs pr4_inputs(Pr4Subcase sc, const Vec4& s, double PR) {
    const double s1 = s[0], s2 = s[1], s3 = s[2], s4 = s[3];
    Pr4Inputs in;
    switch (sc) {
        case Pr4Subcase::D23_i: {
            in.psum = s1;
            const double K = s4 * (PR + s1) / ((PR + s4) * s1) * (s1 + s4);
            in.pmin = K * (PR + s2) / (2.0 * (PR + s4)) - s2;
            in.pmax = K * 2.0 - s4;
            break;
        }
        case Pr4Subcase::D25_i:
        case Pr4Subcase::D25_iv: {
            in.psum = s1 * (PR + s3) / ((PR + s1) * s3) * 2.0 * (s3 + s1) - s1;
            const double K = (PR + s1) * s4 * s3 / (s1 * (PR + s4) * (PR + s3));
            in.pmin = K * (in.psum + s4) * (PR + s2) / (2.0 * (s3 + s4)) - s2;
            in.pmax = K * (in.psum + s4) * 2.0 * (PR + s1) / (s3 + s1) - s4;
            break;
        }
        case Pr4Subcase::D25_ii: {
            in.psum = (2.0 * PR + s3) * s1 / s3;
            const double K = s4 * (PR + s1) * s3 / ((PR + s4) * s1 * (PR + s3));
            in.pmin = (in.psum + s4) * K * (PR + s2) / (2.0 * (PR + s4)) - s2;
            in.pmax = (in.psum + s4) * K * 2.0 - s4;
            break;
        }
        case Pr4Subcase::D25_iii:
        case Pr4Subcase::D25_vi: {
            in.psum = PR;
            const double K = s4 * (PR + s1) * s3 / (s1 * (PR + s3));
            in.pmin = K * (PR + s2) / (2.0 * (PR + s4)) - s2;
            in.pmax = K * 2.0 - s4;
            break;
        }
        case Pr4Subcase::D25_v: {
            in.psum = 2.0 * s3 * (PR + s1) / (PR + s3) - s1;
            const double K = s4 * (PR + s1) * s3 / ((PR + s4) * s1 * (PR + s3));
            in.pmin = K * (PR + s2) / 2.0 - s2;
            in.pmax = K * ((2.0 + (s4 - s1) / s3) * PR + s1 + s4) - s4;
            in.caps.push_back((PR + 2.0 * s1 - s3) * s3 / (PR + s3));
            break;
        }
    }
    return in;
}

Pr4Window pr4_window(double pmin, double pmax, double psum, const std::vector<double>& caps) {
    Pr4Window w;
    w.lo = std::max(pmin, 0.0);
    w.hi = std::min(pmax, psum);
    for (double c : caps) w.hi = std::min(w.hi, c);
    return w;
}

double pr4_interval(double pmin, double pmax, double psum, const std::vector<double>& caps) {
    const Pr4Window w = pr4_window(pmin, pmax, psum, caps);
    if (w.empty() || std::isnan(w.lo) || std::isnan(w.hi)) {
        throw InternalError("pr4_interval: empty window [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) +
                            "] (pmin=" + std::to_string(pmin) + ", pmax=" + std::to_string(pmax) +
                            ", psum=" + std::to_string(psum) + ")");
    }
    if (w.lo >= w.hi) return w.hi >= 0.0 ? std::max(0.0, 0.5 * (w.lo + w.hi)) : 0.0;
    return 0.5 * (w.lo + w.hi);
}

double d25v_quadratic(const Vec4& s, double PR) {
    const double s1 = s[0], s2 = s[1], s3 = s[2], s4 = s[3];
    const double a = 2.0 * s1 - s4;
    const double b = 4.0 * s1 * s1 - 2.0 * s1 * s3 + s1 * s4 - s2 * s4;
    const double c = 4.0 * s1 * s1 * s4 - 2.0 * s1 * s3 * s4 - s1 * s2 * s4;
    return a * PR * PR + b * PR + c;
}

// ---- per-vertex recipes ------------------------------------------------------

namespace {

double pos(double x) { return x > 0.0 ? x : 0.0; }

AllocResult make(Scheme sc, Vec4 p, std::string tag) { return {{p, sc}, std::move(tag)}; }

AllocResult window_recipe(Pr4Subcase sc, const Vec4& s, double PR, double pR1, double pR2) {
    const Pr4Inputs in = pr4_inputs(sc, s, PR);
    if (sc == Pr4Subcase::D25_v && d25v_quadratic(s, PR) < -kTightTol) {
        throw InternalError("D2.5(v): quadratic feasibility check failed");
    }
    const double pR4 = pr4_interval(in.pmin, in.pmax, in.psum, in.caps);
    return make(Scheme::S42, {pR1, pR2, pos(in.psum - pR4), pR4}, to_string(sc));
}

AllocResult case1_recipe(const std::string& label, const Vec4& s, double PR) {
    if (label == "D1.1") return make(Scheme::S41, {0, PR, 0, 0}, "D1.1");
    if (label == "D1.2" || label == "D1.3") {
        const double th = label == "D1.2" ? s[3] : s[2];
        const std::string tag = label + (PR >= th ? "(a)" : "(b)");
        return make(Scheme::S41, {pos(PR - th), std::min(PR, th), 0, 0}, tag);
    }
    throw ValidationError("alloc_for_vertex: " + label + " is not a Case I vertex");
}

AllocResult d24_recipe(const Vec4& s, double PR) {
    const double s1 = s[0], s2 = s[1], s3 = s[2], s4 = s[3];
    if (PR < s4) return make(Scheme::S42, {0, 0, 0, PR}, "D2.4(i)");
    if (PR < s3) {
        if (s4 >= 2.0 * s2) {
            const double pR4 = s4 - 2.0 * s2;
            return make(Scheme::S42, {0, PR - pR4, 0, pR4}, "D2.4(ii)");
        }
        return make(Scheme::S42, {0, PR, 0, 0}, "D2.4(iii)");
    }
    if (s3 >= 2.0 * s1) {
        const double pR4 = s1 * (s3 + 2.0 * s1 - s4) / (s3 + s1);
        const double sum34 = s1 * (s3 + 2.0 * s1) / s3;
        return make(Scheme::S42, {PR - s3, pos(s3 - sum34), pos(sum34 - pR4), pR4}, "D2.4(iv)");
    }
    return make(Scheme::S42, {PR - s3, 0, 0.5 * s3, 0.5 * s3}, "D2.4(v)");
}

AllocResult d25_recipe(const Vec4& s, double PR) {
    const double s1 = s[0], s3 = s[2], s4 = s[3];
    const double thr = d25_threshold(s);
    if (s3 >= 3.0 * s1) {
        if (PR >= s3) {
            const Pr4Inputs in = pr4_inputs(Pr4Subcase::D25_i, s, PR);
            return window_recipe(Pr4Subcase::D25_i, s, PR, PR - s3, pos(s3 - in.psum));
        }
        if (PR > thr) {
            const Pr4Inputs in = pr4_inputs(Pr4Subcase::D25_ii, s, PR);
            return window_recipe(Pr4Subcase::D25_ii, s, PR, 0, pos(PR - in.psum));
        }
        return window_recipe(Pr4Subcase::D25_iii, s, PR, 0, 0);
    }
    if (s3 >= 2.0 * s1) {
        if (PR >= thr) {
            const Pr4Inputs in = pr4_inputs(Pr4Subcase::D25_iv, s, PR);
            return window_recipe(Pr4Subcase::D25_iv, s, PR, PR - s3, pos(s3 - in.psum));
        }
        if (PR > s3) {
            const Pr4Inputs in = pr4_inputs(Pr4Subcase::D25_v, s, PR);
            return window_recipe(Pr4Subcase::D25_v, s, PR, pos(PR - in.psum), 0);
        }
        return window_recipe(Pr4Subcase::D25_vi, s, PR, 0, 0);
    }
    if (PR >= s4) return make(Scheme::S43, {PR - s4, s4, 0, 0}, "D2.5(vii)");
    return make(Scheme::S43, {0, PR, 0, 0}, "D2.5(viii)");
}

AllocResult case2_recipe(const std::string& label, const Vec4& s, double PR) {
    const double s1 = s[0], s4 = s[3];
    if (label == "D2.1") {
        return make(Scheme::S42, {0, pos(PR - s1), 0, std::min(s1, PR)}, PR >= s1 ? "D2.1(a)" : "D2.1(b)");
    }
    if (label == "D2.2") {
        if (PR >= s4) return make(Scheme::S43, {PR - s4, s4, 0, 0}, "D2.2(a)");
        return make(Scheme::S43, {0, PR, 0, 0}, "D2.2(b)");
    }
    if (label == "D2.3") {
        if (PR >= s1) return window_recipe(Pr4Subcase::D23_i, s, PR, 0, PR - s1);
        if (PR >= s4) return make(Scheme::S42, {0, 0, PR - s4, s4}, "D2.3(ii)");
        return make(Scheme::S42, {0, 0, 0, PR}, "D2.3(iii)");
    }
    if (label == "D2.4") return d24_recipe(s, PR);
    if (label == "D2.5") return d25_recipe(s, PR);
    throw ValidationError("alloc_for_vertex: " + label + " is not a Case II vertex");
}

AllocResult case3_recipe(const std::string& label, const Vec4& s, double PR) {
    const double s1 = s[0], s2 = s[1], s3 = s[2], s4 = s[3];
    if (label == "D3.1") {
        return make(Scheme::S44, {pos(PR - s1), 0, std::min(PR, s1), 0}, PR >= s1 ? "D3.1(a)" : "D3.1(b)");
    }
    if (label == "D3.2" || label == "D3.3") {
        const double th = label == "D3.2" ? s4 : s3;
        return make(Scheme::S44, {0, pos(PR - th), std::min(th, PR), 0}, label + (PR >= th ? "(a)" : "(b)"));
    }
    if (label == "D3.4" || label == "D3.5") {
        const double inner = label == "D3.4" ? s4 : s3;
        if (PR >= s1) return make(Scheme::S44, {PR - s1, s1 - inner, inner, 0}, label + "(a)");
        // When inner is infinite the weight (inner - s2)/(PR + inner) tends to 1.
        const double pR3 = std::isinf(inner) ? PR : PR * (inner - s2) / (PR + inner);
        return make(Scheme::S44, {0, pos(PR - pR3), pR3, 0}, label + "(b)");
    }
    throw ValidationError("alloc_for_vertex: " + label + " is not a Case III vertex");
}

}  // namespace

AllocResult alloc_for_vertex(CaseLabel c, const std::string& label, const SystemParams& params) {
    const CapacityTerms t = capacity_terms(params);
    if (classify_case(t.sigmaBar2) != c && !case_ordering_holds(c, t.sigmaBar2)) {
        throw ValidationError("alloc_for_vertex: case " + to_string(c) + " does not match the channel");
    }
    const double PR = params.PR;
    // A user with g = 0 has infinite effective noise. The recipes are continuous
    // in that limit, so they run on a large finite stand-in; rates are still
    // evaluated on the true values.
    Vec4 s = t.sigmaBar2;
    double scale = std::max(1.0, PR);
    for (double x : s)
        if (std::isfinite(x)) scale = std::max(scale, x);
    for (double& x : s)
        if (std::isinf(x)) x = 1e12 * scale;
    AllocResult r;
    switch (c) {
        case CaseLabel::I: r = case1_recipe(label, s, PR); break;
        case CaseLabel::II: r = case2_recipe(label, s, PR); break;
        case CaseLabel::III: r = case3_recipe(label, s, PR); break;
    }
    double sum = 0.0;
    for (double p : r.alloc.p) {
        if (!(p >= -kClampTol)) {
            throw InternalError("alloc_for_vertex: " + r.subcase + " produced a negative power " + std::to_string(p));
        }
        sum += p;
    }
    if (sum > PR + kTightTol) {
        throw InternalError("alloc_for_vertex: " + r.subcase + " exceeds the relay power budget");
    }
    for (double& p : r.alloc.p) p = pos(p);
    return r;
}

// ---- message plans -----------------------------------------------------------

MessagePlan message_plan(CaseLabel c, Scheme s) {
    using T = PlanTag;
    MessagePlan m;
    m.caseLabel = c;
    m.scheme = s;
    auto cw = [](const char* name, const char* rate, std::vector<std::string> msgs) {
        return PlanCodeword{name, rate, std::move(msgs)};
    };
    if (s == Scheme::S41 || s == Scheme::S43) {
        if ((s == Scheme::S41) != (c == CaseLabel::I) || c == CaseLabel::III) {
            throw ValidationError("message_plan: scheme " + to_string(s) + " does not apply to case " + to_string(c));
        }
        m.codewords = {cw("xR1", "R_R1", {"mB", "m31"}), cw("xR2", "R_R2", {"mA", "m11"})};
        const std::vector<PlanStep> pairB = {{T::DecodeWithSelfMessage, "xR1"}};
        const std::vector<PlanStep> sic = {
            {T::DecodeRestAsNoise, "xR1"}, {T::SicRemove, "xR1"}, {T::DecodeWithSelfMessage, "xR2"}};
        if (s == Scheme::S41) {
            m.users = {{1, sic}, {2, sic}, {3, pairB}, {4, pairB}};
        } else {
            m.users = {{1, {{T::DecodeWithSelfMessage, "xR2"}}}, {2, sic}, {3, pairB}, {4, pairB}};
        }
    } else if (s == Scheme::S42) {
        if (c != CaseLabel::II) throw ValidationError("message_plan: scheme 4.2 applies to case II only");
        m.codewords = {cw("xR1", "R_R1", {"mB", "m31(0)"}), cw("xR2", "R_R2", {"mA", "m11(0)"}),
                       cw("xR3", "R_R3", {"m31(1)"}), cw("xR4", "R_R4", {"m11(1)"})};
        m.users = {
            {1, {{T::DecodeRestAsNoise, "xR1"}, {T::SicRemove, "xR1"}, {T::DecodeWithSelfMessage, "xR2"}}},
            {2,
             {{T::DecodeRestAsNoise, "xR1"},
              {T::SicRemove, "xR1"},
              {T::DecodeWithSelfMessage, "xR2"},
              {T::SicRemove, "xR2"},
              {T::DecodeRestAsNoise, "xR3"},
              {T::SicRemove, "xR3"},
              {T::DecodeRestAsNoise, "xR4"}}},
            {3, {{T::KnownCodewordSkip, "xR3"}, {T::DecodeWithSelfMessage, "xR1"}}},
            {4,
             {{T::DecodeWithSelfMessage, "xR1"},
              {T::SicRemove, "xR1"},
              {T::DecodeRestAsNoise, "xR2"},
              {T::SicRemove, "xR2"},
              {T::DecodeRestAsNoise, "xR3"}}},
        };
    } else {
        if (c != CaseLabel::III) throw ValidationError("message_plan: scheme 4.4 applies to case III only");
        m.codewords = {cw("xR1", "R_R1", {"mA", "m11(0)"}), cw("xR2", "R_R2", {"mB", "m31"}),
                       cw("xR3", "R_R3", {"m11(1)"})};
        const std::vector<PlanStep> pairB = {
            {T::DecodeRestAsNoise, "xR1"}, {T::SicRemove, "xR1"}, {T::DecodeWithSelfMessage, "xR2"}};
        m.users = {
            {1, {{T::KnownCodewordSkip, "xR3"}, {T::DecodeWithSelfMessage, "xR1"}}},
            {2,
             {{T::DecodeWithSelfMessage, "xR1"},
              {T::SicRemove, "xR1"},
              {T::DecodeRestAsNoise, "xR2"},
              {T::SicRemove, "xR2"},
              {T::DecodeRestAsNoise, "xR3"}}},
            {3, pairB},
            {4, pairB},
        };
    }
    return m;
}

namespace {

// Split parts of a parent message are written "m11(0)", "m11(1)".
std::string parent_of(const std::string& msg) {
    const auto k = msg.find('(');
    return k == std::string::npos ? msg : msg.substr(0, k);
}

std::set<std::string> merge_parts(const std::set<std::string>& atoms) {
    std::set<std::string> out;
    for (const std::string& a : atoms) {
        if (a.find('(') == std::string::npos) {
            out.insert(a);
        } else if (atoms.count(parent_of(a) + "(0)") && atoms.count(parent_of(a) + "(1)")) {
            out.insert(parent_of(a));
        }
    }
    return out;
}

// Source message pieces a user already holds: users 1 and 3 own the private
// parts m11 and m31.
std::set<std::string> own_messages(int user) {
    if (user == 1) return {"m11", "m11(0)", "m11(1)"};
    if (user == 3) return {"m31", "m31(0)", "m31(1)"};
    return {};
}

// What a user needs to rebuild its partner's message: the network-coded pair
// message, plus the partner's private part for users 2 and 4.
std::set<std::string> needed_messages(int user) {
    switch (user) {
        case 1: return {"mA"};
        case 2: return {"mA", "m11"};
        case 3: return {"mB"};
        case 4: return {"mB", "m31"};
    }
    return {};
}

}  // namespace

bool plan_covers_messages(const MessagePlan& plan) {
    std::multiset<std::string> atoms;
    for (const PlanCodeword& c : plan.codewords) atoms.insert(c.messages.begin(), c.messages.end());
    for (const std::string& a : atoms)
        if (atoms.count(a) != 1) return false;
    for (const char* parent : {"mA", "mB", "m11", "m31"}) {
        const std::string p = parent;
        const bool whole = atoms.count(p) == 1;
        const bool parts = atoms.count(p + "(0)") == 1 && atoms.count(p + "(1)") == 1;
        const bool stray = atoms.count(p + "(0)") + atoms.count(p + "(1)") > 0;
        if (whole == parts || (whole && stray)) return false;
    }
    return true;
}

bool plan_user_recovers_partner(const MessagePlan& plan, int user) {
    const UserScript* script = nullptr;
    for (const UserScript& u : plan.users)
        if (u.user == user) script = &u;
    if (!script) return false;
    const std::set<std::string> own = own_messages(user);
    const std::set<std::string> need = needed_messages(user);
    const char* pairPrefix = (user <= 2) ? "m1" : "m3";
    const std::string pairMsg = (user <= 2) ? "mA" : "mB";

    std::set<std::string> decoded;
    std::set<std::string> removed;
    for (const PlanStep& st : script->steps) {
        const auto it = std::find_if(plan.codewords.begin(), plan.codewords.end(),
                                     [&](const PlanCodeword& c) { return c.name == st.codeword; });
        if (it == plan.codewords.end()) return false;
        switch (st.tag) {
            case PlanTag::SicRemove:
                // Only a codeword the user already knows can be cancelled.
                for (const std::string& m : it->messages)
                    if (!decoded.count(m) && !own.count(m)) return false;
                removed.insert(it->name);
                break;
            case PlanTag::KnownCodewordSkip:
                for (const std::string& m : it->messages)
                    if (!own.count(m)) return false;
                break;
            case PlanTag::DecodeWithSelfMessage: {
                // Self-message side information must relate to this pair's message.
                const bool related = std::any_of(it->messages.begin(), it->messages.end(), [&](const std::string& m) {
                    return m == pairMsg || m.rfind(pairPrefix, 0) == 0;
                });
                if (!related) return false;
                decoded.insert(it->messages.begin(), it->messages.end());
                break;
            }
            case PlanTag::DecodeRestAsNoise:
                decoded.insert(it->messages.begin(), it->messages.end());
                break;
        }
    }
    std::set<std::string> have = decoded;
    have.insert(own.begin(), own.end());
    const std::set<std::string> merged = merge_parts(have);
    // Exactly the partner's message: everything needed is present, and the
    // decoded pieces belonging to this pair add nothing beyond it.
    for (const std::string& n : need)
        if (!merged.count(n)) return false;
    for (const std::string& m : merge_parts(decoded)) {
        const bool ownPair = m == pairMsg || m.rfind(pairPrefix, 0) == 0;
        if (ownPair && !need.count(m) && !own.count(m)) return false;
    }
    return true;
}

// ---- certificate -------------------------------------------------------------

std::vector<GapCertificate> downlink_certificate(const SystemParams& params, const DownlinkOptions& opt) {
    const CapacityTerms t = capacity_terms(params);
    const CaseLabel c = classify_case(t.sigmaBar2);
    const HalfspaceSystem poly = downlink_polytope(c, t);
    const HalfspaceSystem generic = downlink_generic(t);
    std::vector<GapCertificate> out;
    for (const DownlinkVertex& v : downlink_vertices(c, t)) {
        AllocResult a = alloc_for_vertex(c, v.label, params);
        if (opt.corruptRecipe) a.alloc.p = {0, 0, 0, 0};
        const RateTuple got = scheme_rates(a.alloc, t.sigmaBar2);
        const bool inside = contains(poly, got, kTightTol) && contains(generic, got, kTightTol);
        out.push_back(make_certificate(Link::Downlink, v.label, v.rates, got, inside, a.subcase));
    }
    return out;
}

}  // namespace twrc
