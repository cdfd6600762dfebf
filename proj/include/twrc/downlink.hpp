#pragma once

#include <string>
#include <vector>

#include "twrc/certificate.hpp"
#include "twrc/model.hpp"

namespace twrc {

// Which rate map applies: 4.1 (Case I), 4.2 and 4.3 (Case II), 4.4 (Case III).
enum class Scheme { S41, S42, S43, S44 };

std::string to_string(Scheme s);

struct DownlinkPowerAlloc {
    Vec4 p{};  // pR1..pR4; unused slots stay 0
    Scheme scheme = Scheme::S41;
};

struct DownlinkVertex {
    std::string label;
    RateTuple rates;
};

// Requires sigma1 >= sigma2, sigma3 >= sigma4, sigma4 >= sigma2 (effective noise
// powers). Ties go to the lower-numbered case.
CaseLabel classify_case(const Vec4& sigmaBar2);

RateTuple rates_case1(double pR1, double pR2, const Vec4& s);
RateTuple rates_case2_s1(const Vec4& p, const Vec4& s);
RateTuple rates_case2_s2(double pR1, double pR2, const Vec4& s);
RateTuple rates_case3(double pR1, double pR2, double pR3, const Vec4& s);

// Dispatches on alloc.scheme.
RateTuple scheme_rates(const DownlinkPowerAlloc& alloc, const Vec4& s);

std::vector<DownlinkVertex> downlink_vertices(CaseLabel c, const CapacityTerms& t);

struct AllocResult {
    DownlinkPowerAlloc alloc;
    std::string subcase;  // e.g. "D2.5(v)" or "D1.2(a)"
};

// params must be canonical and c must be its case.
AllocResult alloc_for_vertex(CaseLabel c, const std::string& label, const SystemParams& params);

// Every subcase tag alloc_for_vertex can emit, in printed order.
std::vector<std::string> subcase_tags(CaseLabel c);

// The recipes whose pR4 comes from a feasibility window.
enum class Pr4Subcase { D23_i, D25_i, D25_ii, D25_iii, D25_iv, D25_v, D25_vi };

std::string to_string(Pr4Subcase s);

struct Pr4Inputs {
    double pmin = 0.0;
    double pmax = 0.0;
    double psum = 0.0;  // pR3 + pR4
    std::vector<double> caps;
};

// The subcase predicate on (sigmaBar2, PR), including the Case II ordering.
bool pr4_predicate(Pr4Subcase sc, const Vec4& s, double PR);

// Closed-form window ends for the active subcase.
Pr4Inputs pr4_inputs(Pr4Subcase sc, const Vec4& s, double PR);

struct Pr4Window {
    double lo = 0.0;
    double hi = 0.0;
    bool empty() const { return lo > hi + kTightTol; }
};

Pr4Window pr4_window(double pmin, double pmax, double psum, const std::vector<double>& caps);

// Midpoint of the window; throws InternalError when it is empty.
double pr4_interval(double pmin, double pmax, double psum, const std::vector<double>& caps);

// f(PR) = a PR^2 + b PR + c from the D2.5(v) analysis.
double d25v_quadratic(const Vec4& s, double PR);

enum class PlanTag { DecodeRestAsNoise, DecodeWithSelfMessage, KnownCodewordSkip, SicRemove };

std::string to_string(PlanTag t);

struct PlanCodeword {
    std::string name;        // xR1..xR4
    std::string rateSymbol;  // R_R1..
    std::vector<std::string> messages;
};

struct PlanStep {
    PlanTag tag;
    std::string codeword;
};

struct UserScript {
    int user = 1;  // 1-based
    std::vector<PlanStep> steps;
};

struct MessagePlan {
    CaseLabel caseLabel = CaseLabel::I;
    Scheme scheme = Scheme::S41;
    std::vector<PlanCodeword> codewords;
    std::vector<UserScript> users;
};

MessagePlan message_plan(CaseLabel c, Scheme s);

// Each source message (mA, mB, m11, m31) is carried exactly once, with split
// parts covering their parent.
bool plan_covers_messages(const MessagePlan& plan);

// The user's decoded codewords plus its own side information yield exactly
// what it needs to rebuild its partner's message.
bool plan_user_recovers_partner(const MessagePlan& plan, int user);

struct DownlinkOptions {
    // Test hook: zero the relay powers so certificates fail.
    bool corruptRecipe = false;
};

// One certificate per maximal vertex of the classified case; params canonical.
std::vector<GapCertificate> downlink_certificate(const SystemParams& params, const DownlinkOptions& opt = {});

}  // namespace twrc
