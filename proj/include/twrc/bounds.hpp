#pragma once

#include "twrc/model.hpp"
#include "twrc/polytope.hpp"

namespace twrc {

// Genie-aided outer bound with min/max resolved into scalar right-hand sides.
// Row order: R1+R3, R1+R4, R2+R3, R2+R4, R1, R2, R3, R4.
HalfspaceSystem outer_bound(const CapacityTerms& t);

// Same row order as outer_bound with the uplink terms only.
HalfspaceSystem uplink_polytope(const CapacityTerms& t);

// True when the effective noise powers satisfy the ordering chain of the case
// (ties allowed).
bool case_ordering_holds(CaseLabel c, const Vec4& sigmaBar2);

// Per-case relay-to-user polytope. Throws ValidationError when the ordering
// of t.sigmaBar2 does not match the case.
HalfspaceSystem downlink_polytope(CaseLabel c, const CapacityTerms& t);

// The downlink rows of the outer bound alone (generic restriction, any ordering).
HalfspaceSystem downlink_generic(const CapacityTerms& t);

}  // namespace twrc
