#pragma once

#include <string>

#include "twrc/model.hpp"

namespace twrc {

enum class Link { Uplink, Downlink, Combined };

std::string to_string(Link l);

struct GapCertificate {
    Link link = Link::Uplink;
    std::string vertexLabel;
    RateTuple target;
    RateTuple achieved;
    Vec4 slack{};
    bool inPolytope = true;  // achieved point inside the link polytope
    bool pass = false;
    std::string detail;  // subcase tag or hull diagnostics
};

double max_slack(const GapCertificate& c);

// slack = target - achieved; pass iff max slack <= 1/2 + kGapTol and inPolytope.
GapCertificate make_certificate(Link link, std::string label, const RateTuple& target, const RateTuple& achieved,
                                bool inPolytope, std::string detail = {});

}  // namespace twrc
