#include "twrc/certificate.hpp"

#include <algorithm>

namespace twrc {

std::string to_string(Link l) {
    switch (l) {
        case Link::Uplink: return "uplink";
        case Link::Downlink: return "downlink";
        case Link::Combined: return "combined";
    }
    return "?";
}

double max_slack(const GapCertificate& c) { return *std::max_element(c.slack.begin(), c.slack.end()); }

GapCertificate make_certificate(Link link, std::string label, const RateTuple& target, const RateTuple& achieved,
                                bool inPolytope, std::string detail) {
    GapCertificate c;
    c.link = link;
    c.vertexLabel = std::move(label);
    c.target = target;
    c.achieved = achieved;
    for (int i = 0; i < 4; ++i) c.slack[i] = target[i] - achieved[i];
    c.inPolytope = inPolytope;
    c.pass = inPolytope && max_slack(c) <= kHalfBit + kGapTol;
    c.detail = std::move(detail);
    return c;
}

}  // namespace twrc
