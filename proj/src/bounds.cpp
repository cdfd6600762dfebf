#include "twrc/bounds.hpp"

#include <algorithm>

namespace twrc {

namespace {

Row pair_row(int i, int j, double b) {
    Row r;
    r.a[i] = 1.0;
    r.a[j] = 1.0;
    r.b = b;
    return r;
}

Row single_row(int i, double b) {
    Row r;
    r.a[i] = 1.0;
    r.b = b;
    return r;
}

}  // namespace

HalfspaceSystem outer_bound(const CapacityTerms& t) {
    const Vec4& D = t.D;
    const Vec4& C = t.C;
    return HalfspaceSystem({
        pair_row(0, 2, std::min(t.Cpair[k13], std::max(D[1], D[3]))),
        pair_row(0, 3, std::min(t.Cpair[k14], std::max(D[1], D[2]))),
        pair_row(1, 2, std::min(t.Cpair[k23], std::max(D[0], D[3]))),
        pair_row(1, 3, std::min(t.Cpair[k24], std::max(D[0], D[2]))),
        single_row(0, std::min(C[0], D[1])),
        single_row(1, std::min(C[1], D[0])),
        single_row(2, std::min(C[2], D[3])),
        single_row(3, std::min(C[3], D[2])),
    });
}

HalfspaceSystem uplink_polytope(const CapacityTerms& t) {
    return HalfspaceSystem({
        pair_row(0, 2, t.Cpair[k13]),
        pair_row(0, 3, t.Cpair[k14]),
        pair_row(1, 2, t.Cpair[k23]),
        pair_row(1, 3, t.Cpair[k24]),
        single_row(0, t.C[0]),
        single_row(1, t.C[1]),
        single_row(2, t.C[2]),
        single_row(3, t.C[3]),
    });
}

bool case_ordering_holds(CaseLabel c, const Vec4& s) {
    switch (c) {
        case CaseLabel::I: return s[2] >= s[3] && s[3] >= s[0] && s[0] >= s[1];
        case CaseLabel::II: return s[2] >= s[0] && s[0] >= s[3] && s[3] >= s[1];
        case CaseLabel::III: return s[0] >= s[2] && s[2] >= s[3] && s[3] >= s[1];
    }
    return false;
}

HalfspaceSystem downlink_polytope(CaseLabel c, const CapacityTerms& t) {
    if (!case_ordering_holds(c, t.sigmaBar2)) {
        throw ValidationError("downlink_polytope: effective noise ordering does not match case " + to_string(c));
    }
    const Vec4& D = t.D;
    switch (c) {
        case CaseLabel::I:
            return HalfspaceSystem({pair_row(0, 2, D[1]), pair_row(0, 3, D[1]), pair_row(1, 2, D[0]),
                                    pair_row(1, 3, D[0]), single_row(2, D[3]), single_row(3, D[2])});
        case CaseLabel::II:
            return HalfspaceSystem({pair_row(0, 2, D[1]), pair_row(0, 3, D[1]), pair_row(1, 2, D[3]),
                                    pair_row(1, 3, D[0]), single_row(3, D[2])});
        case CaseLabel::III:
            return HalfspaceSystem({pair_row(0, 2, D[1]), pair_row(0, 3, D[1]), pair_row(1, 2, D[3]),
                                    pair_row(1, 3, D[2]), single_row(1, D[0])});
    }
    throw InternalError("downlink_polytope: unknown case");
}

HalfspaceSystem downlink_generic(const CapacityTerms& t) {
    const Vec4& D = t.D;
    return HalfspaceSystem({
        pair_row(0, 2, std::max(D[1], D[3])),
        pair_row(0, 3, std::max(D[1], D[2])),
        pair_row(1, 2, std::max(D[0], D[3])),
        pair_row(1, 3, std::max(D[0], D[2])),
        single_row(0, D[1]),
        single_row(1, D[0]),
        single_row(2, D[3]),
        single_row(3, D[2]),
    });
}

}  // namespace twrc
