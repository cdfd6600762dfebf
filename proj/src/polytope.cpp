#include "twrc/polytope.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace twrc {

HalfspaceSystem::HalfspaceSystem(std::vector<Row> rows) : rows_(std::move(rows)) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (!std::isfinite(rows_[k].b)) {
            throw ValidationError("row " + std::to_string(k) + ": right-hand side is not finite");
        }
        for (double c : rows_[k].a) {
            if (!std::isfinite(c)) throw ValidationError("row " + std::to_string(k) + ": coefficient is not finite");
        }
    }
    // Over the orthant a row with a >= 0 and a_i > 0 bounds R_i from above.
    for (int i = 0; i < 4; ++i) {
        bool bounded = false;
        for (const Row& r : rows_) {
            const bool nonneg = std::all_of(r.a.begin(), r.a.end(), [](double c) { return c >= 0.0; });
            if (nonneg && r.a[i] > 0.0) bounded = true;
        }
        if (!bounded) throw ValidationError("unbounded system: R" + std::to_string(i + 1) + " has no upper constraint");
    }
}

std::vector<Row> HalfspaceSystem::all_rows() const {
    std::vector<Row> out = rows_;
    for (int i = 0; i < 4; ++i) {
        Row r;
        r.a[i] = -1.0;
        out.push_back(r);
    }
    return out;
}

namespace {

double dot(const Vec4& a, const Vec4& x) { return a[0] * x[0] + a[1] * x[1] + a[2] * x[2] + a[3] * x[3]; }

std::vector<int> active_rows(const std::vector<Row>& rows, const Vec4& x) {
    std::vector<int> act;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (std::fabs(dot(rows[k].a, x) - rows[k].b) <= kTightTol) act.push_back(static_cast<int>(k));
    }
    return act;
}

}  // namespace

bool lex_less(const RateTuple& x, const RateTuple& y) { return x.r < y.r; }

double linf(const RateTuple& x, const RateTuple& y) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::fabs(x[i] - y[i]));
    return d;
}

VertexSet enumerate_vertices(const HalfspaceSystem& sys) {
    const std::vector<Row> rows = sys.all_rows();
    const int m = static_cast<int>(rows.size());
    std::vector<Vec4> found;

    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k)
                for (int l = k + 1; l < m; ++l) {
                    Eigen::Matrix4d A;
                    Eigen::Vector4d b;
                    const int idx[4] = {i, j, k, l};
                    for (int r = 0; r < 4; ++r) {
                        for (int c = 0; c < 4; ++c) A(r, c) = rows[idx[r]].a[c];
                        b(r) = rows[idx[r]].b;
                    }
                    Eigen::FullPivLU<Eigen::Matrix4d> lu(A);
                    lu.setThreshold(1e-12);
                    if (lu.rank() < 4) continue;
                    const Eigen::Vector4d x = lu.solve(b);
                    Vec4 v{x(0), x(1), x(2), x(3)};
                    bool feasible = true;
                    for (const Row& r : rows) {
                        if (dot(r.a, v) > r.b + kTightTol) {
                            feasible = false;
                            break;
                        }
                    }
                    if (!feasible) continue;
                    for (double& c : v)
                        if (std::fabs(c) < kClampTol) c = 0.0;
                    const bool dup = std::any_of(found.begin(), found.end(), [&](const Vec4& w) {
                        return linf(RateTuple{w}, RateTuple{v}) <= kDedupTol;
                    });
                    if (!dup) found.push_back(v);
                }

    std::sort(found.begin(), found.end());
    VertexSet out;
    for (const Vec4& v : found) {
        out.vertices.push_back(RateTuple{v});
        out.tight_sets.push_back(active_rows(rows, v));
    }
    return out;
}

VertexSet maximal_vertices(const VertexSet& vs) {
    VertexSet out;
    const std::size_t n = vs.vertices.size();
    for (std::size_t a = 0; a < n; ++a) {
        const RateTuple& v = vs.vertices[a];
        bool dominated = false;
        for (std::size_t b = 0; b < n && !dominated; ++b) {
            if (a == b) continue;
            const RateTuple& w = vs.vertices[b];
            bool geq = true;
            bool strict = false;
            for (int i = 0; i < 4; ++i) {
                if (w[i] < v[i] - kTightTol) geq = false;
                if (w[i] > v[i] + kTightTol) strict = true;
            }
            dominated = geq && strict;
        }
        if (!dominated) {
            out.vertices.push_back(v);
            out.tight_sets.push_back(a < vs.tight_sets.size() ? vs.tight_sets[a] : std::vector<int>{});
        }
    }
    return out;
}

bool contains(const HalfspaceSystem& sys, const RateTuple& p, double tol) {
    for (int i = 0; i < 4; ++i)
        if (p[i] < -tol) return false;
    for (const Row& r : sys.rows())
        if (dot(r.a, p.r) > r.b + tol) return false;
    return true;
}

namespace {

void combinations(int n, int k, int start, std::vector<int>& cur, const std::function<void()>& f) {
    if (static_cast<int>(cur.size()) == k) {
        f();
        return;
    }
    for (int j = start; j < n; ++j) {
        cur.push_back(j);
        combinations(n, k, j + 1, cur, f);
        cur.pop_back();
    }
}

}  // namespace

HullMargin hull_margin(const std::vector<RateTuple>& points, const RateTuple& target) {
    // max t s.t. sum_j lambda_j p_j >= target + t, lambda in the simplex. The
    // optimum sits at a vertex with k points in the support and k tight
    // components, so small supports are enumerated and each candidate is scored
    // by evaluating its margin directly.
    const int n = static_cast<int>(points.size());
    if (n == 0) throw ValidationError("hull_margin: empty point set");
    HullMargin best;
    best.margin = -std::numeric_limits<double>::infinity();
    auto consider = [&](std::vector<double> lambda) {
        double sum = 0.0;
        for (double& l : lambda) {
            l = std::max(0.0, l);
            sum += l;
        }
        if (!(sum > 0.0)) return;
        for (double& l : lambda) l /= sum;
        double m = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 4; ++i) {
            double v = 0.0;
            for (int j = 0; j < n; ++j) v += lambda[j] * points[j][i];
            m = std::min(m, v - target[i]);
        }
        if (m > best.margin) {
            best.margin = m;
            best.lambda = std::move(lambda);
        }
    };

    std::vector<int> support, comps;
    for (int k = 1; k <= std::min(n, 4); ++k) {
        combinations(n, k, 0, support, [&] {
            combinations(4, k, 0, comps, [&] {
                Eigen::MatrixXd A = Eigen::MatrixXd::Zero(k + 1, k + 1);
                Eigen::VectorXd b(k + 1);
                for (int r = 0; r < k; ++r) {
                    for (int c = 0; c < k; ++c) A(r, c) = points[support[c]][comps[r]];
                    A(r, k) = -1.0;
                    b(r) = target[comps[r]];
                }
                for (int c = 0; c < k; ++c) A(k, c) = 1.0;
                b(k) = 1.0;
                Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
                if (lu.rank() < k + 1) return;
                const Eigen::VectorXd x = lu.solve(b);
                for (int c = 0; c < k; ++c)
                    if (x(c) < -kClampTol) return;
                std::vector<double> lambda(n, 0.0);
                for (int c = 0; c < k; ++c) lambda[support[c]] = x(c);
                consider(std::move(lambda));
            });
        });
    }
    return best;
}

std::optional<std::vector<double>> downward_hull_weights(const std::vector<RateTuple>& points,
                                                         const RateTuple& target, double tol) {
    if (points.empty()) return std::nullopt;
    HullMargin h = hull_margin(points, target);
    if (h.margin < -tol) return std::nullopt;
    return std::move(h.lambda);
}

bool in_downward_hull(const std::vector<RateTuple>& points, const RateTuple& target, double tol) {
    return downward_hull_weights(points, target, tol).has_value();
}

bool same_point_set(const std::vector<RateTuple>& x, const std::vector<RateTuple>& y, double tol) {
    auto covered = [tol](const std::vector<RateTuple>& from, const std::vector<RateTuple>& into) {
        return std::all_of(from.begin(), from.end(), [&](const RateTuple& p) {
            return std::any_of(into.begin(), into.end(), [&](const RateTuple& q) { return linf(p, q) <= tol; });
        });
    };
    return covered(x, y) && covered(y, x);
}

}  // namespace twrc
