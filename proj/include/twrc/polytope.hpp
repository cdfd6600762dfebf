#pragma once

#include <optional>
#include <vector>

#include "twrc/model.hpp"

namespace twrc {

struct Row {
    Vec4 a{};
    double b = 0.0;
};

// a.R <= b rows in R^4 plus the implicit rows -R_i <= 0, which are appended
// after the explicit rows (indices m..m+3) in all_rows() and tight sets.
class HalfspaceSystem {
public:
    HalfspaceSystem() = default;
    // Throws ValidationError for a non-finite b or a coordinate without a
    // finite upper constraint.
    explicit HalfspaceSystem(std::vector<Row> rows);

    const std::vector<Row>& rows() const { return rows_; }
    std::vector<Row> all_rows() const;

private:
    std::vector<Row> rows_;
};

struct VertexSet {
    std::vector<RateTuple> vertices;
    std::vector<std::vector<int>> tight_sets;
};

VertexSet enumerate_vertices(const HalfspaceSystem& sys);

// Definition-1 maximal vertices: those not dominated by another vertex.
VertexSet maximal_vertices(const VertexSet& vs);

bool contains(const HalfspaceSystem& sys, const RateTuple& p, double tol = kTightTol);

struct HullMargin {
    double margin = 0.0;  // max over lambda of min_i (sum_j lambda_j p_j - target)_i
    std::vector<double> lambda;
};

// Throws ValidationError for an empty point set.
HullMargin hull_margin(const std::vector<RateTuple>& points, const RateTuple& target);

// Weights lambda (>= 0, summing to 1) with sum_j lambda_j p_j >= target - tol,
// or nullopt when none exist. The weights
// returned are the max-margin ones.
std::optional<std::vector<double>> downward_hull_weights(const std::vector<RateTuple>& points,
                                                         const RateTuple& target,
                                                         double tol = kTightTol);

bool in_downward_hull(const std::vector<RateTuple>& points, const RateTuple& target,
                      double tol = kTightTol);

bool lex_less(const RateTuple& x, const RateTuple& y);
double linf(const RateTuple& x, const RateTuple& y);

// Set equality up to an L-infinity tolerance.
bool same_point_set(const std::vector<RateTuple>& x, const std::vector<RateTuple>& y, double tol);

}  // namespace twrc
