#pragma once

#include <map>
#include <optional>

#include "latcurve/curves.hpp"

namespace latcurve {

enum class ThetaClass { Theta1, Theta2 };

// One frequency pair (j1, j2) against a planar arc, carrying what the
// measure bounds need: the split |j1| > 2M|j2|, the stationary point x0
// of F = j1 x + j2 f (found through the dual curve), its value, and the
// admissible p window.
struct LevelSetQuery {
    PlanarCurve planar;
    long long j1 = 0;
    long long j2 = 0;
    double lambda = 0.0;
    ThetaClass theta_class = ThetaClass::Theta1;
    long long p_min = 0;
    long long p_max = -1;          // empty window when p_min > p_max
    std::optional<double> x0;      // Theta2 only; may lie outside I
    std::optional<double> F_x0;    // j2 * fstar(j1/j2)
    std::optional<long long> p0;   // -1/2 < F(x0) - p0 <= 1/2, ties down
    double C = 0.0;                // max_I (|x| + |f(x)| + 1)
};

LevelSetQuery classify(const PlanarCurve&, long long j1, long long j2, double lambda);

struct MeasureReport {
    double total = 0.0;
    std::map<long long, double> per_p;
    std::vector<Interval> intervals;  // disjoint, sorted by position
};

// |{x in I : ||j1 x + j2 f(x)|| < lambda}| by per-level root isolation.
// F is linear (j2 = 0) or strictly convex/concave on I, so I splits at
// x0 into at most two monotone pieces with one root per level value
// each; roots by bisection to ~1e-13.
MeasureReport measure_sublevel(const LevelSetQuery&);

struct PropSumResult {
    int J = 0;
    double lambda = 0.0;
    double sum = 0.0;    // over (j1,j2) in [-J,J]^2 \ {(0,0)}
    double bound = 0.0;  // lambda J^2 + sqrt(lambda J) log J  (log floored at 1)
    double ratio = 0.0;
};
PropSumResult prop_sum(const PlanarCurve&, int J, double lambda);

// Measured per-p masses next to the analytic per-cell bound that applies
// to the cell's class, and their ratios.
struct CellBound {
    long long p = 0;
    double measure = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    bool is_p0 = false;
};
struct CellDiagnostics {
    ThetaClass theta_class = ThetaClass::Theta1;
    std::vector<CellBound> cells;
    double max_ratio = 0.0;
};
CellDiagnostics cell_bound_check(const LevelSetQuery&);

}  // namespace latcurve
