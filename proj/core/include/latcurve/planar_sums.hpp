#pragma once

#include "latcurve/curves.hpp"

namespace latcurve {

struct LemmaSumReport {
    double U = 1.0;
    double delta = 0.0;
    double param = 0.0;  // epsilon for the count, Lambda for the sum
    double value = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    long long pairs = 0;  // size of the scanned (u, t) index set
};

// #{(u, t) : U <= u < 2U, t/u in K, ||u phi(t/u)|| < delta};
// bound = delta^(1-eps) U^2 + U log(2U).
LemmaSumReport lemma3_count(const PlanarCurve& phi, Interval K, double delta, double U,
                            double epsilon = 0.1);

// sum of ||u phi(t/u)||^(-Lambda) over the same u range but
// ||u phi(t/u)|| >= delta; bound = U^2 + delta^(-Lambda) U log(2U).
LemmaSumReport lemma4_sum(const PlanarCurve& phi, Interval K, double delta, double Lambda,
                          double U);

// |sum_{n=0}^{N-1} e(n gamma)| by the closed form |sin(pi N gamma) / sin(pi gamma)|
// (= N for integral gamma). Satisfies <= min(N, ||gamma||^{-1}).
double linear_expsum(double gamma, long long N);

// E(q, delta) = 9 delta^2 sum_{0<=s<=r} sum_{(j1,j2) != 0, |ji| <= J}
//               min(q0, ||j1 f1'(q0 s/q) + j2 f2'(q0 s/q)||^{-1}),
// with J = floor(1/delta) and q0, r the block parameters for delta.
double error_term(const MongeCurve3&, long long q, double delta);

}  // namespace latcurve
