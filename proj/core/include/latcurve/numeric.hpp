#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace latcurve {

// Distance from t to the nearest integer, in [0, 1/2].
inline double unit_distance(double t) {
    return std::fabs(t - std::nearbyint(t));
}

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    bool contains(double x) const { return x >= lo && x <= hi; }
};

// Error-free transforms (Knuth / Dekker).
inline void two_sum(double a, double b, double& s, double& err) {
    s = a + b;
    double z = s - a;
    err = (a - (s - z)) + (b - z);
}

inline void two_prod(double a, double b, double& p, double& err) {
    p = a * b;
    err = std::fma(a, b, -p);
}

// Compensated Horner for sum c[k] x^k, coefficients ascending. Keeps the
// running rounding error in a second double, which matters here because
// the leading part of q*f(a/q) can be ~1e7 while only the fractional
// part is kept.
inline double horner_compensated(const std::vector<double>& c, double x) {
    if (c.empty()) return 0.0;
    double s = c.back();
    double comp = 0.0;
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        double p, pe, t, te;
        two_prod(s, x, p, pe);
        two_sum(p, c[k], t, te);
        comp = comp * x + (pe + te);
        s = t;
    }
    return s + comp;
}

// Root of f(x) = target on [lo, hi] for strictly monotone f with the
// target bracketed. Converges to ~1e-13 interval width.
inline double bisect_monotone(const std::function<double(double)>& f,
                              double lo, double hi, double target) {
    if (!(lo <= hi)) throw std::invalid_argument("bisect_monotone: bad bracket");
    bool increasing = f(hi) >= f(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // double resolution reached
        bool go_right = increasing ? (f(mid) < target) : (f(mid) > target);
        if (go_right)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Deterministic pairwise reduction. Callers fill per-task slots in
// parallel and reduce serially, so the result does not depend on thread
// count or scheduling.
inline double tree_sum(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::size_t n = v.size();
    while (n > 1) {
        std::size_t half = (n + 1) / 2;
        for (std::size_t i = 0; i + half < n; ++i) v[i] += v[i + half];
        n = half;
    }
    return v[0];
}

inline double grid_max(const std::function<double(double)>& f, Interval I, int n = 10000) {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        double x = I.lo + (I.hi - I.lo) * i / n;
        best = std::max(best, f(x));
    }
    return best;
}

inline double grid_min(const std::function<double(double)>& f, Interval I, int n = 10000) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        double x = I.lo + (I.hi - I.lo) * i / n;
        best = std::min(best, f(x));
    }
    return best;
}

}  // namespace latcurve
