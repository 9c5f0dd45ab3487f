#pragma once

#include "latcurve/curves.hpp"

namespace latcurve {

// Half-width of the floating-path guard band around the threshold.
inline double counting_guard(long long q) {
    return 1e-9 * std::max(static_cast<double>(q), 1e3);
}

// Certified count interval. count_lo counts points that clear the
// threshold by more than the guard band on both coordinates; count_hi
// additionally includes every guard-band candidate, so the true count
// always lies in [count_lo, count_hi].
struct CountResult {
    long long q = 0;
    double delta = 0.0;
    long long count_lo = 0;
    long long count_hi = 0;
    long long uncertain = 0;  // count_hi - count_lo
    double elapsed_ms = 0.0;
};

enum class CountMode { Float, Exact };

// A(q, delta) = #{a in [0,q] integer, a/q in the domain :
//               ||q f1(a/q)|| < delta and ||q f2(a/q)|| < delta}.
// The exact mode compares rationals against the binary expansion of
// delta, so count_lo == count_hi there.
CountResult count_near(const MongeCurve3&, long long q, double delta,
                       CountMode mode = CountMode::Float);

// #{a : q f1(a/q) and q f2(a/q) both integral}; exact arithmetic.
long long count_on_curve(const MongeCurve3&, long long q);

}  // namespace latcurve
