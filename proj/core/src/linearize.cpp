#include "latcurve/linearize.hpp"

#include <cmath>
#include <stdexcept>

namespace latcurve {

BlockParams block_params(long long q, double delta, double c4) {
    if (q < 1) throw std::invalid_argument("block_params: q must be positive");
    if (!(delta > 0.0)) throw std::invalid_argument("block_params: delta must be positive");
    if (!(c4 >= 1.0)) throw std::invalid_argument("block_params: c4 must be >= 1");

    BlockParams bp;
    double x = delta * static_cast<double>(q) / (2.0 * c4);
    if (x < 1.0) return bp;  // q0 = 0, reported as invalid rather than thrown

    auto q0 = static_cast<long long>(std::floor(std::sqrt(x)));
    while (static_cast<double>(q0 + 1) * static_cast<double>(q0 + 1) <= x) ++q0;
    while (q0 > 0 && static_cast<double>(q0) * static_cast<double>(q0) > x) --q0;
    bp.q0 = q0;
    bp.valid = q0 >= 1;
    bp.r = bp.valid ? q / q0 : 0;
    return bp;
}

namespace {

BlockCount block_at(const MongeCurve3& curve, long long q, double delta, long long q0,
                    long long s) {
    double x = static_cast<double>(q0 * s) / static_cast<double>(q);
    double base1 = static_cast<double>(q) * curve.f1.eval(x, 0);
    double base2 = static_cast<double>(q) * curve.f2.eval(x, 0);
    double slope1 = curve.f1.eval(x, 1);
    double slope2 = curve.f2.eval(x, 1);
    const double eps = counting_guard(q);

    BlockCount bc;
    for (long long a0 = 0; a0 < q0; ++a0) {
        double v1 = unit_distance(base1 + static_cast<double>(a0) * slope1);
        double v2 = unit_distance(base2 + static_cast<double>(a0) * slope2);
        if (v1 < delta - eps && v2 < delta - eps) ++bc.lo;
        if (v1 < delta + eps && v2 < delta + eps) ++bc.hi;
    }
    return bc;
}

void require_full_domain(const MongeCurve3& curve) {
    if (curve.domain.lo != 0.0 || curve.domain.hi != 1.0)
        throw std::invalid_argument("block decomposition expects a curve on the full domain [0,1]");
}

}  // namespace

BlockCount count_block(const MongeCurve3& curve, long long q, double delta, long long s) {
    require_full_domain(curve);
    BlockParams bp = block_params(q, delta, curve.c4);
    if (!bp.valid) throw std::invalid_argument("count_block: degenerate block parameters");
    if (s < 0 || s > bp.r) throw std::invalid_argument("count_block: s outside [0, r]");
    return block_at(curve, q, delta, bp.q0, s);
}

Aggregates aggregate(const MongeCurve3& curve, long long q, double delta) {
    require_full_domain(curve);
    Aggregates agg;
    agg.bp = block_params(q, delta, curve.c4);
    if (!agg.bp.valid) throw std::invalid_argument("aggregate: degenerate block parameters");

    long long b1lo = 0, b1hi = 0, b2lo = 0, b2hi = 0;
    const long long r = agg.bp.r;
    const long long q0 = agg.bp.q0;
#pragma omp parallel for reduction(+ : b1lo, b1hi, b2lo, b2hi) schedule(dynamic, 64)
    for (long long s = 0; s <= r; ++s) {
        BlockCount bc = block_at(curve, q, delta, q0, s);
        b1lo += bc.lo;
        b1hi += bc.hi;
        if (s < r) {
            b2lo += bc.lo;
            b2hi += bc.hi;
        }
    }
    agg.B1 = {b1lo, b1hi};
    agg.B2 = {b2lo, b2hi};
    return agg;
}

SandwichReport sandwich_check(const MongeCurve3& curve, long long q, double delta,
                              CountMode mode) {
    SandwichReport rep;
    rep.q = q;
    rep.delta = delta;
    if (!block_params(q, delta / 2.0, curve.c4).valid)
        throw std::invalid_argument("sandwich_check: q0(delta/2) < 1, blocks degenerate");

    rep.b2_half = aggregate(curve, q, delta / 2.0).B2.lo;
    rep.b1_threehalf = aggregate(curve, q, 1.5 * delta).B1.hi;
    rep.a_mid = count_near(curve, q, delta, mode);
    rep.holds = rep.b2_half <= rep.a_mid.count_lo && rep.a_mid.count_hi <= rep.b1_threehalf;
    return rep;
}

}  // namespace latcurve
