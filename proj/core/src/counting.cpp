#include "latcurve/counting.hpp"

#include <chrono>
#include <stdexcept>

namespace latcurve {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

// integer a-range with a/q inside the domain
std::pair<long long, long long> a_range(const MongeCurve3& c, long long q) {
    auto lo = static_cast<long long>(std::ceil(c.domain.lo * q - 0.5));
    auto hi = static_cast<long long>(std::floor(c.domain.hi * q + 0.5));
    while (static_cast<double>(lo) / q < c.domain.lo) ++lo;
    while (lo > 0 && static_cast<double>(lo - 1) / q >= c.domain.lo) --lo;
    while (static_cast<double>(hi) / q > c.domain.hi) --hi;
    while (hi < q && static_cast<double>(hi + 1) / q <= c.domain.hi) ++hi;
    lo = std::max(lo, 0LL);
    hi = std::min(hi, q);
    return {lo, hi};
}

}  // namespace

CountResult count_near(const MongeCurve3& curve, long long q, double delta, CountMode mode) {
    if (q < 1) throw std::invalid_argument("count_near: q must be a positive integer");
    if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("count_near: delta must lie in (0, 1/2)");

    auto t0 = clock_type::now();
    auto [alo, ahi] = a_range(curve, q);

    CountResult res;
    res.q = q;
    res.delta = delta;

    if (mode == CountMode::Exact) {
        ExactDilation d1(curve.f1.poly(), q), d2(curve.f2.poly(), q);
        auto t1 = d1.threshold(delta);
        auto t2 = d2.threshold(delta);
        long long count = 0;
#pragma omp parallel for reduction(+ : count) schedule(dynamic, 65536)
        for (long long a = alo; a <= ahi; ++a)
            if (d1.below(a, t1) && d2.below(a, t2)) ++count;
        res.count_lo = res.count_hi = count;
        res.uncertain = 0;
        res.elapsed_ms = ms_since(t0);
        return res;
    }

    const double eps = counting_guard(q);
    const double dq = static_cast<double>(q);
    const auto& p1 = curve.f1.poly();
    const auto& p2 = curve.f2.poly();
    long long lo = 0, hi = 0;
#pragma omp parallel for reduction(+ : lo, hi) schedule(dynamic, 65536)
    for (long long a = alo; a <= ahi; ++a) {
        double x = static_cast<double>(a) / dq;
        double v1 = unit_distance(dq * p1.eval(x, 0));
        double v2 = unit_distance(dq * p2.eval(x, 0));
        if (v1 < delta - eps && v2 < delta - eps) ++lo;
        if (v1 < delta + eps && v2 < delta + eps) ++hi;
    }
    res.count_lo = lo;
    res.count_hi = hi;
    res.uncertain = hi - lo;
    res.elapsed_ms = ms_since(t0);
    return res;
}

long long count_on_curve(const MongeCurve3& curve, long long q) {
    if (q < 1) throw std::invalid_argument("count_on_curve: q must be a positive integer");
    auto [alo, ahi] = a_range(curve, q);
    ExactDilation d1(curve.f1.poly(), q), d2(curve.f2.poly(), q);
    long long count = 0;
#pragma omp parallel for reduction(+ : count) schedule(dynamic, 65536)
    for (long long a = alo; a <= ahi; ++a)
        if (d1.integral(a) && d2.integral(a)) ++count;
    return count;
}

}  // namespace latcurve
