#include "latcurve/planar_sums.hpp"

#include <cmath>
#include <stdexcept>

#include "latcurve/linearize.hpp"

namespace latcurve {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kMaxPairs = 1e8;  // desk-scale guardrail for the double loops

struct TRange {
    long long lo, hi;  // t with t/u in K, empty when lo > hi
};

TRange t_range(Interval K, long long u) {
    auto lo = static_cast<long long>(std::ceil(K.lo * u - 0.5));
    auto hi = static_cast<long long>(std::floor(K.hi * u + 0.5));
    while (static_cast<double>(lo) / u < K.lo) ++lo;
    while (static_cast<double>(lo - 1) / u >= K.lo) --lo;
    while (static_cast<double>(hi) / u > K.hi) --hi;
    while (static_cast<double>(hi + 1) / u <= K.hi) ++hi;
    return {lo, hi};
}

void check_budget(Interval K, double U) {
    double est = (K.width() * 2.0 * U + 2.0) * (U + 1.0);
    if (est > kMaxPairs)
        throw std::invalid_argument("lemma sum: index set above the 1e8 pair guardrail");
}

}  // namespace

LemmaSumReport lemma3_count(const PlanarCurve& phi, Interval K, double delta, double U,
                            double epsilon) {
    if (!(U >= 1.0)) throw std::invalid_argument("lemma3_count: U must be >= 1");
    if (!(delta > 0.0 && delta < 0.25))
        throw std::invalid_argument("lemma3_count: delta must lie in (0, 1/4)");
    check_budget(K, U);

    auto ulo = static_cast<long long>(std::ceil(U));
    auto uhi = static_cast<long long>(std::ceil(2.0 * U)) - 1;
    long long count = 0, pairs = 0;
#pragma omp parallel for reduction(+ : count, pairs) schedule(dynamic)
    for (long long u = ulo; u <= uhi; ++u) {
        TRange tr = t_range(K, u);
        for (long long t = tr.lo; t <= tr.hi; ++t) {
            ++pairs;
            double v = unit_distance(u * phi.f(static_cast<double>(t) / u));
            if (v < delta) ++count;
        }
    }

    LemmaSumReport rep;
    rep.U = U;
    rep.delta = delta;
    rep.param = epsilon;
    rep.value = static_cast<double>(count);
    rep.bound = std::pow(delta, 1.0 - epsilon) * U * U + U * std::log(2.0 * U);
    rep.ratio = rep.value / rep.bound;
    rep.pairs = pairs;
    return rep;
}

LemmaSumReport lemma4_sum(const PlanarCurve& phi, Interval K, double delta, double Lambda,
                          double U) {
    if (!(U >= 1.0)) throw std::invalid_argument("lemma4_sum: U must be >= 1");
    if (!(delta > 0.0 && delta < 0.25))
        throw std::invalid_argument("lemma4_sum: delta must lie in (0, 1/4)");
    if (!(Lambda > 0.0 && Lambda < 1.0))
        throw std::invalid_argument("lemma4_sum: Lambda must lie in (0, 1)");
    check_budget(K, U);

    auto ulo = static_cast<long long>(std::ceil(U));
    auto uhi = static_cast<long long>(std::ceil(2.0 * U)) - 1;
    std::vector<double> partial(uhi >= ulo ? static_cast<std::size_t>(uhi - ulo + 1) : 0, 0.0);
    long long pairs = 0;
#pragma omp parallel for reduction(+ : pairs) schedule(dynamic)
    for (long long u = ulo; u <= uhi; ++u) {
        TRange tr = t_range(K, u);
        double acc = 0.0;
        for (long long t = tr.lo; t <= tr.hi; ++t) {
            ++pairs;
            double v = unit_distance(u * phi.f(static_cast<double>(t) / u));
            if (v >= delta) acc += std::pow(v, -Lambda);
        }
        partial[static_cast<std::size_t>(u - ulo)] = acc;
    }

    LemmaSumReport rep;
    rep.U = U;
    rep.delta = delta;
    rep.param = Lambda;
    rep.value = tree_sum(std::move(partial));
    rep.bound = U * U + std::pow(delta, -Lambda) * U * std::log(2.0 * U);
    rep.ratio = rep.value / rep.bound;
    rep.pairs = pairs;
    return rep;
}

double linear_expsum(double gamma, long long N) {
    if (N <= 0) return 0.0;
    double dist = unit_distance(gamma);
    if (dist == 0.0) return static_cast<double>(N);
    double num = std::sin(kPi * unit_distance(static_cast<double>(N) * gamma));
    double den = std::sin(kPi * dist);
    return std::fabs(num) / den;
}

double error_term(const MongeCurve3& curve, long long q, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("error_term: delta must lie in (0, 1)");
    BlockParams bp = block_params(q, delta, curve.c4);
    if (!bp.valid) throw std::invalid_argument("error_term: degenerate block parameters");

    const auto J = static_cast<long long>(1.0 / delta);
    const auto q0d = static_cast<double>(bp.q0);
    std::vector<double> partial(static_cast<std::size_t>(bp.r + 1), 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long s = 0; s <= bp.r; ++s) {
        double x = static_cast<double>(bp.q0 * s) / static_cast<double>(q);
        double d1 = curve.f1.eval(x, 1);
        double d2 = curve.f2.eval(x, 1);
        double acc = 0.0;
        for (long long j1 = -J; j1 <= J; ++j1)
            for (long long j2 = -J; j2 <= J; ++j2) {
                if (j1 == 0 && j2 == 0) continue;
                double dist = unit_distance(static_cast<double>(j1) * d1 +
                                            static_cast<double>(j2) * d2);
                acc += dist > 0.0 ? std::min(q0d, 1.0 / dist) : q0d;
            }
        partial[static_cast<std::size_t>(s)] = acc;
    }
    return 9.0 * delta * delta * tree_sum(std::move(partial));
}

}  // namespace latcurve
