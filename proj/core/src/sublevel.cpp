#include "latcurve/sublevel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace latcurve {

namespace {

double F_of(const LevelSetQuery& q, double x) {
    return static_cast<double>(q.j1) * x + static_cast<double>(q.j2) * q.planar.f(x);
}

// Monotone piece of F over [a, b] c I.
struct Piece {
    double a, b;    // x-range
    double Fa, Fb;  // F at the ends
    bool increasing;
};

std::vector<Piece> monotone_pieces(const LevelSetQuery& q) {
    const Interval I = q.planar.I;
    std::vector<std::pair<double, double>> spans;
    if (q.j2 != 0 && q.x0 && *q.x0 > I.lo && *q.x0 < I.hi) {
        spans = {{I.lo, *q.x0}, {*q.x0, I.hi}};
    } else {
        spans = {{I.lo, I.hi}};
    }
    std::vector<Piece> out;
    for (auto [a, b] : spans) {
        Piece p{a, b, F_of(q, a), F_of(q, b), false};
        p.increasing = p.Fb >= p.Fa;
        out.push_back(p);
    }
    return out;
}

}  // namespace

LevelSetQuery classify(const PlanarCurve& planar, long long j1, long long j2, double lambda) {
    if (j1 == 0 && j2 == 0) throw std::invalid_argument("classify: (j1, j2) must be nonzero");
    if (!(lambda > 0.0 && lambda < 0.5))
        throw std::invalid_argument("classify: lambda must lie in (0, 1/2)");

    LevelSetQuery q;
    q.planar = planar;
    q.j1 = j1;
    q.j2 = j2;
    q.lambda = lambda;
    q.C = 1.01 * grid_max([&](double x) { return std::fabs(x) + std::fabs(planar.f(x)) + 1.0; },
                          planar.I, 10000);

    bool theta1 =
        std::fabs(static_cast<double>(j1)) > 2.0 * planar.M * std::fabs(static_cast<double>(j2));
    q.theta_class = theta1 ? ThetaClass::Theta1 : ThetaClass::Theta2;

    if (q.theta_class == ThetaClass::Theta2) {
        DualCurve dual = dual_curve(planar);
        double y = static_cast<double>(j1) / static_cast<double>(j2);
        double x0 = dual.g(y);
        double Fx0 = static_cast<double>(j2) * dual.fstar(y);
        q.x0 = x0;
        q.F_x0 = Fx0;
        q.p0 = static_cast<long long>(std::ceil(Fx0 - 0.5));
    }

    // admissible p: the window around the actual range of F over I,
    // always inside |p| <= C max(|j1|, |j2|)
    double Fmin = std::min(F_of(q, planar.I.lo), F_of(q, planar.I.hi));
    double Fmax = std::max(F_of(q, planar.I.lo), F_of(q, planar.I.hi));
    if (q.x0 && planar.I.contains(*q.x0)) {
        double Fc = F_of(q, *q.x0);
        Fmin = std::min(Fmin, Fc);
        Fmax = std::max(Fmax, Fc);
    }
    auto cap = static_cast<long long>(std::ceil(q.C * std::max(std::llabs(j1), std::llabs(j2))));
    q.p_min = std::max(static_cast<long long>(std::ceil(Fmin - lambda)), -cap);
    q.p_max = std::min(static_cast<long long>(std::floor(Fmax + lambda)), cap);
    return q;
}

MeasureReport measure_sublevel(const LevelSetQuery& q) {
    if (!(q.lambda > 0.0 && q.lambda < 0.5))
        throw std::invalid_argument("measure_sublevel: lambda must lie in (0, 1/2)");
    if (q.j1 == 0 && q.j2 == 0) throw std::invalid_argument("measure_sublevel: zero frequency pair");

    MeasureReport rep;
    std::vector<std::pair<long long, Interval>> raw;  // (p, x-interval)

    auto F = [&](double x) { return F_of(q, x); };

    for (const Piece& piece : monotone_pieces(q)) {
        double lo = std::min(piece.Fa, piece.Fb);
        double hi = std::max(piece.Fa, piece.Fb);

        // Roots arrive in monotone x-order as the p sweep advances, so
        // the unsearched bracket shrinks as we go.
        double cur_lo = piece.a, cur_hi = piece.b;
        auto invert = [&](double v) {
            if (v <= lo) return piece.increasing ? piece.a : piece.b;
            if (v >= hi) return piece.increasing ? piece.b : piece.a;
            double x = bisect_monotone(F, cur_lo, cur_hi, v);
            if (piece.increasing)
                cur_lo = x;
            else
                cur_hi = x;
            return x;
        };

        if (piece.increasing) {
            for (long long p = q.p_min; p <= q.p_max; ++p) {
                double vlo = static_cast<double>(p) - q.lambda;
                double vhi = static_cast<double>(p) + q.lambda;
                if (vhi <= lo || vlo >= hi) continue;
                double xl = invert(vlo);
                double xr = invert(vhi);
                if (xr > xl) raw.push_back({p, {xl, xr}});
            }
        } else {
            // decreasing: sweep p downward so roots still advance in x
            for (long long p = q.p_max; p >= q.p_min; --p) {
                double vlo = static_cast<double>(p) - q.lambda;
                double vhi = static_cast<double>(p) + q.lambda;
                if (vhi <= lo || vlo >= hi) continue;
                double xl = invert(vhi);
                double xr = invert(vlo);
                if (xr > xl) raw.push_back({p, {xl, xr}});
            }
        }
    }

    for (const auto& [p, iv] : raw) rep.per_p[p] += iv.width();

    // merge x-intervals that touch across the x0 split
    std::sort(raw.begin(), raw.end(),
              [](const auto& u, const auto& v) { return u.second.lo < v.second.lo; });
    for (const auto& [p, iv] : raw) {
        if (!rep.intervals.empty() && iv.lo <= rep.intervals.back().hi + 1e-12)
            rep.intervals.back().hi = std::max(rep.intervals.back().hi, iv.hi);
        else
            rep.intervals.push_back(iv);
    }
    for (const auto& iv : rep.intervals) rep.total += iv.width();
    return rep;
}

PropSumResult prop_sum(const PlanarCurve& planar, int J, double lambda) {
    if (J < 2) throw std::invalid_argument("prop_sum: J must be >= 2");
    if (!(lambda > 0.0 && lambda < 0.5))
        throw std::invalid_argument("prop_sum: lambda must lie in (0, 1/2)");

    // ||t|| = ||-t||, so (j1, j2) and (-j1, -j2) contribute equally;
    // enumerate the j2 > 0 half plane plus the positive j1 axis, double.
    struct Cell {
        long long j1, j2;
    };
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(2 * J) * J + J);
    for (long long j2 = 1; j2 <= J; ++j2)
        for (long long j1 = -J; j1 <= J; ++j1) cells.push_back({j1, j2});
    for (long long j1 = 1; j1 <= J; ++j1) cells.push_back({j1, 0});

    std::vector<double> totals(cells.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t i = 0; i < cells.size(); ++i) {
        LevelSetQuery q = classify(planar, cells[i].j1, cells[i].j2, lambda);
        totals[i] = measure_sublevel(q).total;
    }

    PropSumResult res;
    res.J = J;
    res.lambda = lambda;
    res.sum = 2.0 * tree_sum(std::move(totals));
    double logJ = std::max(std::log(static_cast<double>(J)), 1.0);
    res.bound = lambda * J * static_cast<double>(J) +
                std::sqrt(lambda) * std::sqrt(static_cast<double>(J)) * logJ;
    res.ratio = res.sum / res.bound;
    return res;
}

CellDiagnostics cell_bound_check(const LevelSetQuery& q) {
    CellDiagnostics diag;
    diag.theta_class = q.theta_class;
    MeasureReport rep = measure_sublevel(q);

    double aj2 = std::fabs(static_cast<double>(q.j2));
    for (long long p = q.p_min; p <= q.p_max; ++p) {
        CellBound cb;
        cb.p = p;
        auto it = rep.per_p.find(p);
        cb.measure = it == rep.per_p.end() ? 0.0 : it->second;
        if (q.theta_class == ThetaClass::Theta1) {
            // |F'| >= |j1|/2 on I
            cb.bound = 2.0 * q.lambda / std::fabs(static_cast<double>(q.j1));
        } else {
            cb.is_p0 = q.p0 && p == *q.p0;
            if (cb.is_p0) {
                double dist = unit_distance(*q.F_x0);
                cb.bound = dist >= 2.0 * q.lambda ? q.lambda / std::sqrt(aj2 * dist)
                                                  : std::sqrt(q.lambda / aj2);
            } else {
                double gap = std::fabs(static_cast<double>(p - *q.p0));
                cb.bound = q.lambda / std::sqrt(aj2 * gap / 3.0);
            }
        }
        cb.ratio = cb.measure / cb.bound;
        diag.max_ratio = std::max(diag.max_ratio, cb.ratio);
        diag.cells.push_back(cb);
    }
    return diag;
}

}  // namespace latcurve
