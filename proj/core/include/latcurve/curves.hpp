#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latcurve/numeric.hpp"
#include "latcurve/poly.hpp"

namespace latcurve {

// One coordinate function of a space curve. v1 curves are polynomial
// with rational coefficients, which keeps an exact evaluation path
// available for the counting module.
class MongeComponent {
public:
    MongeComponent() = default;  // zero function
    explicit MongeComponent(RationalPoly p) : poly_(std::move(p)) {}

    double eval(double x, int order) const { return poly_.eval(x, order); }
    const RationalPoly& poly() const { return poly_; }

private:
    RationalPoly poly_;
};

// Space curve (x, f1(x), f2(x)) on a closed subinterval of [0,1].
//
// c4 >= 1 dominates |fi^(k)| for k <= 3 on the domain; c3 is a certified
// lower bound for |f1''| there. torsion_min_abs is the grid minimum of
// |f1'' f2''' - f2'' f1'''| -- measured data, not a symbolic proof.
struct MongeCurve3 {
    std::string id;
    MongeComponent f1, f2;
    Interval domain{0.0, 1.0};
    double c3 = 0.0;
    double c4 = 1.0;
    bool torsion_certified = false;
    double torsion_min_abs = 0.0;
};

MongeCurve3 make_curve(std::string id, RationalPoly f1, RationalPoly f2,
                       Interval domain = {0.0, 1.0},
                       std::optional<double> c3 = {}, std::optional<double> c4 = {});

// f_component^(order)(x); throws std::domain_error outside the domain.
double eval_derivatives(const MongeCurve3&, double x, int component, int order);

// f1''(x) f2'''(x) - f2''(x) f1'''(x)
double torsion(const MongeCurve3&, double x);

// (f1'' f2''' - f2'' f1''') / (f1'')^3; the second derivative of
// f2' o (f1')^{-1} expressed through the curve.
double dual_composition(const MongeCurve3&, double x);

const MongeCurve3& builtin_curve(const std::string& id);  // veronese | embedded_parabola | generic_cubic
std::vector<std::string> builtin_curve_ids();

// key = value file: id, f1_coeffs, f2_coeffs, optional domain / c3 / c4
MongeCurve3 load_curve_file(const std::string& path);
// builtin id, else a path to a curve file
MongeCurve3 resolve_curve(const std::string& spec);

MongeCurve3 swap_components(const MongeCurve3&);

// Maximal domain segments on which |f1''| (kept) or |f2''| (swapped)
// clears the threshold on a grid.
struct DominantSegment {
    MongeCurve3 curve;
    bool swapped = false;
};
std::vector<DominantSegment> split_dominant(const MongeCurve3&, double c3_min, int grid = 4096);

// ---------------------------------------------------------------------------

// Planar arc f on I = [xi, eta] with 0 < c1 <= |f''| <= c2 on I and
// M = 1 + max_I |f'|. Function-backed so polynomials, Taylor
// continuations, duals and induced curves share one type. Immutable
// after construction; copies are cheap and safe to share across threads.
struct PlanarCurve {
    std::string id;
    std::function<double(double)> f, df, d2f;
    Interval I{0.0, 1.0};
    double c1 = 0.0, c2 = 0.0;
    double M = 1.0;
    bool extended = false;  // evaluators valid on all of R
};

// coefficients ascending; c1/c2/M certified on a grid unless provided
PlanarCurve make_planar(std::string id, std::vector<double> coeffs, Interval I,
                        std::optional<double> c1 = {}, std::optional<double> c2 = {},
                        std::optional<double> M = {});

const PlanarCurve& builtin_planar(const std::string& id);  // x2 | x2_half | x2_x3_mix
std::vector<std::string> builtin_planar_ids();

// Quadratic Taylor continuation beyond the endpoints of I. C^2 on R, and
// f'' keeps the same bounds c1 <= |f''| <= c2 globally.
PlanarCurve extend(const PlanarCurve&);

// Dual pair: g inverts -f' on the extension (so f'(g(y)) = -y), and
// fstar(y) = y g(y) + f(g(y)).
struct DualCurve {
    PlanarCurve base;  // extended
    std::function<double(double)> g, fstar;
    Interval K;       // [-2M, 2M]
    Interval Iprime;  // g(K)
};
DualCurve dual_curve(const PlanarCurve&);

// fstar restricted to K as a PlanarCurve; (fstar)' = g and
// |fstar''| = |g'| lies in [1/c2, 1/c1].
PlanarCurve planar_from_dual(const DualCurve&, std::string id);

// f2' o (f1')^{-1} on [f1'(lo), f1'(hi)]; needs |f1''| >= c3 > 0.
PlanarCurve induced_planar(const MongeCurve3&);

// "x2" | "dual:x2" | "induced:veronese"
PlanarCurve resolve_planar(const std::string& spec);

// shared key = value parser ('#' comments, blank lines ignored)
std::map<std::string, std::string> parse_kv_file(const std::string& path);

}  // namespace latcurve
