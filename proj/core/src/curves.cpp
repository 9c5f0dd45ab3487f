#include "latcurve/curves.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace latcurve {

namespace {

constexpr int kCertGrid = 10000;
constexpr double kInflate = 1.01;

double grid_max_abs_deriv(const MongeComponent& f, Interval I, int order) {
    return grid_max([&](double x) { return std::fabs(f.eval(x, order)); }, I, kCertGrid);
}

void check_domain(const MongeCurve3& c, double x) {
    if (!c.domain.contains(x)) {
        std::ostringstream msg;
        msg << "x = " << x << " outside the domain [" << c.domain.lo << ", " << c.domain.hi
            << "] of curve '" << c.id << "'";
        throw std::domain_error(msg.str());
    }
}

}  // namespace

MongeCurve3 make_curve(std::string id, RationalPoly f1, RationalPoly f2, Interval domain,
                       std::optional<double> c3, std::optional<double> c4) {
    if (!(domain.lo >= 0.0 && domain.hi <= 1.0 && domain.lo < domain.hi))
        throw std::invalid_argument("curve domain must be a nondegenerate subinterval of [0,1]");

    MongeCurve3 c;
    c.id = std::move(id);
    c.f1 = MongeComponent(std::move(f1));
    c.f2 = MongeComponent(std::move(f2));
    c.domain = domain;

    double max_norm = 1.0;
    for (int k = 0; k <= 3; ++k) {
        max_norm = std::max(max_norm, grid_max_abs_deriv(c.f1, domain, k));
        max_norm = std::max(max_norm, grid_max_abs_deriv(c.f2, domain, k));
    }
    if (c4) {
        if (*c4 < max_norm / kInflate)
            throw std::invalid_argument("stated c4 is below the measured C^3 norm");
        c.c4 = *c4;
    } else {
        c.c4 = std::max(1.0, max_norm * kInflate);
    }

    double min_f1pp = grid_min([&](double x) { return std::fabs(c.f1.eval(x, 2)); }, domain, kCertGrid);
    if (c3) {
        if (*c3 > min_f1pp * kInflate + 1e-12)
            throw std::invalid_argument("stated c3 exceeds the measured minimum of |f1''|");
        c.c3 = *c3;
    } else {
        c.c3 = min_f1pp / kInflate;
    }

    double min_torsion = grid_min([&](double x) { return std::fabs(torsion(c, x)); }, domain, 4096);
    c.torsion_min_abs = min_torsion;
    c.torsion_certified = min_torsion > 1e-9;
    return c;
}

double eval_derivatives(const MongeCurve3& c, double x, int component, int order) {
    if (component != 1 && component != 2) throw std::invalid_argument("component must be 1 or 2");
    if (order < 0 || order > 3) throw std::invalid_argument("derivative order must be 0..3");
    check_domain(c, x);
    return component == 1 ? c.f1.eval(x, order) : c.f2.eval(x, order);
}

double torsion(const MongeCurve3& c, double x) {
    check_domain(c, x);
    return c.f1.eval(x, 2) * c.f2.eval(x, 3) - c.f2.eval(x, 2) * c.f1.eval(x, 3);
}

double dual_composition(const MongeCurve3& c, double x) {
    double f1pp = c.f1.eval(x, 2);
    return torsion(c, x) / (f1pp * f1pp * f1pp);
}

// ---------------------------------------------------------------------------
// built-in curves
// ---------------------------------------------------------------------------

namespace {

MongeCurve3 build_builtin(const std::string& id) {
    if (id == "veronese")
        return make_curve("veronese", RationalPoly::parse_list("0,0,1"),
                          RationalPoly::parse_list("0,0,0,1"), {0.0, 1.0}, 2.0, 6.0);
    if (id == "embedded_parabola")
        return make_curve("embedded_parabola", RationalPoly::parse_list("0,0,1"), RationalPoly(),
                          {0.0, 1.0}, 2.0, 2.0);
    if (id == "generic_cubic")
        return make_curve("generic_cubic", RationalPoly::parse_list("0,0,1/2,1/6"),
                          RationalPoly::parse_list("0,0,0,1/6,1/24"), {0.0, 1.0}, 1.0, 2.0);
    throw std::invalid_argument("unknown builtin curve '" + id + "'");
}

}  // namespace

const MongeCurve3& builtin_curve(const std::string& id) {
    static const std::map<std::string, MongeCurve3> curves = [] {
        std::map<std::string, MongeCurve3> m;
        for (const auto& name : {"veronese", "embedded_parabola", "generic_cubic"})
            m.emplace(name, build_builtin(name));
        return m;
    }();
    auto it = curves.find(id);
    if (it == curves.end()) throw std::invalid_argument("unknown builtin curve '" + id + "'");
    return it->second;
}

std::vector<std::string> builtin_curve_ids() {
    return {"veronese", "embedded_parabola", "generic_cubic"};
}

std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

MongeCurve3 load_curve_file(const std::string& path) {
    auto kv = parse_kv_file(path);
    if (!kv.count("id")) throw std::invalid_argument("curve file without id: " + path);
    if (!kv.count("f1_coeffs") || !kv.count("f2_coeffs"))
        throw std::invalid_argument("curve file needs f1_coeffs and f2_coeffs: " + path);

    Interval domain{0.0, 1.0};
    if (kv.count("domain")) {
        std::string s = kv["domain"];
        for (auto& ch : s)
            if (ch == ',') ch = ' ';
        std::istringstream in(s);
        if (!(in >> domain.lo >> domain.hi))
            throw std::invalid_argument("bad domain in " + path);
    }
    std::optional<double> c3, c4;
    if (kv.count("c3")) c3 = std::stod(kv["c3"]);
    if (kv.count("c4")) c4 = std::stod(kv["c4"]);

    return make_curve(kv["id"], RationalPoly::parse_list(kv["f1_coeffs"]),
                      RationalPoly::parse_list(kv["f2_coeffs"]), domain, c3, c4);
}

MongeCurve3 resolve_curve(const std::string& spec) {
    for (const auto& id : builtin_curve_ids())
        if (spec == id) return builtin_curve(id);
    std::ifstream probe(spec);
    if (probe.good()) return load_curve_file(spec);
    throw std::invalid_argument("'" + spec + "' is neither a builtin curve nor a readable file");
}

MongeCurve3 swap_components(const MongeCurve3& c) {
    return make_curve(c.id + "#swap", c.f2.poly(), c.f1.poly(), c.domain, {}, c.c4);
}

std::vector<DominantSegment> split_dominant(const MongeCurve3& c, double c3_min, int grid) {
    // label each grid point by which second derivative clears the bar,
    // preferring f1, then compress runs into subdomain curves
    std::vector<int> label(grid + 1);
    for (int i = 0; i <= grid; ++i) {
        double x = c.domain.lo + c.domain.width() * i / grid;
        if (std::fabs(c.f1.eval(x, 2)) >= c3_min)
            label[i] = 1;
        else if (std::fabs(c.f2.eval(x, 2)) >= c3_min)
            label[i] = 2;
        else
            throw std::invalid_argument("neither |f1''| nor |f2''| clears the threshold at x=" +
                                        std::to_string(x));
    }
    std::vector<DominantSegment> out;
    int start = 0;
    for (int i = 1; i <= grid + 1; ++i) {
        if (i <= grid && label[i] == label[start]) continue;
        double lo = c.domain.lo + c.domain.width() * start / grid;
        double hi = c.domain.lo + c.domain.width() * (i - 1) / grid;
        if (hi > lo) {
            bool swapped = label[start] == 2;
            auto f1 = swapped ? c.f2.poly() : c.f1.poly();
            auto f2 = swapped ? c.f1.poly() : c.f2.poly();
            std::ostringstream id;
            id << c.id << "[" << lo << "," << hi << "]" << (swapped ? "#swap" : "");
            out.push_back({make_curve(id.str(), f1, f2, {lo, hi}, {}, c.c4), swapped});
        }
        start = i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// planar curves
// ---------------------------------------------------------------------------

namespace {

PlanarCurve planar_from_functions(std::string id, std::function<double(double)> f,
                                  std::function<double(double)> df,
                                  std::function<double(double)> d2f, Interval I,
                                  std::optional<double> c1, std::optional<double> c2,
                                  std::optional<double> M, bool extended) {
    PlanarCurve p;
    p.id = std::move(id);
    p.f = std::move(f);
    p.df = std::move(df);
    p.d2f = std::move(d2f);
    p.I = I;
    p.extended = extended;
    p.c1 = c1 ? *c1 : grid_min([&](double x) { return std::fabs(p.d2f(x)); }, I, kCertGrid) / kInflate;
    p.c2 = c2 ? *c2 : grid_max([&](double x) { return std::fabs(p.d2f(x)); }, I, kCertGrid) * kInflate;
    p.M = M ? *M : 1.0 + grid_max([&](double x) { return std::fabs(p.df(x)); }, I, kCertGrid) * kInflate;
    if (!(p.c1 > 0.0 && p.c1 <= p.c2))
        throw std::invalid_argument("planar curve needs 0 < c1 <= |f''| <= c2 on I");
    return p;
}

std::vector<double> differentiate(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t j = 1; j < c.size(); ++j) d.push_back(c[j] * static_cast<double>(j));
    return d;
}

}  // namespace

PlanarCurve make_planar(std::string id, std::vector<double> coeffs, Interval I,
                        std::optional<double> c1, std::optional<double> c2,
                        std::optional<double> M) {
    auto d1 = differentiate(coeffs);
    auto d2 = differentiate(d1);
    auto f = [coeffs](double x) { return horner_compensated(coeffs, x); };
    auto df = [d1](double x) { return horner_compensated(d1, x); };
    auto d2f = [d2](double x) { return horner_compensated(d2, x); };
    return planar_from_functions(std::move(id), f, df, d2f, I, c1, c2, M, false);
}

const PlanarCurve& builtin_planar(const std::string& id) {
    static const std::map<std::string, PlanarCurve> curves = [] {
        std::map<std::string, PlanarCurve> m;
        m.emplace("x2", make_planar("x2", {0.0, 0.0, 1.0}, {0.0, 1.0}, 2.0, 2.0, 3.0));
        m.emplace("x2_half", make_planar("x2_half", {0.0, 0.0, 0.5}, {0.0, 1.0}, 1.0, 1.0, 2.0));
        m.emplace("x2_x3_mix",
                  make_planar("x2_x3_mix", {0.0, 0.0, 0.5, 0.1}, {0.0, 1.0}, 1.0, 1.6, 2.3));
        return m;
    }();
    auto it = curves.find(id);
    if (it == curves.end()) throw std::invalid_argument("unknown builtin planar curve '" + id + "'");
    return it->second;
}

std::vector<std::string> builtin_planar_ids() { return {"x2", "x2_half", "x2_x3_mix"}; }

PlanarCurve extend(const PlanarCurve& p) {
    if (p.extended) return p;
    double xi = p.I.lo, eta = p.I.hi;
    double f_lo = p.f(xi), d_lo = p.df(xi), s_lo = p.d2f(xi);
    double f_hi = p.f(eta), d_hi = p.df(eta), s_hi = p.d2f(eta);
    auto base_f = p.f;
    auto base_df = p.df;
    auto base_d2f = p.d2f;

    auto f = [=](double x) {
        if (x < xi) {
            double t = x - xi;
            return f_lo + d_lo * t + 0.5 * s_lo * t * t;
        }
        if (x > eta) {
            double t = x - eta;
            return f_hi + d_hi * t + 0.5 * s_hi * t * t;
        }
        return base_f(x);
    };
    auto df = [=](double x) {
        if (x < xi) return d_lo + s_lo * (x - xi);
        if (x > eta) return d_hi + s_hi * (x - eta);
        return base_df(x);
    };
    auto d2f = [=](double x) {
        if (x < xi) return s_lo;
        if (x > eta) return s_hi;
        return base_d2f(x);
    };
    return planar_from_functions(p.id + "#ext", f, df, d2f, p.I, p.c1, p.c2, p.M, true);
}

DualCurve dual_curve(const PlanarCurve& planar) {
    DualCurve d;
    d.base = planar.extended ? planar : extend(planar);
    const PlanarCurve p = d.base;

    // g(y): the solution of f'(x) = -y. f' is strictly monotone with
    // range all of R, so a geometric bracket expansion cannot miss.
    auto g = [p](double y) {
        double target = -y;
        double lo = p.I.lo, hi = p.I.hi;
        double step = std::max(1.0, p.I.width());
        bool increasing = p.d2f(0.5 * (lo + hi)) > 0.0;
        for (int it = 0; it < 200; ++it) {
            double vlo = p.df(lo), vhi = p.df(hi);
            bool covered = increasing ? (vlo <= target && target <= vhi)
                                      : (vhi <= target && target <= vlo);
            if (covered) break;
            if (it == 199) throw std::runtime_error("dual curve: bracket expansion failed");
            bool need_right = increasing ? (target > vhi) : (target < vhi);
            if (need_right)
                hi += step;
            else
                lo -= step;
            step *= 2.0;
        }
        return bisect_monotone(p.df, lo, hi, target);
    };
    auto fstar = [p, g](double y) {
        double x = g(y);
        return y * x + p.f(x);
    };

    d.g = g;
    d.fstar = fstar;
    d.K = {-2.0 * p.M, 2.0 * p.M};
    double a = g(d.K.lo), b = g(d.K.hi);
    d.Iprime = {std::min(a, b), std::max(a, b)};
    return d;
}

PlanarCurve planar_from_dual(const DualCurve& d, std::string id) {
    auto g = d.g;
    auto fstar = d.fstar;
    auto base = d.base;
    auto d2 = [g, base](double y) { return -1.0 / base.d2f(g(y)); };
    double Mstar = 1.0 + std::max(std::fabs(d.Iprime.lo), std::fabs(d.Iprime.hi));
    return planar_from_functions(std::move(id), fstar, g, d2, d.K, 1.0 / base.c2, 1.0 / base.c1,
                                 Mstar, false);
}

PlanarCurve induced_planar(const MongeCurve3& c) {
    if (!(c.c3 > 0.0))
        throw std::invalid_argument("induced curve needs |f1''| bounded below (c3 > 0)");
    auto f1p = [c](double x) { return c.f1.eval(x, 1); };
    double blo = f1p(c.domain.lo), bhi = f1p(c.domain.hi);
    Interval I{std::min(blo, bhi), std::max(blo, bhi)};
    Interval dom = c.domain;

    auto x_of = [c, dom](double beta) {
        return bisect_monotone([&](double x) { return c.f1.eval(x, 1); }, dom.lo, dom.hi, beta);
    };
    auto f = [c, x_of](double beta) { return c.f2.eval(x_of(beta), 1); };
    auto df = [c, x_of](double beta) {
        double x = x_of(beta);
        return c.f2.eval(x, 2) / c.f1.eval(x, 2);
    };
    auto d2f = [c, x_of](double beta) { return dual_composition(c, x_of(beta)); };
    return planar_from_functions("induced:" + c.id, f, df, d2f, I, {}, {}, {}, false);
}

PlanarCurve resolve_planar(const std::string& spec) {
    if (spec.rfind("dual:", 0) == 0)
        return planar_from_dual(dual_curve(resolve_planar(spec.substr(5))), spec);
    if (spec.rfind("induced:", 0) == 0) return induced_planar(resolve_curve(spec.substr(8)));
    return builtin_planar(spec);
}

}  // namespace latcurve
