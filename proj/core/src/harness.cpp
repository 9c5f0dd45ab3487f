#include "latcurve/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace latcurve {

namespace {

const double kDeltaCap = std::nextafter(0.5, 0.0);

std::vector<std::string> split_list(const std::string& s) {
    std::string t = s;
    for (auto& ch : t)
        if (ch == ',') ch = ' ';
    std::istringstream in(t);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

double DeltaRule::raw(long long q) const {
    switch (kind) {
        case DeltaRuleKind::Fixed:
            return value;
        case DeltaRuleKind::Power:
            return c * std::pow(static_cast<double>(q), -theta);
        case DeltaRuleKind::Theorem:
            return c * std::pow(static_cast<double>(q), -0.2) *
                   std::pow(std::log(static_cast<double>(q)), 0.4);
    }
    return value;
}

double DeltaRule::delta_for(long long q) const {
    double d = raw(q);
    if (kind == DeltaRuleKind::Theorem) return std::min(d, kDeltaCap);
    return d;
}

DeltaRule DeltaRule::parse(const std::string& spec) {
    auto parts = split_list([&] {
        std::string t = spec;
        for (auto& ch : t)
            if (ch == ':') ch = ',';
        return t;
    }());
    if (parts.empty()) throw std::invalid_argument("empty delta rule");
    DeltaRule rule;
    try {
        if (parts[0] == "fixed" && parts.size() == 2) {
            rule.kind = DeltaRuleKind::Fixed;
            rule.value = std::stod(parts[1]);
            return rule;
        }
        if (parts[0] == "power" && parts.size() == 3) {
            rule.kind = DeltaRuleKind::Power;
            rule.c = std::stod(parts[1]);
            rule.theta = std::stod(parts[2]);
            if (!(rule.theta >= 0.0 && rule.theta < 1.0))
                throw std::invalid_argument("power rule needs theta in [0, 1)");
            return rule;
        }
        if (parts[0] == "theorem" && parts.size() == 2) {
            rule.kind = DeltaRuleKind::Theorem;
            rule.c = std::stod(parts[1]);
            return rule;
        }
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("bad delta rule '" + spec + "': " + e.what());
    }
    throw std::invalid_argument("bad delta rule '" + spec +
                                "' (want fixed:<v> | power:<c>:<theta> | theorem:<c>)");
}

std::string DeltaRule::describe() const {
    std::ostringstream out;
    switch (kind) {
        case DeltaRuleKind::Fixed:
            out << "fixed:" << value;
            break;
        case DeltaRuleKind::Power:
            out << "power:" << c << ":" << theta;
            break;
        case DeltaRuleKind::Theorem:
            out << "theorem:" << c;
            break;
    }
    return out.str();
}

ScanConfig load_scan_config(const std::string& path) {
    auto kv = parse_kv_file(path);
    ScanConfig cfg;
    if (kv.count("curves"))
        cfg.curves = split_list(kv["curves"]);
    else
        throw std::invalid_argument("scan config needs a curves list: " + path);

    if (kv.count("q_list")) {
        for (const auto& tok : split_list(kv["q_list"])) {
            double v = std::stod(tok);  // accept 1e6 style
            cfg.q_list.push_back(static_cast<long long>(std::llround(v)));
        }
    } else {
        for (long long q = 1000; q <= 10000000; q *= 10) cfg.q_list.push_back(q);
    }

    if (kv.count("rule")) {
        std::string spec = kv["rule"];
        if (spec == "fixed" && kv.count("delta")) spec += ":" + kv["delta"];
        if (spec == "power") spec += ":" + kv.at("c") + ":" + kv.at("theta");
        if (spec == "theorem") spec += ":" + kv.at("c");
        cfg.rule = DeltaRule::parse(spec);
    }
    if (kv.count("workers")) cfg.workers = std::stoi(kv["workers"]);
    if (kv.count("output")) cfg.output = kv["output"];
    if (kv.count("exact") && (kv["exact"] == "1" || kv["exact"] == "true"))
        cfg.mode = CountMode::Exact;
    return cfg;
}

std::vector<ScanRecord> scan(const ScanConfig& cfg) {
    int saved_threads = omp_get_max_threads();
    if (cfg.workers > 0) omp_set_num_threads(cfg.workers);

    std::vector<ScanRecord> records;
    for (const auto& spec : cfg.curves) {
        MongeCurve3 curve = resolve_curve(spec);
        for (long long q : cfg.q_list) {
            double delta = cfg.rule.delta_for(q);
            if (!(delta > 0.0 && delta < 0.5)) {
                std::cerr << "scan: skipping curve=" << curve.id << " q=" << q
                          << " (rule delta " << delta << " outside (0, 1/2))\n";
                continue;
            }
            auto t0 = std::chrono::steady_clock::now();
            ScanRecord rec;
            rec.curve = curve.id;
            rec.q = q;
            rec.delta = delta;
            CountResult a = count_near(curve, q, delta, cfg.mode);
            rec.A_lo = a.count_lo;
            rec.A_hi = a.count_hi;
            BlockParams bp = block_params(q, delta, curve.c4);
            rec.q0 = bp.q0;
            rec.r = bp.r;
            if (bp.valid) {
                Aggregates agg = aggregate(curve, q, delta);
                rec.B1 = agg.B1.hi;
                rec.B2 = agg.B2.lo;
                rec.E = error_term(curve, q, delta);
            } else {
                rec.B1 = rec.B2 = 0;
                rec.E = std::numeric_limits<double>::quiet_NaN();
            }
            rec.runtime_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
            records.push_back(std::move(rec));
        }
    }
    if (cfg.workers > 0) omp_set_num_threads(saved_threads);

    std::sort(records.begin(), records.end(), [](const ScanRecord& a, const ScanRecord& b) {
        if (a.curve != b.curve) return a.curve < b.curve;
        if (a.q != b.q) return a.q < b.q;
        return a.delta < b.delta;
    });
    return records;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRecord>& records) {
    out << "curve,q,delta,A_lo,A_hi,B1,B2,E,q0,r,runtime_ms\n";
    char buf[512];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%s,%lld,%.17g,%lld,%lld,%lld,%lld,%.17g,%lld,%lld,%.17g\n",
                      r.curve.c_str(), r.q, r.delta, r.A_lo, r.A_hi, r.B1, r.B2, r.E, r.q0, r.r,
                      r.runtime_ms);
        out << buf;
    }
}

void write_scan_csv(const std::string& path, const std::vector<ScanRecord>& records) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    write_scan_csv(out, records);
}

std::vector<ScanRecord> read_scan_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line.rfind("curve,q,delta", 0) != 0)
        throw std::invalid_argument("not a scan csv: " + path);
    std::vector<ScanRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::istringstream ls(line);
        std::string col;
        while (std::getline(ls, col, ',')) cols.push_back(col);
        if (cols.size() != 11) throw std::invalid_argument("bad scan csv row: " + line);
        ScanRecord r;
        r.curve = cols[0];
        r.q = std::stoll(cols[1]);
        r.delta = std::stod(cols[2]);
        r.A_lo = std::stoll(cols[3]);
        r.A_hi = std::stoll(cols[4]);
        r.B1 = std::stoll(cols[5]);
        r.B2 = std::stoll(cols[6]);
        r.E = std::stod(cols[7]);
        r.q0 = std::stoll(cols[8]);
        r.r = std::stoll(cols[9]);
        r.runtime_ms = std::stod(cols[10]);
        records.push_back(std::move(r));
    }
    return records;
}

bool record_sandwich_holds(const MongeCurve3& curve, const ScanRecord& rec) {
    if (!block_params(rec.q, rec.delta / 2.0, curve.c4).valid) return true;
    long long b2 = aggregate(curve, rec.q, rec.delta / 2.0).B2.lo;
    long long b1 = aggregate(curve, rec.q, 1.5 * rec.delta).B1.hi;
    return b2 <= rec.A_lo && rec.A_hi <= b1;
}

FitResult fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_loglog: length mismatch");
    if (xs.size() < 3) throw std::invalid_argument("fit_loglog: need at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const auto n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("fit_loglog: inputs must be positive");
        double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_loglog: degenerate x values");

    FitResult fit;
    fit.n_points = static_cast<int>(xs.size());
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_tot = syy - sy * sy / n;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double r = std::log(ys[i]) - (fit.intercept + fit.slope * std::log(xs[i]));
        ss_res += r * r;
    }
    fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    return fit;
}

FitResult fit_exponent(const std::vector<ScanRecord>& records, const std::string& x_field,
                       const std::string& y_field) {
    auto field = [](const ScanRecord& r, const std::string& name) -> double {
        if (name == "q") return static_cast<double>(r.q);
        if (name == "delta") return r.delta;
        if (name == "A_lo") return static_cast<double>(r.A_lo);
        if (name == "A_hi") return static_cast<double>(r.A_hi);
        if (name == "B1") return static_cast<double>(r.B1);
        if (name == "B2") return static_cast<double>(r.B2);
        if (name == "E") return r.E;
        if (name == "q0") return static_cast<double>(r.q0);
        if (name == "r") return static_cast<double>(r.r);
        throw std::invalid_argument("unknown scan field '" + name + "'");
    };
    std::vector<double> xs, ys;
    for (const auto& r : records) {
        xs.push_back(field(r, x_field));
        ys.push_back(field(r, y_field));
    }
    return fit_loglog(xs, ys);
}

TheoremReport verify_theorem(const MongeCurve3& curve, const ScanConfig& cfg) {
    TheoremReport rep;
    rep.upper_min = rep.lower_min = std::numeric_limits<double>::infinity();
    for (long long q : cfg.q_list) {
        TheoremCell cell;
        cell.q = q;
        cell.delta_raw = cfg.rule.raw(q);
        cell.delta = cfg.rule.delta_for(q);
        if (!(cell.delta > 0.0 && cell.delta < 0.5)) {
            std::cerr << "verify: skipping q=" << q << " (delta " << cell.delta
                      << " outside (0, 1/2))\n";
            continue;
        }
        CountResult a = count_near(curve, q, cell.delta, cfg.mode);
        cell.A_lo = a.count_lo;
        cell.A_hi = a.count_hi;
        double qd = static_cast<double>(q);
        double main_term = cell.delta * cell.delta * qd;
        double log_term = std::pow(qd, 0.6) * std::pow(std::log(qd), 0.8);
        cell.upper_ratio = static_cast<double>(cell.A_hi) / (main_term + log_term);
        cell.lower_ratio = static_cast<double>(cell.A_lo) / main_term;
        cell.flat_lo = static_cast<double>(cell.A_lo) / (2.0 * cell.delta * qd);
        cell.flat_hi = static_cast<double>(cell.A_hi) / (2.0 * cell.delta * qd);
        cell.main_term_dominates = main_term >= log_term;

        rep.upper_max = std::max(rep.upper_max, cell.upper_ratio);
        rep.upper_min = std::min(rep.upper_min, cell.upper_ratio);
        rep.lower_max = std::max(rep.lower_max, cell.lower_ratio);
        rep.lower_min = std::min(rep.lower_min, cell.lower_ratio);
        rep.cells.push_back(cell);
    }
    return rep;
}

}  // namespace latcurve
