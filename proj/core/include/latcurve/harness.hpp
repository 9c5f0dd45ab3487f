#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "latcurve/linearize.hpp"
#include "latcurve/planar_sums.hpp"

namespace latcurve {

enum class DeltaRuleKind { Fixed, Power, Theorem };

// fixed:   delta = value
// power:   delta = c * q^(-theta)
// theorem: delta = c * q^(-1/5) * (ln q)^(2/5), capped just below 1/2 so
//          the produced delta always lies in (0, 1/2)
struct DeltaRule {
    DeltaRuleKind kind = DeltaRuleKind::Fixed;
    double value = 0.1;
    double c = 1.0;
    double theta = 0.0;

    double raw(long long q) const;        // formula value, uncapped
    double delta_for(long long q) const;  // capped (theorem rule only)

    // "fixed:0.3" | "power:<c>:<theta>" | "theorem:<c>"
    static DeltaRule parse(const std::string& spec);
    std::string describe() const;
};

struct ScanConfig {
    std::vector<std::string> curves;
    std::vector<long long> q_list;  // default geometric 1e3 .. 1e7
    DeltaRule rule;
    int workers = 0;  // 0 = library default
    std::string output;
    CountMode mode = CountMode::Float;
};
ScanConfig load_scan_config(const std::string& path);

// One (curve, q, delta) cell. B1/B2 persist the certainty-conservative
// endpoints (B1 high side, B2 low side); E is NaN when the blocks are
// degenerate for this delta.
struct ScanRecord {
    std::string curve;
    long long q = 0;
    double delta = 0.0;
    long long A_lo = 0, A_hi = 0;
    long long B1 = 0, B2 = 0;
    double E = 0.0;
    long long q0 = 0, r = 0;
    double runtime_ms = 0.0;
};

// Records sorted by (curve, q, delta); cells whose rule delta falls
// outside (0, 1/2) are skipped with a note on stderr.
std::vector<ScanRecord> scan(const ScanConfig&);

void write_scan_csv(std::ostream&, const std::vector<ScanRecord>&);
void write_scan_csv(const std::string& path, const std::vector<ScanRecord>&);
std::vector<ScanRecord> read_scan_csv(const std::string& path);

// Recheck the block sandwich for a persisted record. Returns true when
// q0(delta/2) < 1 (nothing to check).
bool record_sandwich_holds(const MongeCurve3&, const ScanRecord&);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int n_points = 0;
};
// least squares on (ln x, ln y); all inputs must be positive, n >= 3
FitResult fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys);
FitResult fit_exponent(const std::vector<ScanRecord>&, const std::string& x_field,
                       const std::string& y_field);

// Per-cell normalized ratios for the two count shapes: the full upper
// envelope delta^2 q + q^(3/5) (ln q)^(4/5) and the main term delta^2 q,
// plus A/(2 delta q) for the flat-coordinate comparison.
struct TheoremCell {
    long long q = 0;
    double delta = 0.0;
    double delta_raw = 0.0;
    long long A_lo = 0, A_hi = 0;
    double upper_ratio = 0.0;   // A_hi / (delta^2 q + q^(3/5) (ln q)^(4/5))
    double lower_ratio = 0.0;   // A_lo / (delta^2 q)
    double flat_lo = 0.0;       // A_lo / (2 delta q)
    double flat_hi = 0.0;       // A_hi / (2 delta q)
    bool main_term_dominates = false;
};
struct TheoremReport {
    std::vector<TheoremCell> cells;
    double upper_max = 0.0, upper_min = 0.0;
    double lower_max = 0.0, lower_min = 0.0;
};
TheoremReport verify_theorem(const MongeCurve3&, const ScanConfig&);

}  // namespace latcurve
