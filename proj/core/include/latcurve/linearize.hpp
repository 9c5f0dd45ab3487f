#pragma once

#include "latcurve/counting.hpp"

namespace latcurve {

// Block decomposition parameters: q0 = floor(sqrt(delta q / (2 c4))),
// r = floor(q / q0). Valid iff q0 >= 1, i.e. delta >= 2 c4 / q.
struct BlockParams {
    long long q0 = 0;
    long long r = 0;
    bool valid = false;
};
BlockParams block_params(long long q, double delta, double c4);

// Certainty interval for a block count, same guard-band policy as the
// floating counting path.
struct BlockCount {
    long long lo = 0;
    long long hi = 0;
};

// B(q, delta, s) = #{a0 in [0, q0) : ||q fi(q0 s/q) + a0 fi'(q0 s/q)|| < delta, i = 1, 2}.
// The threshold here may legitimately reach 3*delta/2 > 1/2 on the upper
// sandwich side, so only delta > 0 is required.
BlockCount count_block(const MongeCurve3&, long long q, double delta, long long s);

struct Aggregates {
    BlockParams bp;
    BlockCount B1;  // s in [0, r]
    BlockCount B2;  // s in [0, r)
};
Aggregates aggregate(const MongeCurve3&, long long q, double delta);

// B2(q, delta/2) <= A(q, delta) <= B1(q, 3 delta/2), checked against the
// certainty intervals: the certified side of each B against the matching
// side of A.
struct SandwichReport {
    long long q = 0;
    double delta = 0.0;
    long long b2_half = 0;
    CountResult a_mid;
    long long b1_threehalf = 0;
    bool holds = false;
};
SandwichReport sandwich_check(const MongeCurve3&, long long q, double delta,
                              CountMode mode = CountMode::Float);

}  // namespace latcurve
