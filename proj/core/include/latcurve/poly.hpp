#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "latcurve/numeric.hpp"

namespace latcurve {

using bigint = boost::multiprecision::cpp_int;

// Reduced fraction with positive denominator. Curve coefficients are
// small (1/24 and friends); int64 is plenty for them.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool zero() const { return num == 0; }

    // "n" or "n/d"
    static Rational parse(const std::string& token);
};

// Polynomial with rational coefficients, ascending degree. Double
// coefficient arrays for derivative orders 0..3 are baked at
// construction; the rational form stays available for exact arithmetic.
class RationalPoly {
public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coeffs);

    // comma/space separated tokens, e.g. "0, 0, 1/2, 1/6"
    static RationalPoly parse_list(const std::string& list);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    long long common_denominator() const { return D_; }

    // order 0..3, compensated Horner on the baked double coefficients
    double eval(double x, int order) const;

    // exact value of the order-th derivative at xnum/xden, reduced
    std::pair<bigint, bigint> eval_exact(long long xnum, long long xden, int order = 0) const;

private:
    std::vector<Rational> coeffs_;
    std::array<std::vector<double>, 4> dc_;
    long long D_ = 1;
};

// Exact fractional position of q*f(a/q) for a polynomial f with rational
// coefficients.
//
// With f = sum_j (n_j/d_j) x^j, D = lcm d_j and P = max(deg f, 1):
//
//   q*f(a/q) = N(a) / (D q^(P-1)),   N(a) = sum_j n_j (D/d_j) a^j q^(P-j),
//
// so the residue r = N(a) mod denom pins ||q f(a/q)|| = min(r, denom-r)/denom
// exactly. The Horner recurrence runs in int128 when it provably fits
// (covers q <= 1e8 for the built-in degrees) and in cpp_int otherwise.
class ExactDilation {
public:
    ExactDilation(const RationalPoly& f, long long q);

    // q f(a/q) integral
    bool integral(long long a) const;

    // Largest integer T with T < delta*denom. Strict threshold test:
    // ||q f(a/q)|| < delta  <=>  min(r, denom - r) <= T.
    struct Threshold {
        bigint T;
        __int128 t128 = 0;
        bool fits128 = false;
    };
    Threshold threshold(double delta) const;
    bool below(long long a, const Threshold& th) const;

private:
    long long q_ = 1;
    bigint denom_;
    std::vector<bigint> E_;  // Horner coefficients mod denom, descending
    bool fits128_ = false;
    __int128 denom128_ = 0;
    std::vector<__int128> E128_;

    __int128 residue128(long long a) const;
    bigint residue_big(long long a) const;
};

}  // namespace latcurve
