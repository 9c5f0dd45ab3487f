#include "latcurve/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace latcurve {

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

Rational Rational::parse(const std::string& token) {
    auto slash = token.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(token), 1);
        return Rational(std::stoll(token.substr(0, slash)), std::stoll(token.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad rational token: '" + token + "'");
    } catch (const std::out_of_range&) {
        throw std::invalid_argument("rational token out of range: '" + token + "'");
    }
}

RationalPoly::RationalPoly(std::vector<Rational> coeffs) {
    while (!coeffs.empty() && coeffs.back().zero()) coeffs.pop_back();
    coeffs_ = std::move(coeffs);

    D_ = 1;
    for (const auto& c : coeffs_) D_ = std::lcm(D_, c.den);

    for (int k = 0; k <= 3; ++k) {
        auto& arr = dc_[k];
        for (std::size_t j = k; j < coeffs_.size(); ++j) {
            double factor = 1.0;
            for (int i = 0; i < k; ++i) factor *= static_cast<double>(j - i);
            arr.push_back(coeffs_[j].to_double() * factor);
        }
    }
}

RationalPoly RationalPoly::parse_list(const std::string& list) {
    std::string s = list;
    for (auto& ch : s)
        if (ch == ',') ch = ' ';
    std::istringstream in(s);
    std::vector<Rational> cs;
    std::string tok;
    while (in >> tok) cs.push_back(Rational::parse(tok));
    return RationalPoly(std::move(cs));
}

double RationalPoly::eval(double x, int order) const {
    if (order < 0 || order > 3) throw std::invalid_argument("derivative order must be 0..3");
    return horner_compensated(dc_[order], x);
}

std::pair<bigint, bigint> RationalPoly::eval_exact(long long xnum, long long xden, int order) const {
    if (order < 0 || order > 3) throw std::invalid_argument("derivative order must be 0..3");
    if (xden == 0) throw std::invalid_argument("rational point with zero denominator");
    if (xden < 0) {
        xnum = -xnum;
        xden = -xden;
    }
    int deg = degree();
    if (deg < order) return {0, 1};

    // value = sum_{j>=order} c_j fall(j, order) x^(j-order)
    //       = [sum_j n_j (D/d_j) fall(j, order) xnum^(j-order) xden^(m-j+order)] / (D xden^m)
    int m = deg - order;
    bigint num = 0;
    for (int j = order; j <= deg; ++j) {
        const Rational& c = coeffs_[j];
        if (c.zero()) continue;
        bigint term = c.num;
        term *= D_ / c.den;
        for (int i = 0; i < order; ++i) term *= (j - i);
        for (int i = 0; i < j - order; ++i) term *= xnum;
        for (int i = 0; i < m - (j - order); ++i) term *= xden;
        num += term;
    }
    bigint den = D_;
    for (int i = 0; i < m; ++i) den *= xden;

    bigint g = boost::multiprecision::gcd(num < 0 ? bigint(-num) : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

// ---------------------------------------------------------------------------
// ExactDilation
// ---------------------------------------------------------------------------

namespace {

unsigned bit_width(const bigint& v) {
    if (v == 0) return 1;
    return boost::multiprecision::msb(v) + 1;
}

__int128 to_int128(const bigint& v) {
    auto lo = static_cast<std::uint64_t>(v & 0xffffffffffffffffULL);
    auto hi = static_cast<std::uint64_t>((v >> 64) & 0xffffffffffffffffULL);
    return static_cast<__int128>((static_cast<unsigned __int128>(hi) << 64) | lo);
}

}  // namespace

ExactDilation::ExactDilation(const RationalPoly& f, long long q) : q_(q) {
    if (q < 1) throw std::invalid_argument("q must be positive");
    const auto& cs = f.coeffs();
    int deg = f.degree();
    int P = deg < 1 ? 1 : deg;
    long long D = f.common_denominator();

    denom_ = D;
    for (int i = 0; i < P - 1; ++i) denom_ *= q;

    // N(a) = sum_j E_j a^j with E_j = n_j (D/d_j) q^(P-j); store the
    // coefficients mod denom, top degree first, for the Horner pass.
    std::vector<bigint> asc(P + 1, bigint(0));
    for (int j = 0; j <= deg; ++j) {
        if (cs[j].zero()) continue;
        bigint e = cs[j].num;
        e *= D / cs[j].den;
        for (int i = 0; i < P - j; ++i) e *= q;
        e %= denom_;
        if (e < 0) e += denom_;
        asc[j] = e;
    }
    E_.assign(asc.rbegin(), asc.rend());

    // int128 fast path when acc*a + e provably fits
    unsigned qbits = 1;
    while (qbits < 62 && (1LL << qbits) <= q) ++qbits;
    fits128_ = bit_width(denom_) + qbits + 2 < 127;
    if (fits128_) {
        denom128_ = to_int128(denom_);
        E128_.reserve(E_.size());
        for (const auto& e : E_) E128_.push_back(to_int128(e));
    }
}

__int128 ExactDilation::residue128(long long a) const {
    __int128 acc = 0;
    for (const auto& e : E128_) acc = (acc * a + e) % denom128_;
    return acc;  // in [0, denom): all inputs nonnegative
}

bigint ExactDilation::residue_big(long long a) const {
    bigint acc = 0;
    for (const auto& e : E_) {
        acc = acc * a + e;
        acc %= denom_;
    }
    return acc;
}

bool ExactDilation::integral(long long a) const {
    if (a < 0) throw std::invalid_argument("a must be nonnegative");
    if (fits128_) return residue128(a) == 0;
    return residue_big(a) == 0;
}

ExactDilation::Threshold ExactDilation::threshold(double delta) const {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("threshold needs delta in (0,1)");
    // delta = m * 2^shift exactly, m a 53-bit integer
    int e;
    double mant = std::frexp(delta, &e);
    auto m = static_cast<long long>(std::ldexp(mant, 53));
    int shift = e - 53;

    bigint prod = bigint(m) * denom_;
    bigint T;
    if (shift >= 0) {
        T = (prod << shift) - 1;
    } else {
        bigint floor_val = prod >> (-shift);
        bool exact = (prod & ((bigint(1) << (-shift)) - 1)) == 0;
        T = exact ? floor_val - 1 : floor_val;
    }

    Threshold th;
    th.T = T;
    if (fits128_ && T >= 0 && bit_width(T) < 127) {
        th.t128 = to_int128(T);
        th.fits128 = true;
    }
    return th;
}

bool ExactDilation::below(long long a, const Threshold& th) const {
    if (a < 0) throw std::invalid_argument("a must be nonnegative");
    if (fits128_ && th.fits128) {
        __int128 r = residue128(a);
        __int128 near = r <= denom128_ - r ? r : denom128_ - r;
        return near <= th.t128;
    }
    bigint r = residue_big(a);
    bigint near = r <= denom_ - r ? r : denom_ - r;
    return near <= th.T;
}

}  // namespace latcurve
