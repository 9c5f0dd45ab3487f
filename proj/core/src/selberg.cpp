#include "latcurve/selberg.hpp"

#include <cmath>
#include <stdexcept>

namespace latcurve {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::complex<double> e_of(double t) { return std::polar(1.0, 2.0 * kPi * t); }

}  // namespace

double vaaler_multiplier(double t) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("vaaler_multiplier: t must be in (0,1)");
    return kPi * t * (1.0 - t) * (std::cos(kPi * t) / std::sin(kPi * t)) + t;
}

// The sawtooth psi(x) = {x} - 1/2 has Fourier coefficients -1/(2 pi i h).
// Tapering them with the Vaaler multiplier gives a degree-J polynomial
// psi* with |psi - psi*| bounded by the Fejer kernel over 2(J+1), and
// chi_(alpha,beta)(x) = (beta - alpha) + psi(x - beta) - psi(x - alpha)
// turns that two-sided bound into the majorant/minorant pair.
SelbergSystem selberg_coeffs(double alpha, double beta, int J) {
    if (!(beta > alpha)) throw std::invalid_argument("selberg_coeffs: need beta > alpha");
    if (!(beta < alpha + 1.0)) throw std::invalid_argument("selberg_coeffs: need beta < alpha + 1");
    if (J < 1) throw std::invalid_argument("selberg_coeffs: J must be a positive integer");

    SelbergSystem sys;
    sys.alpha = alpha;
    sys.beta = beta;
    sys.J = J;
    sys.b_plus.assign(2 * J + 1, {});
    sys.b_minus.assign(2 * J + 1, {});

    sys.b_plus[J] = beta - alpha + 1.0 / (J + 1);
    sys.b_minus[J] = beta - alpha - 1.0 / (J + 1);

    for (int j = -J; j <= J; ++j) {
        if (j == 0) continue;
        double w = vaaler_multiplier(std::abs(j) / static_cast<double>(J + 1));
        std::complex<double> psihat = -w / std::complex<double>(0.0, 2.0 * kPi * j);
        double fejer = (1.0 - std::abs(j) / static_cast<double>(J + 1)) / (2.0 * (J + 1));
        std::complex<double> diff = e_of(-j * beta) - e_of(-j * alpha);
        std::complex<double> sum = e_of(-j * beta) + e_of(-j * alpha);
        sys.b_plus[j + J] = psihat * diff + fejer * sum;
        sys.b_minus[j + J] = psihat * diff - fejer * sum;
    }
    return sys;
}

SelbergSystem selberg_for_delta(double delta) {
    if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("selberg_for_delta: delta must lie in (0, 1/2)");
    return selberg_coeffs(-delta, delta, static_cast<int>(1.0 / delta));
}

std::complex<double> SelbergSystem::coeff(int sign, int j) const {
    if (j < -J || j > J) throw std::invalid_argument("coefficient index outside [-J, J]");
    return sign >= 0 ? b_plus[j + J] : b_minus[j + J];
}

double eval_trig_poly(const SelbergSystem& sys, int sign, double x) {
    const auto& b = sign >= 0 ? sys.b_plus : sys.b_minus;
    std::complex<double> acc = 0.0;
    for (int j = -sys.J; j <= sys.J; ++j) acc += b[j + sys.J] * e_of(j * x);
    if (std::fabs(acc.imag()) >= 1e-12)
        throw std::runtime_error("eval_trig_poly: imaginary residue above 1e-12");
    return acc.real();
}

}  // namespace latcurve
