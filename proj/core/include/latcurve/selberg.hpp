#pragma once

#include <complex>
#include <vector>

namespace latcurve {

// Degree-J trigonometric majorant/minorant pair for the indicator of the
// arc (alpha, beta) on R/Z, alpha < beta < alpha + 1:
//
//   S-(x) <= chi(x) <= S+(x),   S±(x) = sum_{|j| <= J} b_j^± e(jx),
//   b_0^± = (beta - alpha) ± 1/(J+1),
//   |b_j^±| <= 1/(J+1) + min(beta - alpha, 1/(pi |j|))  for 0 < |j| <= J.
//
// Coefficients are conjugate-symmetric, so both polynomials are real.
struct SelbergSystem {
    double alpha = 0.0;
    double beta = 0.0;
    int J = 0;
    std::vector<std::complex<double>> b_plus;   // index j + J, j in [-J, J]
    std::vector<std::complex<double>> b_minus;

    std::complex<double> coeff(int sign, int j) const;
};

SelbergSystem selberg_coeffs(double alpha, double beta, int J);

// The pair for (-delta, delta) at degree J = floor(1/delta). With that
// choice |b_j^±| <= 3 delta for all j and b_0^- >= delta.
SelbergSystem selberg_for_delta(double delta);

// sign = +1 or -1. Sums the full complex polynomial, checks the
// imaginary residue is below 1e-12, and returns the real part.
double eval_trig_poly(const SelbergSystem&, int sign, double x);

// Taper applied to the sawtooth Fourier coefficients; 0 <= W(t) <= 1 on (0,1).
double vaaler_multiplier(double t);

}  // namespace latcurve
