#pragma once

#include <complex>
#include <vector>

namespace siegelmate {

// Roots of c[0] z^n + c[1] z^(n-1) + ... + c[n], n <= 8, by companion-matrix
// eigenvalues with one Newton polish step per root. Leading zeros (degree
// drops) are stripped first.
std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& coeffs);

}  // namespace siegelmate
