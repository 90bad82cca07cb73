#include "siegelmate/polyroots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "siegelmate/errors.hpp"

namespace siegelmate {

std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& coeffs) {
    using C = std::complex<double>;
    std::size_t lead = 0;
    while (lead < coeffs.size() && std::abs(coeffs[lead]) == 0.0) ++lead;
    std::vector<C> c(coeffs.begin() + lead, coeffs.end());
    if (c.size() <= 1) return {};
    const std::size_t n = c.size() - 1;
    if (n > 8) throw NumericError("poly_roots supports degree <= 8");

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) M(0, i) = -c[i + 1] / c[0];
    for (std::size_t i = 1; i < n; ++i) M(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    if (es.info() != Eigen::Success) throw NumericError("companion eigensolve failed");

    auto eval = [&](C z, C& p, C& dp) {
        p = c[0];
        dp = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            dp = dp * z + p;
            p = p * z + c[i];
        }
    };
    std::vector<C> roots;
    roots.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        C z = es.eigenvalues()(static_cast<Eigen::Index>(i));
        C p, dp;
        eval(z, p, dp);
        if (std::abs(dp) > 0.0) {
            C step = p / dp;
            if (std::isfinite(step.real()) && std::isfinite(step.imag()) && std::abs(step) < 1.0)
                z -= step;
        }
        roots.push_back(z);
    }
    return roots;
}

}  // namespace siegelmate
