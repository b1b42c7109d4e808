#pragma once

#include <complex>
#include <span>
#include <vector>

namespace pll {

// Real polynomial, coefficients in ascending powers of the variable.
using Poly = std::vector<double>;

// Highest index with a nonzero coefficient; -1 for the zero polynomial.
int degree(std::span<const double> p);

std::complex<double> poly_eval(std::span<const double> p, std::complex<double> x);
Poly poly_mul(std::span<const double> a, std::span<const double> b);
Poly poly_add(std::span<const double> a, std::span<const double> b);
Poly poly_scale(std::span<const double> p, double k);

/// All complex roots of p.
///
/// Exact zero roots are deflated first. The remaining polynomial is rescaled so
/// its roots are O(1), solved through companion-matrix eigenvalues, and each
/// root is then Newton-polished against the original coefficients.
std::vector<std::complex<double>> poly_roots(std::span<const double> p);

/// Rational function num(s)/den(s) with cached poles.
class RationalTf {
public:
    RationalTf(Poly num, Poly den);

    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    const std::vector<std::complex<double>>& poles() const noexcept { return poles_; }
    std::vector<std::complex<double>> zeros() const;

    int num_degree() const { return degree(num_); }
    int den_degree() const { return degree(den_); }
    bool is_proper() const { return num_degree() <= den_degree(); }

    /// Throws PoleEvaluationError within 1e-6 relative distance of a pole.
    std::complex<double> eval(std::complex<double> s) const;

private:
    Poly num_;
    Poly den_;
    std::vector<std::complex<double>> poles_;
};

} // namespace pll
