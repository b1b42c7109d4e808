#include "pll/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "pll/errors.hpp"

namespace pll {

int degree(std::span<const double> p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
        if (p[static_cast<std::size_t>(i)] != 0.0) {
            return i;
        }
    }
    return -1;
}

std::complex<double> poly_eval(std::span<const double> p, std::complex<double> x) {
    std::complex<double> acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

Poly poly_mul(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        return {};
    }
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

Poly poly_add(std::span<const double> a, std::span<const double> b) {
    Poly out(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

Poly poly_scale(std::span<const double> p, double k) {
    Poly out(p.begin(), p.end());
    for (auto& c : out) c *= k;
    return out;
}

namespace {

using cld = std::complex<long double>;

cld eval_ld(std::span<const double> p, cld x) {
    cld acc = 0.0L;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        acc = acc * x + static_cast<long double>(*it);
    }
    return acc;
}

cld eval_deriv_ld(std::span<const double> p, cld x) {
    cld acc = 0.0L;
    for (std::size_t i = p.size() - 1; i >= 1; --i) {
        acc = acc * x + static_cast<long double>(i) * static_cast<long double>(p[i]);
    }
    return acc;
}

std::complex<double> polish(std::span<const double> p, std::complex<double> root) {
    cld x(root.real(), root.imag());
    long double best = std::abs(eval_ld(p, x));
    for (int iter = 0; iter < 8 && best > 0.0L; ++iter) {
        const cld d = eval_deriv_ld(p, x);
        if (d == cld(0.0L)) break;
        const cld next = x - eval_ld(p, x) / d;
        const long double r = std::abs(eval_ld(p, next));
        if (!(r < best)) break;
        x = next;
        best = r;
    }
    return {static_cast<double>(x.real()), static_cast<double>(x.imag())};
}

} // namespace

std::vector<std::complex<double>> poly_roots(std::span<const double> p) {
    const int n_full = degree(p);
    if (n_full < 1) {
        return {};
    }
    std::vector<std::complex<double>> roots;
    std::size_t low = 0;
    while (p[low] == 0.0) {
        roots.emplace_back(0.0, 0.0);
        ++low;
    }
    const auto q = p.subspan(low, static_cast<std::size_t>(n_full) + 1 - low);
    const int n = static_cast<int>(q.size()) - 1;
    if (n == 0) {
        return roots;
    }

    // x = s / scale puts the root magnitudes' geometric mean at 1.
    const double lead = q[static_cast<std::size_t>(n)];
    const double scale = std::pow(std::abs(q[0] / lead), 1.0 / n);
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        companion(i, i - 1) = 1.0;
    }
    for (int i = 0; i < n; ++i) {
        const double scaled = q[static_cast<std::size_t>(i)] / lead * std::pow(scale, i - n);
        companion(i, n - 1) = -scaled;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    const auto& ev = solver.eigenvalues();
    for (int i = 0; i < n; ++i) {
        roots.push_back(polish(q, ev[i] * scale));
    }
    return roots;
}

RationalTf::RationalTf(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    const auto finite = [](const Poly& p) {
        return std::all_of(p.begin(), p.end(), [](double c) { return std::isfinite(c); });
    };
    if (!finite(num_) || !finite(den_)) {
        throw InvalidInput("transfer function coefficients must be finite");
    }
    if (degree(den_) < 0) {
        throw InvalidInput("transfer function denominator is identically zero");
    }
    if (num_.empty()) {
        num_.push_back(0.0);
    }
    poles_ = poly_roots(den_);
}

std::vector<std::complex<double>> RationalTf::zeros() const { return poly_roots(num_); }

std::complex<double> RationalTf::eval(std::complex<double> s) const {
    for (const auto& pole : poles_) {
        const double mag = std::abs(pole);
        const bool hit = mag == 0.0 ? s == 0.0 : std::abs(s - pole) <= 1e-6 * mag;
        if (hit) {
            throw PoleEvaluationError("transfer function evaluated at a pole");
        }
    }
    const auto d = poly_eval(den_, s);
    if (d == 0.0) {
        throw PoleEvaluationError("transfer function denominator vanishes");
    }
    return poly_eval(num_, s) / d;
}

} // namespace pll
