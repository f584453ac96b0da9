#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hive/random.hpp"

namespace hive {

// Nonincreasing real sequence. trace_zero marks sequences that are meant to
// sum to zero (checked by validate()).
struct Spectrum {
    std::vector<double> values;
    bool trace_zero = false;

    Spectrum() = default;
    explicit Spectrum(std::vector<double> v, bool tz = false)
        : values(std::move(v)), trace_zero(tz) {}

    int n() const { return static_cast<int>(values.size()); }
    double operator[](int i) const { return values[static_cast<size_t>(i)]; }
    double& operator[](int i) { return values[static_cast<size_t>(i)]; }
    double sum() const;
    double norm2() const;

    bool is_nonincreasing(double tol = 0.0) const;
    void validate() const;  // throws std::invalid_argument on violation

    // partial_sums()[i] = values[0] + ... + values[i-1], length n+1, [0] = 0
    std::vector<double> partial_sums() const;
};

struct BoundaryTriple {
    Spectrum lambda, mu, nu;

    int n() const { return lambda.n(); }
    // |sum lambda + sum mu - sum nu| <= tol * scale
    bool trace_consistent(double rel_tol = 1e-9) const;
    void validate() const;
};

// tau_n(i) = (n+1)/2 - i, i = 1..n; sums to zero.
Spectrum tau(int n);

// sum_{i<j} ln(v_i - v_j). Throws on a repeated or increasing pair
// ("degenerate spectrum").
double log_vandermonde(const Spectrum& s);

// Seminorm: project out the mean, sort nonincreasing, return the largest
// prefix sum (never negative).
double seminorm_I(const std::vector<double>& v);

// lambda_n(i) = n^2 (f(i/n) - f((i-1)/n)).
Spectrum discretize_boundary(const std::function<double(double)>& f, int n);

// Gamma(t) = (2/pi) \int_{-1}^t sqrt(1-x^2) dx on [-1, 1].
double semicircle_cdf(double t);
// Inverse of Gamma, |Gamma(result) - p| <= 1e-12.
double semicircle_quantile(double p);

// 2 Gamma^{-1}(1 - x), decreasing from 2 to -2 on [0, 1].
double lambda_cl(double x);

// lambda_n^cl(i) = 2 n^2 \int_{1-i/n}^{1-(i-1)/n} Gamma^{-1}(x) dx,
// evaluated through the closed-form antiderivative of the quantile.
Spectrum lambda_cl_n(int n);

// Approximate mean eigenvalues of an n x n GUE matrix with unit entry scale
// (diagonal N(0,1), off-diagonal complex with E|h_ij|^2 = 1).
// Bulk locations sqrt(n) * lambda_cl((i - 1/2)/n); with_correction adds the
// 1/n mean-shift term -1/(2 rho_sc(g)) per eigenvalue (fourth cumulants and
// the diagonal-variance excess vanish for this ensemble).
Spectrum expected_gue_locations(int n, bool with_correction);

// For all k: sum of top k of z <= top-k sum of x + top-k sum of y,
// within 1e-8 relative slack.
bool ky_fan_check(const Spectrum& x, const Spectrum& y, const Spectrum& z);

// (1/4pi^2) \int\int_{[-2,2]^2} sqrt(4-x^2) sqrt(4-y^2) ln|x-y| dx dy.
// Log singularity handled by analytic integration on the panel containing it.
double semicircle_log_energy(int panels = 2000);

// \int\int_{[0,1]^2} ln|x-y| dx dy, same singularity treatment.
double unit_square_log_kernel(int panels = 2000);

} // namespace hive
