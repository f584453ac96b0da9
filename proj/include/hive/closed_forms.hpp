#pragma once

#include "hive/spectra.hpp"

namespace hive {

// Positive orthant coordinate triple for the surface tension argument.
struct SVector {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;

    double l1() const { return s0 + s1 + s2; }
    SVector scaled(double t) const { return {t * s0, t * s1, t * s2}; }
    bool strictly_positive() const { return s0 > 0.0 && s1 > 0.0 && s2 > 0.0; }
};

// Side lengths and the squared Gaussian scales they induce. c2 is negative in
// the obtuse case (sigma_nu^2 > sigma_la^2 + sigma_mu^2) and +inf at an exact
// right angle; all downstream formulas stay finite through log_base().
struct TriangleShape {
    double sigma_la = 0.0, sigma_mu = 0.0, sigma_nu = 0.0;
    double a2 = 0.0, b2 = 0.0, c2 = 0.0;
    double delta = 0.0;

    double sum_sq() const { return a2 + b2 + c2; }
    // ln(a2 b2 c2 / (a2+b2+c2)) = ln(4 delta^2), evaluated from delta.
    double log_base() const;
};

// Heron's formula; 0 when no triangle exists.
double heron_area(double sigma_la, double sigma_mu, double sigma_nu);

// Invert sigma_la^2 = a2(b2+c2)/(a2+b2+c2) and cyclic versions.
// Requires a nondegenerate triangle (delta > 0).
TriangleShape solve_abc(double sigma_la, double sigma_mu, double sigma_nu);

// n ln(2 pi) + (n^2/2) ln(a2 b2 c2 / (a2+b2+c2)).
double log_gaussian_integral(int n, double a2, double b2, double c2);

// Log density of the Gaussian hive ensemble at (lambda, mu, nu); the hive
// polytope volume enters through the externally supplied log value.
double log_rho_gi(const Spectrum& lambda, const Spectrum& mu, const Spectrum& nu,
                  const TriangleShape& shape, double log_hive_volume);

// 5/4 + ln(4 delta^2 / (sigma_la sigma_mu sigma_nu)).
double entropy_closed_form(double sigma_la, double sigma_mu, double sigma_nu);

// Minimum of the surface tension integral over hives with semicircle
// boundary data: the negated entropy value.
double min_surface_tension_integral(double sigma_la, double sigma_mu, double sigma_nu);

// -ln( e^5 (s0+s1+s2) s0 s1 s2 / (36 (s0+s1)(s1+s2)(s2+s0)) ); +inf on the
// boundary of the orthant.
double sigma_lower_bound(const SVector& s);

// -ln( e^{5/4} (s0+s1+s2) s0 s1 s2 / ((s0+s1)(s1+s2)(s2+s0)) ) + upsilon.
double sigma_upper_bound(const SVector& s, double upsilon);

// -ln( (e/pi) (s0+s1) sin(pi s0/(s0+s1)) ): the s2 -> infinity limit profile.
double f_limit(const SVector& s);

// -ln( 4e (s0+s1+s2) s0 s1 s2 / (pi (s0+s1)(s1+s2)(s2+s0)) ).
double g_candidate(const SVector& s);

} // namespace hive
