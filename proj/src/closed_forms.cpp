#include "hive/closed_forms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hive {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

double TriangleShape::log_base() const {
    if (delta <= 0.0) throw std::domain_error("TriangleShape: degenerate triangle");
    return std::log(4.0) + 2.0 * std::log(delta);
}

double heron_area(double sl, double sm, double sn) {
    if (sl <= 0.0 || sm <= 0.0 || sn <= 0.0) {
        throw std::domain_error("heron_area: side lengths must be positive");
    }
    const double p1 = sl + sm + sn;
    const double p2 = -sl + sm + sn;
    const double p3 = sl - sm + sn;
    const double p4 = sl + sm - sn;
    const double prod = p1 * p2 * p3 * p4;
    return prod <= 0.0 ? 0.0 : 0.25 * std::sqrt(prod);
}

TriangleShape solve_abc(double sl, double sm, double sn) {
    TriangleShape sh;
    sh.sigma_la = sl;
    sh.sigma_mu = sm;
    sh.sigma_nu = sn;
    sh.delta = heron_area(sl, sm, sn);
    if (sh.delta <= 0.0) throw std::domain_error("solve_abc: degenerate triangle");
    // With p = (-sl^2+sm^2+sn^2)/2 etc., a2 = 4 delta^2 / p and cyclic.
    const double d4 = 4.0 * sh.delta * sh.delta;
    const double p = 0.5 * (-sl * sl + sm * sm + sn * sn);
    const double q = 0.5 * (sl * sl - sm * sm + sn * sn);
    const double r = 0.5 * (sl * sl + sm * sm - sn * sn);
    sh.a2 = p != 0.0 ? d4 / p : kInf;
    sh.b2 = q != 0.0 ? d4 / q : kInf;
    sh.c2 = r != 0.0 ? d4 / r : kInf;
    return sh;
}

double log_gaussian_integral(int n, double a2, double b2, double c2) {
    if (n < 1) throw std::invalid_argument("log_gaussian_integral: n must be positive");
    double base;
    if (std::isinf(c2)) {
        base = a2 * b2;  // right-angle limit of a2 b2 c2 / (a2+b2+c2)
    } else if (std::isinf(b2)) {
        base = a2 * c2;
    } else if (std::isinf(a2)) {
        base = b2 * c2;
    } else {
        const double s = a2 + b2 + c2;
        if (s == 0.0) throw std::domain_error("log_gaussian_integral: zero denominator");
        base = a2 * b2 * c2 / s;
    }
    if (!(base > 0.0)) throw std::domain_error("log_gaussian_integral: nonpositive base");
    const double nn = static_cast<double>(n);
    return nn * std::log(2.0 * kPi) + 0.5 * nn * nn * std::log(base);
}

double log_rho_gi(const Spectrum& lambda, const Spectrum& mu, const Spectrum& nu,
                  const TriangleShape& shape, double log_hive_volume) {
    const int n = lambda.n();
    if (mu.n() != n || nu.n() != n) throw std::invalid_argument("log_rho_gi: size mismatch");
    const double tsum = lambda.sum() + mu.sum() - nu.sum();
    double scale = 1.0;
    for (const auto* s : {&lambda, &mu, &nu})
        for (double v : s->values) scale = std::max(scale, std::fabs(v));
    if (std::fabs(tsum) > 1e-9 * scale * n) {
        throw std::invalid_argument("log_rho_gi: nu off the trace hyperplane");
    }
    auto norm_sq = [](const Spectrum& s) {
        double acc = 0.0;
        for (double v : s.values) acc += v * v;
        return acc;
    };
    double log_f = log_hive_volume - log_vandermonde(tau(n));
    if (n > 1) log_f += log_vandermonde(lambda) + log_vandermonde(mu) + log_vandermonde(nu);
    log_f -= 0.5 * (norm_sq(lambda) / shape.a2 + norm_sq(mu) / shape.b2 + norm_sq(nu) / shape.c2);
    return log_f - log_gaussian_integral(n, shape.a2, shape.b2, shape.c2);
}

double entropy_closed_form(double sl, double sm, double sn) {
    const double d = heron_area(sl, sm, sn);
    if (d <= 0.0) throw std::domain_error("entropy_closed_form: degenerate triangle");
    return 1.25 + std::log(4.0 * d * d / (sl * sm * sn));
}

double min_surface_tension_integral(double sl, double sm, double sn) {
    return -entropy_closed_form(sl, sm, sn);
}

double sigma_lower_bound(const SVector& s) {
    if (!s.strictly_positive()) return kInf;
    const double num = std::exp(5.0) * s.l1() * s.s0 * s.s1 * s.s2;
    const double den = 36.0 * (s.s0 + s.s1) * (s.s1 + s.s2) * (s.s2 + s.s0);
    return -std::log(num / den);
}

double sigma_upper_bound(const SVector& s, double upsilon) {
    if (upsilon < 0.0) throw std::domain_error("sigma_upper_bound: upsilon must be >= 0");
    if (!s.strictly_positive()) return kInf;
    const double num = std::exp(1.25) * s.l1() * s.s0 * s.s1 * s.s2;
    const double den = (s.s0 + s.s1) * (s.s1 + s.s2) * (s.s2 + s.s0);
    return -std::log(num / den) + upsilon;
}

double f_limit(const SVector& s) {
    const double t = s.s0 + s.s1;
    if (t <= 0.0) throw std::domain_error("f_limit: s0 + s1 must be positive");
    const double sine = std::sin(kPi * s.s0 / t);
    if (sine <= 0.0) return kInf;
    return -std::log((std::exp(1.0) / kPi) * t * sine);
}

double g_candidate(const SVector& s) {
    if (!s.strictly_positive()) return kInf;
    const double num = 4.0 * std::exp(1.0) * s.l1() * s.s0 * s.s1 * s.s2;
    const double den = kPi * (s.s0 + s.s1) * (s.s1 + s.s2) * (s.s2 + s.s0);
    return -std::log(num / den);
}

} // namespace hive
