#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hive/volume.hpp"

using namespace hive;

namespace {

// Brute-force oracle for the n=3 interval: scan the single interior value.
double n3_volume_scan(const BoundaryTriple& t) {
    Hive h = hive_boundary(t);
    const double scale = std::max(1.0, h.value_scale());
    double lo = 1e9, hi = -1e9;
    const double range = 4.0 * scale, step = range / 400000.0;
    for (double v = -range; v <= range; v += step) {
        h.at(1, 2) = v;
        bool ok = true;
        for (const auto& rs : rhombus_slacks(h)) ok = ok && rs.slack >= 0.0;
        if (ok) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return hi >= lo ? hi - lo : 0.0;
}

} // namespace

TEST_CASE("exact_volume_n3 against scan oracle") {
    const Spectrum z({0.0, 0.0, 0.0});
    CHECK(exact_volume_n3({z, z, z}) == doctest::Approx(0.0));

    const Spectrum s({2.0, 0.0, -2.0});
    BoundaryTriple t{s, s, s};
    const double ex = exact_volume_n3(t);
    CHECK(ex == doctest::Approx(n3_volume_scan(t)).epsilon(1e-3));
    CHECK(ex > 0.0);

    // Horn-infeasible nu: top eigenvalue beyond lambda_1 + mu_1
    BoundaryTriple bad{s, s, Spectrum({9.0, 0.0, -9.0})};
    CHECK(exact_volume_n3(bad) == doctest::Approx(0.0));
}

TEST_CASE("mc_volume agrees with exact at n=3 and scales") {
    RandomSource rng(10);
    const Spectrum s({2.0, 0.0, -2.0});
    BoundaryTriple t{s, s, s};
    const double ex = exact_volume_n3(t);
    const auto spec = build_polytope(t);
    const auto est = mc_volume(spec, 200000, rng);
    CHECK(std::fabs(est.estimate - ex) <= 3.0 * est.std_error + 1e-9);

    // Lebesgue scaling at n=4: dim = 3
    std::vector<double> v2;
    for (double x : s.values) v2.push_back(2.0 * x);
    const Spectrum s4({3.0, 1.0, -1.0, -3.0});
    Spectrum s4b = s4;
    for (double& x : s4b.values) x *= 2.0;
    BoundaryTriple t4{s4, s4, s4};
    BoundaryTriple t4b{s4b, s4b, s4b};
    RandomSource r1(4), r2(5);
    const auto e1 = mc_volume(build_polytope(t4), 400000, r1);
    const auto e2 = mc_volume(build_polytope(t4b), 400000, r2);
    const int dim = 3;
    CHECK(e2.estimate == doctest::Approx(std::pow(2.0, dim) * e1.estimate)
                             .epsilon(0.0)
                             .scale(0.0)
                             .epsilon(3.0 * (e2.std_error + 8.0 * e1.std_error) /
                                      std::max(1e-12, std::pow(2.0, dim) * e1.estimate)));

    BoundaryTriple bad{s, s, Spectrum({9.0, 0.0, -9.0})};
    RandomSource r3(6);
    const auto e3 = mc_volume(build_polytope(bad), 20000, r3);
    CHECK(e3.estimate == doctest::Approx(0.0));
}

TEST_CASE("cz_density n=2 normalizes") {
    const Spectrum s({1.0, -1.0});
    // density of nu_1 = t is t/2 on [0, 2]; integrate over a fine grid
    double integral = 0.0;
    const int g = 2000;
    for (int k = 0; k < g; ++k) {
        const double t = (k + 0.5) * (2.0 / g);
        BoundaryTriple bt{s, s, Spectrum({t, -t})};
        // feasibility: |H_2| = 1 inside the Horn interval
        const auto spec = build_polytope(bt);
        bool feas = true;
        for (double o : spec.offset) feas = feas && o >= -1e-12;
        const double dens = feas ? cz_density(bt, 1.0) : 0.0;
        CHECK(dens == doctest::Approx(feas ? t / 2.0 : 0.0).epsilon(1e-9));
        integral += dens * (2.0 / g);
    }
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("cz_empirical_check n=2 histogram") {
    RandomSource rng(31);
    const Spectrum s({1.0, -1.0});
    const auto rep = cz_empirical_check(s, s, 120000, 40, rng);
    CHECK(rep.density_integral == doctest::Approx(1.0).epsilon(0.01));
    CHECK(rep.bulk_bins > 10);
    CHECK(rep.max_rel_error_bulk <= 0.12);
}

TEST_CASE("gaussian_integral_check n=1 acute and obtuse") {
    RandomSource rng(8);
    auto run = [&](double a2, double b2, double c2) {
        const auto r = gaussian_integral_check(1, a2, b2, c2, 400000, rng);
        INFO("ref=" << r.reference << " est=" << r.mc_estimate << " se=" << r.std_error);
        CHECK(std::fabs(r.mc_estimate - r.reference) <= 4.0 * r.std_error + 0.01 * r.reference);
    };
    run(1.0, 1.0, 1.0);
    run(2.0, 0.5, 1.5);
    run(1.0, 1.0, -5.0);  // obtuse: -c2 > a2 + b2, variance still finite
}

TEST_CASE("gaussian_integral_check n=2") {
    RandomSource rng(9);
    const auto r = gaussian_integral_check(2, 1.0, 1.0, 1.0, 60000, rng);
    CHECK(std::fabs(r.mc_estimate - r.reference) <= 4.0 * r.std_error + 0.03 * r.reference);
    const auto ro = gaussian_integral_check(2, 1.0, 1.0, -6.0, 60000, rng);
    CHECK(std::fabs(ro.mc_estimate - ro.reference) <= 4.0 * ro.std_error + 0.05 * ro.reference);
}
