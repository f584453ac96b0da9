#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hive/hive_core.hpp"
#include "hive/matrix.hpp"

using namespace hive;

namespace {

Hive quadratic_hive(int n, double hxx, double hxy, double hyy) {
    Hive h(n);
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            h.at(i, j) = 0.5 * (hxx * i * i + 2.0 * hxy * i * j + hyy * j * j);
    return h;
}

} // namespace

TEST_CASE("gt_validate small cases") {
    GTPattern ok(2);
    ok.row(1) = {0.0};
    ok.row(2) = {1.0, -1.0};
    CHECK(gt_validate(ok, 1e-12).ok());

    GTPattern bad(2);
    bad.row(1) = {2.0};
    bad.row(2) = {1.0, 0.0};
    const auto rep = gt_validate(bad, 1e-12);
    CHECK_FALSE(rep.ok());
}

TEST_CASE("rhombus slacks on constant and quadratic hives") {
    Hive zero(5);
    for (const auto& rs : rhombus_slacks(zero)) CHECK(rs.slack == 0.0);

    // h = -(i^2 + j^2 - i j): hxx = hyy = -2, hxy = 1, all slack types positive
    const Hive q = quadratic_hive(6, -2.0, 1.0, -2.0);
    for (const auto& rs : rhombus_slacks(q)) CHECK(rs.slack == doctest::Approx(1.0));
}

TEST_CASE("local slack triple calibration") {
    // (hxx, hxy, hyy) = (-8, 4, -8) -> s = (4, 4, 4)
    const Hive q = quadratic_hive(8, -8.0, 4.0, -8.0);
    double s[3];
    local_slack_triple(q, 2, 4, s);
    CHECK(s[0] == doctest::Approx(4.0));
    CHECK(s[1] == doctest::Approx(4.0));
    CHECK(s[2] == doctest::Approx(4.0));
}

TEST_CASE("hive_boundary partial sums") {
    Spectrum b({15.0, 5.0, -5.0, -15.0});
    BoundaryTriple t{b, b, b};
    const Hive h = hive_boundary(t);
    CHECK(h(0, 0) == doctest::Approx(0.0));
    CHECK(h(0, 1) == doctest::Approx(15.0));
    CHECK(h(0, 2) == doctest::Approx(20.0));
    CHECK(h(0, 3) == doctest::Approx(15.0));
    CHECK(h(0, 4) == doctest::Approx(0.0));

    BoundaryTriple t2{Spectrum({2.0, 0.0, -2.0}), Spectrum({2.0, 0.0, -2.0}),
                      Spectrum({4.0, 0.0, -4.0})};
    const Hive h2 = hive_boundary(t2);
    CHECK(h2(0, 3) == doctest::Approx(0.0));
    CHECK(h2(1, 3) == doctest::Approx(2.0));
    CHECK(h2(2, 3) == doctest::Approx(2.0));
    CHECK(h2(3, 3) == doctest::Approx(0.0));

    BoundaryTriple mismatch{Spectrum({1.0, -1.0}), Spectrum({0.0, 0.0}), Spectrum({5.0, 0.0})};
    CHECK_THROWS(hive_boundary(mismatch));
}

TEST_CASE("validate_hive catches a dent") {
    Hive q = quadratic_hive(6, -2.0, 1.0, -2.0);
    CHECK(validate_hive(q, nullptr).ok());
    q.at(2, 4) += 10.0;
    CHECK_FALSE(validate_hive(q, nullptr).ok());
}

TEST_CASE("validate_augmented accepts a quadratic instance") {
    // Hive part -(i^2 + j^2 - i j); below the diagonal the top-left-justified
    // Gelfand-Tsetlin pattern of its diagonal, whose embedding is -j^2.
    const int n = 6;
    AugmentedHive a(n);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            a.at(i, j) = (i <= j) ? -static_cast<double>(i * i + j * j - i * j)
                                  : -static_cast<double>(j * j);
    CHECK(validate_augmented(a).ok());
    CHECK(validate_augmented(AugmentedHive(4)).ok());  // all-zero square
}

TEST_CASE("validate_augmented flags exactly the incident stencils") {
    // The all-zero augmented hive has every slack tight, so a single bumped
    // vertex shows up in precisely the inequalities that contain it.
    const int n = 6;
    AugmentedHive a(n);
    a.at(2, 4) += 1e-6;
    const auto rep = validate_augmented(a);
    CHECK_FALSE(rep.ok());
    CHECK(rep.violations.size() > 0);
    for (const auto& v : rep.violations) {
        const bool near = std::abs(v.i - 2) <= 2 && std::abs(v.j - 4) <= 2;
        CHECK(near);
    }
}

TEST_CASE("make_large_gaps") {
    GTPattern gx(2), gy(2);
    gx.row(1) = {0.0};
    gx.row(2) = {1.0, -1.0};
    gy = gx;
    const Spectrum lam = make_large_gaps(gx, gy, 1.0);
    CHECK(lam[0] == doctest::Approx(3.0));
    CHECK(lam[1] == doctest::Approx(0.0));
    CHECK(lam[0] - lam[1] > gx.spread());

    GTPattern g1(1);
    g1.row(1) = {5.0};
    const Spectrum l1 = make_large_gaps(g1, g1, 1.0);
    CHECK(l1[0] == doctest::Approx(0.0));
}

TEST_CASE("build_double_hive n=2 analytic values") {
    // X with spectrum (l1, l2) and top-left entry x11, Y likewise
    const double l1 = 1.0, l2 = -1.0, x11 = 0.25;
    const double m1 = 2.0, m2 = -2.0, y11 = -1.5;
    GTPattern gx(2), gy(2);
    gx.row(1) = {x11};
    gx.row(2) = {l1, l2};
    gy.row(1) = {y11};
    gy.row(2) = {m1, m2};
    const Spectrum lam = make_large_gaps(gx, gy, 1.0);
    const double G = lam[0];
    const DoubleHive d = build_double_hive(gx, gy, lam);
    CHECK(d(0, 0) == doctest::Approx(0.0));
    CHECK(d(0, 1) == doctest::Approx(l1));
    CHECK(d(0, 2) == doctest::Approx(l1 + l2));
    CHECK(d(1, 1) == doctest::Approx(G));
    CHECK(d(1, 2) == doctest::Approx(G + x11));
    CHECK(d(2, 2) == doctest::Approx(G));
    CHECK(d(1, 0) == doctest::Approx(m1));
    CHECK(d(2, 0) == doctest::Approx(m1 + m2));
    CHECK(d(2, 1) == doctest::Approx(G + y11));
}

TEST_CASE("build_double_hive degenerate pattern gives affine triangles") {
    const int n = 4;
    GTPattern g(n);
    for (int k = 1; k <= n; ++k)
        for (int j = 0; j < k; ++j) g.row(k)[static_cast<size_t>(j)] = 3.0;
    const Spectrum lam = make_large_gaps(g, g, 1.0);
    const DoubleHive d = build_double_hive(g, g, lam);
    CHECK(validate_double_hive(d).ok());
}

TEST_CASE("build_double_hive random GUE inputs validate") {
    RandomSource rng(4);
    for (int n : {5, 20, 50}) {
        const auto x = sample_gue(n, 1.0, rng);
        const auto y = sample_gue(n, 1.0, rng);
        const GTPattern gx = minor_spectra(x, 2), gy = minor_spectra(y, 2);
        const DoubleHive d = build_double_hive(gx, gy, make_large_gaps(gx, gy, 1.0));
        CHECK(validate_double_hive(d, 1e-7).ok());
    }
}

TEST_CASE("gt_volume_log") {
    CHECK(gt_volume_log(tau(7)) == doctest::Approx(0.0));
    CHECK(gt_volume_log(Spectrum({2.0, 1.0, 0.0})) == doctest::Approx(0.0));
    CHECK(gt_volume_log(Spectrum({2.0, 0.0, -2.0})) == doctest::Approx(std::log(8.0)));
    // scaling: t^{ n(n-1)/2 }
    const Spectrum s({1.7, 0.4, -0.9, -1.2});
    const double t = 2.5;
    Spectrum st = s;
    for (double& v : st.values) v *= t;
    CHECK(gt_volume_log(st) - gt_volume_log(s) == doctest::Approx(6.0 * std::log(t)).epsilon(1e-9));
}

TEST_CASE("diag_differences") {
    AugmentedHive a(3);
    for (int i = 0; i <= 3; ++i)
        for (int j = 0; j <= 3; ++j) a.at(i, j) = (i == j) ? static_cast<double>(i * i) : 0.0;
    const Spectrum d = diag_differences(a);
    CHECK(d.values == std::vector<double>{1.0, 3.0, 5.0});
}

TEST_CASE("averaging closure") {
    // Slacks are linear, so the pointwise mean of valid hives stays valid.
    RandomSource rng(6);
    const int n = 5, M = 100;
    Hive mean(n);
    for (double& v : mean.v) v = 0.0;
    for (int k = 0; k < M; ++k) {
        const auto x = sample_gue(n, 1.0, rng);
        const auto y = sample_gue(n, 1.0, rng);
        const GTPattern gx = minor_spectra(x), gy = minor_spectra(y);
        const Hive h = build_double_hive(gx, gy, make_large_gaps(gx, gy, 1.0)).upper_triangle();
        REQUIRE(validate_hive(h, nullptr).ok());
        for (size_t c = 0; c < h.v.size(); ++c) mean.v[c] += h.v[c];
    }
    for (double& v : mean.v) v /= M;
    CHECK(validate_hive(mean, nullptr, 1e-12).ok());
}
