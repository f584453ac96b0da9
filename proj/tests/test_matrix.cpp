#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hive/hive_core.hpp"
#include "hive/matrix.hpp"

using namespace hive;

TEST_CASE("sample_gue structure") {
    RandomSource rng(42);
    const HermitianMatrix z = sample_gue(3, 0.0, rng);
    for (const auto& e : z.entries) CHECK(std::abs(e) == 0.0);

    const HermitianMatrix h = sample_gue(2, 1.0, rng);
    CHECK(h.max_hermiticity_defect() == 0.0);
    CHECK(h(0, 0).imag() == 0.0);
    CHECK(h(1, 1).imag() == 0.0);
}

TEST_CASE("sample_gue second moment") {
    // E tr H^2 = sd^2 n^2 under this convention
    RandomSource rng(5);
    const int n = 24;
    double acc = 0.0;
    const int draws = 400;
    for (int k = 0; k < draws; ++k) {
        const auto h = sample_gue(n, 1.0, rng);
        acc += h.hs_norm() * h.hs_norm();
    }
    acc /= draws;
    CHECK(acc == doctest::Approx(static_cast<double>(n) * n).epsilon(0.05));
}

TEST_CASE("sample_gue reproducible") {
    RandomSource a(123), b(123);
    const auto h1 = sample_gue(6, 1.0, a);
    const auto h2 = sample_gue(6, 1.0, b);
    for (size_t k = 0; k < h1.entries.size(); ++k) CHECK(h1.entries[k] == h2.entries[k]);
}

TEST_CASE("haar_unitary unitarity and moments") {
    RandomSource rng(11);
    const auto u1 = haar_unitary(1, rng);
    CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) <= 1e-12);

    const auto u5 = haar_unitary(5, rng);
    CHECK(u5.unitarity_defect() <= 1e-10);

    // E |U_11|^2 = 1/n
    const int n = 50, draws = 10000;
    double acc = 0.0;
    for (int k = 0; k < draws; ++k) {
        const auto u = haar_unitary(n, rng);
        acc += std::norm(u(0, 0));
    }
    acc /= draws;
    const double se = 1.0 / (n * std::sqrt(static_cast<double>(draws)));  // ~Var bound
    CHECK(std::fabs(acc - 1.0 / n) <= 3.0 * se + 1e-4);
}

TEST_CASE("conjugate_diag spectrum round trip") {
    RandomSource rng(3);
    const Spectrum spec({2.0, 0.0, -2.0});
    const auto u = haar_unitary(3, rng);
    const auto h = conjugate_diag(spec, u);
    CHECK(std::fabs(h.trace()) <= 1e-12);
    const Spectrum back = eigh_values(h);
    for (int i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(spec[i]).epsilon(1e-8));

    const auto id = UnitaryMatrix::identity(2);
    const auto d = conjugate_diag(Spectrum({1.0, -1.0}), id);
    CHECK(d(0, 0).real() == doctest::Approx(1.0));
    CHECK(d(1, 1).real() == doctest::Approx(-1.0));
    CHECK(std::abs(d(0, 1)) == doctest::Approx(0.0));
}

TEST_CASE("eigh known spectra and trace identities") {
    HermitianMatrix pauli_x(2);
    pauli_x.set(0, 1, cplx(1.0, 0.0));
    const Spectrum s = eigh_values(pauli_x);
    CHECK(s[0] == doctest::Approx(1.0));
    CHECK(s[1] == doctest::Approx(-1.0));

    HermitianMatrix id3(3);
    for (int i = 0; i < 3; ++i) id3.at(i, i) = 1.0;
    for (double v : eigh_values(id3).values) CHECK(v == doctest::Approx(1.0));

    RandomSource rng(9);
    const auto h = sample_gue(20, 1.0, rng);
    const Spectrum sp = eigh_values(h);
    double sum = 0.0, sum2 = 0.0;
    for (double v : sp.values) {
        sum += v;
        sum2 += v * v;
    }
    CHECK(sum == doctest::Approx(h.trace()).epsilon(1e-9));
    CHECK(sum2 == doctest::Approx(h.hs_norm() * h.hs_norm()).epsilon(1e-8));
}

TEST_CASE("eigh eigenvector residuals") {
    RandomSource rng(13);
    const auto h = sample_gue(15, 1.0, rng);
    const auto res = eigh(h, true);
    REQUIRE(res.has_vectors);
    const double norm = h.hs_norm();
    for (int k = 0; k < 15; ++k) {
        double resid = 0.0;
        for (int i = 0; i < 15; ++i) {
            cplx acc = 0.0;
            for (int j = 0; j < 15; ++j) acc += h(i, j) * res.vectors[static_cast<size_t>(j) * 15 + k];
            acc -= res.values[k] * res.vectors[static_cast<size_t>(i) * 15 + k];
            resid += std::norm(acc);
        }
        CHECK(std::sqrt(resid) <= 1e-8 * norm);
    }
}

TEST_CASE("minor_spectra analytic and interlacing") {
    HermitianMatrix pauli_x(2);
    pauli_x.set(0, 1, cplx(1.0, 0.0));
    const GTPattern p = minor_spectra(pauli_x);
    CHECK(p.row(1)[0] == doctest::Approx(0.0));
    CHECK(p.row(2)[0] == doctest::Approx(1.0));
    CHECK(p.row(2)[1] == doctest::Approx(-1.0));

    const auto d = HermitianMatrix::diagonal(Spectrum({3.0, 2.0, 1.0}));
    const GTPattern pd = minor_spectra(d);
    CHECK(pd.row(1)[0] == doctest::Approx(3.0));
    CHECK(pd.row(3)[2] == doctest::Approx(1.0));

    RandomSource rng(21);
    const auto h = sample_gue(30, 1.0, rng);
    const GTPattern g = minor_spectra(h, 2);
    const auto rep = gt_validate(g, 1e-10 * std::max(1.0, g.value_scale()));
    CHECK(rep.ok());
}

TEST_CASE("random_projection spectra") {
    RandomSource rng(31);
    const auto z = random_projection(4, 0, rng);
    CHECK(z.hs_norm() == 0.0);
    const auto full = random_projection(4, 4, rng);
    for (double v : eigh_values(full).values) CHECK(v == doctest::Approx(1.0));
    const auto half = random_projection(6, 3, rng);
    const Spectrum s = eigh_values(half);
    for (int i = 0; i < 3; ++i) CHECK(s[i] == doctest::Approx(1.0).epsilon(1e-10));
    for (int i = 3; i < 6; ++i) CHECK(std::fabs(s[i]) <= 1e-10);
}

TEST_CASE("ky fan against matrix oracle") {
    RandomSource rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 18);
        const auto x = sample_gue(n, 1.0, rng);
        const auto y = sample_gue(n, 1.0, rng);
        CHECK(ky_fan_check(eigh_values(x), eigh_values(y), eigh_values(x + y)));
    }
}
