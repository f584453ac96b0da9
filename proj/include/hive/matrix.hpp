#pragma once

#include <complex>
#include <vector>

#include "hive/random.hpp"
#include "hive/spectra.hpp"

namespace hive {

using cplx = std::complex<double>;

// Dense Hermitian matrix, row-major storage. Constructors and samplers keep
// the invariant exactly: entries[j*n+i] = conj(entries[i*n+j]), real diagonal.
struct HermitianMatrix {
    int n = 0;
    std::vector<cplx> entries;

    HermitianMatrix() = default;
    explicit HermitianMatrix(int size) : n(size), entries(static_cast<size_t>(size) * size) {}

    cplx operator()(int i, int j) const { return entries[static_cast<size_t>(i) * n + j]; }
    cplx& at(int i, int j) { return entries[static_cast<size_t>(i) * n + j]; }

    void set(int i, int j, cplx v);  // writes v at (i,j) and conj(v) at (j,i)
    double trace() const;
    double hs_norm() const;          // Frobenius
    double max_hermiticity_defect() const;

    HermitianMatrix top_left_minor(int k) const;
    static HermitianMatrix zero(int n) { return HermitianMatrix(n); }
    static HermitianMatrix diagonal(const Spectrum& s);

    HermitianMatrix operator+(const HermitianMatrix& other) const;
    HermitianMatrix scaled(double c) const;
};

struct UnitaryMatrix {
    int n = 0;
    std::vector<cplx> entries;

    explicit UnitaryMatrix(int size = 0) : n(size), entries(static_cast<size_t>(size) * size) {}
    cplx operator()(int i, int j) const { return entries[static_cast<size_t>(i) * n + j]; }
    cplx& at(int i, int j) { return entries[static_cast<size_t>(i) * n + j]; }

    // max |(U U* - I)_{ij}|
    double unitarity_defect() const;
    static UnitaryMatrix identity(int n);
};

// GUE with diagonal entries N(0, sd^2) real and off-diagonal complex entries
// whose real and imaginary parts each have standard deviation sd/sqrt(2)
// (so E|h_ij|^2 = sd^2). sd = 0 gives the zero matrix.
HermitianMatrix sample_gue(int n, double sd, RandomSource& rng);

// Haar unitary via QR of a complex Ginibre matrix with the diagonal phase fix.
UnitaryMatrix haar_unitary(int n, RandomSource& rng);

// U diag(spec) U*
HermitianMatrix conjugate_diag(const Spectrum& spec, const UnitaryMatrix& U);

struct EighResult {
    Spectrum values;                       // nonincreasing
    std::vector<cplx> vectors;             // column k (row-major n x n) if requested
    bool has_vectors = false;
};

// Spectrum (and optionally eigenvectors) of a Hermitian matrix; residual
// contract ||Hv - lambda v|| <= 1e-8 ||H||.
EighResult eigh(const HermitianMatrix& H, bool want_vectors = false);
Spectrum eigh_values(const HermitianMatrix& H);

// Forward declaration; full type lives in hive_core.hpp.
struct GTPattern;

// Row k = spectrum of the top-left k x k minor, k = 1..n.
// threads > 1 solves the minors in parallel.
GTPattern minor_spectra(const HermitianMatrix& H, int threads = 1);

// U diag(1^rank, 0^{n-rank}) U* with Haar U.
HermitianMatrix random_projection(int n, int rank, RandomSource& rng);

} // namespace hive
