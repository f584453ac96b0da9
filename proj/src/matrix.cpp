#include "hive/matrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hive/hive_core.hpp"
#include "hive/threads.hpp"

namespace hive {

namespace {

using EMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EMat> as_eigen(const HermitianMatrix& H) {
    return {H.entries.data(), H.n, H.n};
}

} // namespace

void HermitianMatrix::set(int i, int j, cplx v) {
    if (i == j) v = cplx(v.real(), 0.0);
    at(i, j) = v;
    at(j, i) = std::conj(v);
}

double HermitianMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n; ++i) t += (*this)(i, i).real();
    return t;
}

double HermitianMatrix::hs_norm() const {
    double s = 0.0;
    for (const cplx& z : entries) s += std::norm(z);
    return std::sqrt(s);
}

double HermitianMatrix::max_hermiticity_defect() const {
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return d;
}

HermitianMatrix HermitianMatrix::top_left_minor(int k) const {
    if (k < 1 || k > n) throw std::invalid_argument("top_left_minor: k out of range");
    HermitianMatrix M(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) M.at(i, j) = (*this)(i, j);
    return M;
}

HermitianMatrix HermitianMatrix::diagonal(const Spectrum& s) {
    HermitianMatrix M(s.n());
    for (int i = 0; i < s.n(); ++i) M.at(i, i) = s[i];
    return M;
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
    if (other.n != n) throw std::invalid_argument("matrix sum: size mismatch");
    HermitianMatrix M(n);
    for (size_t k = 0; k < entries.size(); ++k) M.entries[k] = entries[k] + other.entries[k];
    return M;
}

HermitianMatrix HermitianMatrix::scaled(double c) const {
    HermitianMatrix M(n);
    for (size_t k = 0; k < entries.size(); ++k) M.entries[k] = entries[k] * c;
    return M;
}

double UnitaryMatrix::unitarity_defect() const {
    Eigen::Map<const EMat> U(entries.data(), n, n);
    EMat D = U * U.adjoint();
    double d = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d = std::max(d, std::abs(D(i, j) - (i == j ? 1.0 : 0.0)));
    return d;
}

UnitaryMatrix UnitaryMatrix::identity(int n) {
    UnitaryMatrix U(n);
    for (int i = 0; i < n; ++i) U.at(i, i) = 1.0;
    return U;
}

HermitianMatrix sample_gue(int n, double sd, RandomSource& rng) {
    if (n < 1) throw std::invalid_argument("sample_gue: n must be positive");
    HermitianMatrix H(n);
    for (int i = 0; i < n; ++i) {
        H.at(i, i) = sd * rng.normal();
        for (int j = i + 1; j < n; ++j) H.set(i, j, sd * rng.complex_normal());
    }
    return H;
}

UnitaryMatrix haar_unitary(int n, RandomSource& rng) {
    if (n < 1) throw std::invalid_argument("haar_unitary: n must be positive");
    EMat G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<EMat> qr(G);
    EMat Q = qr.householderQ() * EMat::Identity(n, n);
    EMat R = qr.matrixQR().triangularView<Eigen::Upper>();
    // Phase fix: divide each column by the phase of the matching R diagonal,
    // which makes the distribution exactly Haar.
    for (int j = 0; j < n; ++j) {
        const cplx r = R(j, j);
        const double a = std::abs(r);
        const cplx phase = a > 0.0 ? r / a : cplx(1.0, 0.0);
        Q.col(j) *= std::conj(phase);
    }
    UnitaryMatrix U(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) U.at(i, j) = Q(i, j);
    return U;
}

HermitianMatrix conjugate_diag(const Spectrum& spec, const UnitaryMatrix& U) {
    if (spec.n() != U.n) throw std::invalid_argument("conjugate_diag: dimension mismatch");
    const int n = U.n;
    Eigen::Map<const EMat> Um(U.entries.data(), n, n);
    Eigen::VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = spec[i];
    EMat M = Um * d.asDiagonal() * Um.adjoint();
    HermitianMatrix H(n);
    for (int i = 0; i < n; ++i) {
        H.at(i, i) = cplx(M(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) H.set(i, j, M(i, j));
    }
    return H;
}

EighResult eigh(const HermitianMatrix& H, bool want_vectors) {
    const int n = H.n;
    Eigen::SelfAdjointEigenSolver<EMat> solver;
    solver.compute(as_eigen(H), want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigh: eigensolver did not converge");
    }
    EighResult res;
    res.values.values.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        res.values.values[static_cast<size_t>(i)] = solver.eigenvalues()(n - 1 - i);  // nonincreasing
    }
    if (want_vectors) {
        res.has_vectors = true;
        res.vectors.resize(static_cast<size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                res.vectors[static_cast<size_t>(i) * n + k] = solver.eigenvectors()(i, n - 1 - k);
    }
    return res;
}

Spectrum eigh_values(const HermitianMatrix& H) { return eigh(H, false).values; }

GTPattern minor_spectra(const HermitianMatrix& H, int threads) {
    const int n = H.n;
    GTPattern p(n);
    parallel_for(n, [&](int idx) {
        const int k = idx + 1;
        Spectrum s = (k == n) ? eigh_values(H) : eigh_values(H.top_left_minor(k));
        for (int j = 0; j < k; ++j) p.row(k)[static_cast<size_t>(j)] = s[j];
    }, threads);
    return p;
}

HermitianMatrix random_projection(int n, int rank, RandomSource& rng) {
    if (rank < 0 || rank > n) throw std::invalid_argument("random_projection: rank out of range");
    if (rank == 0) return HermitianMatrix::zero(n);
    Spectrum s;
    s.values.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < rank; ++i) s.values[static_cast<size_t>(i)] = 1.0;
    if (rank == n) return HermitianMatrix::diagonal(s);
    return conjugate_diag(s, haar_unitary(n, rng));
}

} // namespace hive
