#pragma once

#include <cstdint>
#include <vector>

#include "hive/closed_forms.hpp"
#include "hive/hive_core.hpp"
#include "hive/random.hpp"

namespace hive {

// Values of the surface tension on the barycentric lattice
// {(k0,k1,k2)/m : k0+k1+k2 = m}, extended off the simplex by
// sigma(s) = sigma_hat(s/|s|_1) - ln|s|_1.
struct SigmaGrid {
    int m = 0;
    std::vector<double> values;

    explicit SigmaGrid(int res = 0)
        : m(res), values(static_cast<size_t>(res + 1) * (res + 2) / 2, 0.0) {}

    size_t idx(int k0, int k1) const {
        return static_cast<size_t>(k0) * (2 * m + 3 - k0) / 2 + static_cast<size_t>(k1);
    }
    double node(int k0, int k1) const { return values[idx(k0, k1)]; }
    double& node_at(int k0, int k1) { return values[idx(k0, k1)]; }
    size_t node_count() const { return values.size(); }

    // Barycentric interpolation at a simplex point (|s|_1 assumed 1).
    double interpolate(const SVector& s_hat) const;
};

// sigma_hat(s/|s|_1) - ln|s|_1; clamps points on the simplex boundary inward.
double evaluate_sigma(const SigmaGrid& grid, const SVector& s);

struct HessianSample {
    SVector s;
    double weight = 0.0;
};

// Extensions of the semicircle boundary profile: kind names the boundary
// scales (sigma_la, sigma_mu, sigma_nu) carried by (left, top, diagonal).
enum class BasisKind { k011, k101, k110 };
Hive basis_hive(BasisKind kind, int n);

// c1 h011 + c2 h101 + c3 h110 with the coefficients solving the boundary
// conditions; throws when the triangle inequality fails.
Hive interpolant_hive(double sigma_la, double sigma_mu, double sigma_nu, int n);

// Local slack triple at (i,j) wrapped as a sample.
HessianSample local_slacks(const Hive& h, int i, int j);

// One sample per interior stencil, uniform weights summing to one.
// Samples with |s|_1 below floor_rel * median are dropped (counted).
// step > 1 dilates the stencils by that factor (values normalized by step^2),
// which reads off the coarse-grained Hessian instead of lattice-scale noise.
std::vector<HessianSample> collect_samples(const Hive& h, double floor_rel = 1e-6,
                                           long* dropped = nullptr, int step = 1);

// Right-hand side of the per-hive equation.
double rhs_entropy(double sigma_la, double sigma_mu, double sigma_nu);

// Sparse rows sum_v w_v sigma_hat(shat_v) = rhs + sum_v w_v ln|s_v|_1.
struct SigmaSystem {
    int m = 0;
    std::vector<std::vector<std::pair<int, double>>> rows;
    std::vector<double> b;

    explicit SigmaSystem(int res = 0) : m(res) {}
    long row_count() const { return static_cast<long>(rows.size()); }
};

void add_hive_row(SigmaSystem& sys, const Hive& h, double sigma_la, double sigma_mu,
                  double sigma_nu, double floor_rel = 1e-6, long* dropped = nullptr,
                  int step = 1);

// Same row structure but against a planted homogeneous target function,
// used for solver self-tests.
void add_planted_row(SigmaSystem& sys, const Hive& h,
                     const std::function<double(const SVector&)>& target,
                     double floor_rel = 1e-6);

struct SolveOptions {
    bool convexity = true;
    int admm_iterations = 4000;
    double rho = 1.0;            // scaled internally by operator norms
    double ridge = 1e-8;
    int polish_sweeps = 60000;
    double convexity_slack = 1e-8;
    // Tikhonov anchor for nodes the data never touches; empty means zero.
    std::vector<double> prior;
    // Optional pointwise floor enforced together with convexity in the final
    // polish (alternating projections); empty means no floor.
    std::vector<double> floor_values;
};

struct SolveResult {
    SigmaGrid grid;
    double residual = 0.0;       // ||Ax-b|| / sqrt(rows)
    double min_convexity_slack = 0.0;
    long rows = 0;
};

// Constrained least squares: minimize ||Ax-b||^2 subject to nonnegative
// second differences along the three lattice directions. Deterministic.
SolveResult solve_sigma(const SigmaSystem& sys, const SolveOptions& opts = {});

struct EstimatorConfig {
    int n = 64;
    int hives = 2000;
    int m = 24;
    double sigma_min = 0.3, sigma_max = 3.0;  // log-uniform draw range
    double floor_rel = 1e-6;
    int coarse_step = 0;                      // 0 = n/16; Hessian window size
    int threads = 1;
    bool biased_interpolant = false;          // add interpolant hives instead of samples
    SolveOptions solve;
};

struct EstimateResult {
    SigmaGrid grid;
    double residual = 0.0;
    long rows = 0;
    long dropped_samples = 0;
    double min_convexity_slack = 0.0;
};

// Full pipeline: sampled hives with right-triangle boundary scales
// (sigma_nu pinned to sqrt(sigma_la^2 + sigma_mu^2)), assembled and solved.
EstimateResult estimate_sigma(const EstimatorConfig& cfg, RandomSource rng);

// Synthetic self-test system: constant-Hessian hives probing jittered grid
// nodes at random overall scales, with the right-hand side planted from g.
SigmaSystem planted_g_system(int m, int rows, RandomSource rng);

struct TableRow {
    SVector s;
    double exp_sigma_num = 0.0;
    double exp_g = 0.0;
};

struct ComparisonReport {
    std::vector<TableRow> table;
    double max_table_gap = 0.0;          // max |exp(-sigma_num) - exp(-g)|
    double max_lower_bound_violation = 0.0;
    double concavity_violation_fraction = 0.0;
    std::vector<double> f_gap_ray;       // sigma_num - f on the s0 = s1 ray, s2 rising
    std::vector<double> node_minus_g;    // per interior node
};

ComparisonReport comparison_report(const SigmaGrid& grid, int concavity_trials = 10000,
                                   std::uint64_t seed = 17);

} // namespace hive
