#pragma once

#include <vector>

#include "hive/hive_core.hpp"
#include "hive/random.hpp"

namespace hive {

// Linearized rhombus constraints on the interior values of a hive with the
// given boundary: slack = offset + sum_k coef[k] * x[k] >= 0.
struct HivePolytopeSpec {
    int n = 0;
    BoundaryTriple boundary;
    std::vector<std::pair<int, int>> vars;  // interior lattice points
    std::vector<std::vector<double>> coef;  // one row per rhombus
    std::vector<double> offset;

    int dim() const { return static_cast<int>(vars.size()); }
};

HivePolytopeSpec build_polytope(const BoundaryTriple& t);

// Interval propagation over single constraints; throws when a variable
// cannot be bounded. Empty feasible set shows up as an inverted interval.
std::vector<std::pair<double, double>> bounding_box(const HivePolytopeSpec& spec);

// n = 3 only: the polytope is an interval in h(1,2).
double exact_volume_n3(const BoundaryTriple& t);

struct VolumeEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    double box_volume = 0.0;
    long accepted = 0;
    long total = 0;
};

// Rejection sampling from the propagated box; n <= 6.
VolumeEstimate mc_volume(const HivePolytopeSpec& spec, long samples, RandomSource& rng);

// V(nu) V(tau) / (V(lambda) V(mu)) * |H_n|, with |H_n| supplied.
double cz_density(const BoundaryTriple& t, double volume);

struct CzReport {
    int n = 0;
    long trials = 0;
    int bins = 0;
    double max_rel_error_bulk = 0.0;  // over bins with >= bulk_threshold hits
    long bulk_bins = 0;
    double density_integral = 0.0;    // predicted density summed over bins
    long bulk_threshold = 1000;
};

// Haar-conjugate lambda and mu, histogram spec(X+Y) against the predicted
// density. n = 2 bins the top eigenvalue; n = 3 bins (nu1, nu2) and uses the
// exact interval volume.
CzReport cz_empirical_check(const Spectrum& lambda, const Spectrum& mu,
                            long trials, int bins, RandomSource& rng);

struct GaussianCheck {
    double mc_estimate = 0.0;   // on the raw (non-log) scale
    double reference = 0.0;
    double rel_error = 0.0;
    double std_error = 0.0;     // of the MC estimate
    long trials = 0;
};

// Importance-sampled integral of the Gaussian hive weight over the trace
// hyperplane against the closed form; n in {1, 2, 3}.
GaussianCheck gaussian_integral_check(int n, double a2, double b2, double c2,
                                      long trials, RandomSource& rng);

} // namespace hive
