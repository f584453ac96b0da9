#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hive/hive_core.hpp"
#include "hive/matrix.hpp"

namespace hive {

// Values on the lattice tetrahedron {(x,y,z,w) >= 0 : x+y+z+w = n}.
// The two faces x = 0 and y = 0 are the input panels; excavation fills every
// vertex with x, y >= 1 and records which branch of the max was taken.
class TetrahedronField {
public:
    explicit TetrahedronField(int n);

    int n() const { return n_; }
    size_t size() const { return values_.size(); }

    double operator()(int x, int y, int z, int w) const { (void)w; return values_[idx(x, y, z)]; }
    double& at(int x, int y, int z, int w) { (void)w; return values_[idx(x, y, z)]; }
    std::uint8_t bit(int x, int y, int z, int w) const { (void)w; return bits_[idx(x, y, z)]; }
    std::uint8_t& bit_at(int x, int y, int z, int w) { (void)w; return bits_[idx(x, y, z)]; }

    bool excavated() const { return excavated_; }
    void mark_excavated() { excavated_ = true; }

    double value_scale() const;

    size_t idx(int x, int y, int z) const {
        return x_offset_[static_cast<size_t>(x)]
             + static_cast<size_t>(y) * (n_ - x + 1) - static_cast<size_t>(y) * (y - 1) / 2
             + static_cast<size_t>(z);
    }

private:
    int n_ = 0;
    bool excavated_ = false;
    std::vector<size_t> x_offset_;
    std::vector<double> values_;
    std::vector<std::uint8_t> bits_;
};

// Copy a main-glued double hive onto the panels x = 0 (upper triangle, via
// (0, j-i, n-j, i)) and y = 0 (lower triangle, via (i-j, 0, n-i, j)).
// Throws "panel gluing mismatch" when the shared edge disagrees.
TetrahedronField init_top_panels(const DoubleHive& d);

// Fill every vertex with x, y >= 1 by sweeping x + y upward, using
// e = max(a+c, b+d) - f; records the argmax bit (0 when a+c wins or ties).
void excavate(TetrahedronField& t, int threads = 1);

// Largest |max(a+c,b+d) - e - f| over all unit octahedra.
double octahedron_audit(const TetrahedronField& t);

// The two output faces w = 0 and z = 0 assembled on the square grid,
// glued along the antidiagonal {i + j = n}.
DoubleHive bottom_panels(const TetrahedronField& t);

// The w = 0 face as a hive in triangle coordinates: H(a,b) = o(a, b-a, n-b, 0).
Hive pqr_hive(const TetrahedronField& t);

struct AugmentedSampleOptions {
    double margin = 1.0;
    int threads = 1;
    int completion_sweeps = 20000;   // cap for the interior feasibility pass
    double completion_rel_tol = 1e-11;
};

// Exact sampler: minor patterns of X and Y against a large-gap frame,
// octahedron excavation, then assembly of the augmented hive. The diagonal
// carries the sampled spectrum; the region below it is its Gelfand-Tsetlin
// pattern read off the z = 0 face; the hive interior above the diagonal is a
// deterministic feasible completion.
AugmentedHive sample_augmented_hive(const HermitianMatrix& X, const HermitianMatrix& Y,
                                    const AugmentedSampleOptions& opts = {});

// Lozenge / triangle tiling of the side-n triangle, driven by the argmax
// bits of the w = 0 octahedron layer.
struct Tiling {
    struct Lozenge { int o; int i; int j; };       // orientation 0|1|2, anchor down-cell
    struct TriangleTile { int up; int i; int j; }; // up = 1 for upward cell
    int n = 0;
    std::vector<Lozenge> lozenges;
    std::vector<TriangleTile> triangles;

    size_t tile_count() const { return lozenges.size() + triangles.size(); }
    bool exact_cover() const;  // 2L + T == n^2 with disjoint cells
};

// target_i/target_j select a bottom vertex whose dependency cone limits the
// extraction; negative values use the whole panel.
Tiling extract_tiling(const TetrahedronField& t, int target_i = -1, int target_j = -1);

std::string render_svg(const Tiling& t);

// Input ensembles for repeated excavation runs.
struct HiveSamplerConfig {
    enum class Kind { gue, fixed_spectra, projection };
    Kind kind = Kind::gue;
    int n = 0;
    double sd_x = 1.0, sd_y = 1.0;   // gue: entry scale of the two draws
    Spectrum lambda_fixed, mu_fixed; // fixed_spectra: Haar conjugations of these
    int rank = 0;                    // projection: both draws rank-`rank`
    double margin = 1.0;
    int threads = 1;
};

HermitianMatrix draw_input(const HiveSamplerConfig& cfg, int which, RandomSource& rng);

// One full excavation from freshly drawn inputs.
TetrahedronField sample_excavated(const HiveSamplerConfig& cfg, RandomSource& rng);

struct BottomStats {
    int n = 0;
    std::vector<double> mean;      // square grid, antidiagonal-glued layout
    std::vector<double> variance;  // unbiased
    double at_mean(int i, int j) const { return mean[static_cast<size_t>(i) * (n + 1) + j]; }
    double at_var(int i, int j) const { return variance[static_cast<size_t>(i) * (n + 1) + j]; }
};

// Pointwise mean and unbiased variance of the bottom panel over M runs.
BottomStats hive_stats(const HiveSamplerConfig& cfg, int M, RandomSource rng);

} // namespace hive
