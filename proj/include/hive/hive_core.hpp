#pragma once

#include <string>
#include <vector>

#include "hive/spectra.hpp"

namespace hive {

// Triangular array rows[k-1] = k reals, each row nonincreasing, consecutive
// rows interlacing.
struct GTPattern {
    int n = 0;
    std::vector<std::vector<double>> rows;

    explicit GTPattern(int size = 0) : n(size), rows(static_cast<size_t>(size)) {
        for (int k = 1; k <= size; ++k) rows[static_cast<size_t>(k - 1)].resize(static_cast<size_t>(k));
    }
    const std::vector<double>& row(int k) const { return rows[static_cast<size_t>(k - 1)]; }
    std::vector<double>& row(int k) { return rows[static_cast<size_t>(k - 1)]; }
    const std::vector<double>& top() const { return rows.back(); }
    double spread() const;  // top row first minus last
    double value_scale() const;
};

struct Violation {
    std::string kind;   // "interlace", "rhombus1", "rhombus2", "rhombus3",
                        // "parallelogram1", "parallelogram2", "boundary", "zero-row"
    int i = 0, j = 0;
    double slack = 0.0;
};

struct ValidationReport {
    std::vector<Violation> violations;
    double min_slack = 0.0;
    double scale = 0.0;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

ValidationReport gt_validate(const GTPattern& p, double tol);

// Values on the triangle T_n = {(i,j): 0 <= i <= j <= n}.
struct Hive {
    int n = 0;
    std::vector<double> v;

    explicit Hive(int size = 0)
        : n(size), v(static_cast<size_t>(size + 1) * (size + 2) / 2, 0.0) {}

    size_t idx(int i, int j) const {
        return static_cast<size_t>(i) * (static_cast<size_t>(2 * n + 3 - i)) / 2
             + static_cast<size_t>(j - i);
    }
    double operator()(int i, int j) const { return v[idx(i, j)]; }
    double& at(int i, int j) { return v[idx(i, j)]; }
    double value_scale() const;  // max - min
};

struct RhombusSlack {
    int type;  // 1, 2, 3
    int i, j;  // anchor vertex A
    double slack;
};

// Slack h(B)+h(D)-h(A)-h(C) for every rhombus of the three types.
std::vector<RhombusSlack> rhombus_slacks(const Hive& h);

// The three local slacks used as surface-tension coordinates at (i,j):
// s0 = type-2 slack at (i,j), s1 = unit-square slack, s2 = type-1 slack.
// All stencil points must lie in T_n.
void local_slack_triple(const Hive& h, int i, int j, double out[3]);

// Fill the three boundary edges with partial sums of the triple.
Hive hive_boundary(const BoundaryTriple& t);
void apply_boundary(Hive& h, const BoundaryTriple& t);

// Rhombus violations plus, when a triple is given, boundary mismatches.
ValidationReport validate_hive(const Hive& h, const BoundaryTriple* t, double rel_tol = 1e-9);

// Square grid [0,n]^2 holding two hives glued along a diagonal. Construction
// from minor processes glues along the main diagonal; the excavated bottom
// panel glues along the antidiagonal.
struct DoubleHive {
    enum class Glue { main, anti };
    int n = 0;
    Glue glue = Glue::main;
    std::vector<double> v;

    explicit DoubleHive(int size = 0, Glue g = Glue::main)
        : n(size), glue(g), v(static_cast<size_t>(size + 1) * (size + 1), 0.0) {}
    double operator()(int i, int j) const { return v[static_cast<size_t>(i) * (n + 1) + j]; }
    double& at(int i, int j) { return v[static_cast<size_t>(i) * (n + 1) + j]; }
    double value_scale() const;

    Hive upper_triangle() const;  // sheared into T_n coordinates
    Hive lower_triangle() const;
};

ValidationReport validate_double_hive(const DoubleHive& d, double rel_tol = 1e-9);

// Square grid with a hive above the main diagonal, unit-parallelogram
// inequalities (squares exempt) below it, and a zero bottom row.
struct AugmentedHive {
    int n = 0;
    std::vector<double> v;

    explicit AugmentedHive(int size = 0)
        : n(size), v(static_cast<size_t>(size + 1) * (size + 1), 0.0) {}
    double operator()(int i, int j) const { return v[static_cast<size_t>(i) * (n + 1) + j]; }
    double& at(int i, int j) { return v[static_cast<size_t>(i) * (n + 1) + j]; }
    double value_scale() const;

    Hive upper_triangle() const;
};

ValidationReport validate_augmented(const AugmentedHive& a, double rel_tol = 1e-9);

// Lambda_i = (n-i) * G with G = margin * (max spread of the two patterns + 1);
// consecutive gaps then exceed both spreads strictly.
Spectrum make_large_gaps(const GTPattern& gx, const GTPattern& gy, double margin = 1.0);

// Upper triangle (i <= j): sum_{k<=i} Lambda_k + sum_{k<=j-i} gx.row(n-i)[k];
// lower triangle mirrors with gy. Glued along the main diagonal, which then
// carries partial sums of Lambda. Throws if the gap condition fails or the
// assembled grid is not rhombus-concave.
DoubleHive build_double_hive(const GTPattern& gx, const GTPattern& gy, const Spectrum& Lambda);

// log of vol GT(s) = log V_n(s) - log V_n(tau_n).
double gt_volume_log(const Spectrum& s);

// First differences of the main diagonal, length n.
Spectrum diag_differences(const DoubleHive& d);
Spectrum diag_differences(const AugmentedHive& a);

} // namespace hive
