#pragma once

#include <cstdint>
#include <string>

#include "hive/hive_core.hpp"
#include "hive/matrix.hpp"
#include "hive/octahedron.hpp"
#include "hive/tension.hpp"

namespace hive::io {

// Metadata block stamped into every emitted artifact.
struct Meta {
    std::string version = "0.1.0";
    std::uint64_t seed = 0;
    std::string config_hash;  // hex of a stable hash over the config string
    std::string kind;
};

std::string config_hash(const std::string& config_text);

std::string matrix_to_json(const HermitianMatrix& H);
HermitianMatrix matrix_from_json(const std::string& text);

std::string spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const std::string& text);
std::string spectrum_to_csv(const Spectrum& s);

std::string hive_to_json(const Hive& h, const Meta& meta);
Hive hive_from_json(const std::string& text);

std::string augmented_to_json(const AugmentedHive& a, const Meta& meta);
AugmentedHive augmented_from_json(const std::string& text);

std::string double_hive_to_json(const DoubleHive& d, const Meta& meta);
DoubleHive double_hive_from_json(const std::string& text);

std::string grid_to_csv(const std::vector<double>& values, int n);  // square grid
std::string hive_to_csv(const Hive& h);                             // nulls as empty cells

std::string tiling_to_json(const Tiling& t, const Meta& meta);
Tiling tiling_from_json(const std::string& text);

std::string sigma_grid_to_csv(const SigmaGrid& g);
SigmaGrid sigma_grid_from_csv(const std::string& text);

// exp(-sigma_hat) over the simplex as colored triangles.
std::string sigma_heatmap_svg(const SigmaGrid& g);

// Versioned little-endian dump of the tetrahedron values and argmax bits.
void write_tetrahedron(const TetrahedronField& t, const std::string& path);
TetrahedronField read_tetrahedron(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace hive::io
