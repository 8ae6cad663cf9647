#pragma once

#include <filesystem>

#include "gcsc/types.hpp"

namespace gcsc {

enum class CubeFormat { RawBin, CsvStack, MatV5 };

CubeFormat parse_cube_format(const std::string& s);

/// Loads a cube from disk. For MatV5 the ground truth is looked up in the
/// same file, or in a sibling "<stem>_gt<ext>" file when present.
HsiCube load_cube(const std::filesystem::path& path, CubeFormat format);

/// Inclusive 0-based crop of rows [r.first, r.second] and columns
/// [c.first, c.second]; labels are cropped identically.
HsiCube crop_subscene(const HsiCube& cube, std::pair<int, int> row_range,
                      std::pair<int, int> col_range);

/// One sample per labeled pixel (label > 0), ordered row-major by (row,
/// col); features are the pixel spectra, coords record the origin.
LabeledSamples to_labeled_samples(const HsiCube& cube);

}  // namespace gcsc
