#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "gcsc/types.hpp"

namespace gcsc::io {

// Canonical cube format: magic "GCSC", u32 version (1), u32 rows/cols/bands,
// then rows*cols*bands little-endian float64 values band-interleaved by pixel.
// Labels live in a sibling file "<path>.labels": raw little-endian i32,
// rows*cols entries, row-major.
HsiCube load_cube_bin(const std::filesystem::path& path);
void save_cube_bin(const HsiCube& cube, const std::filesystem::path& path);

// Long-form CSV: header optional, rows "row,col,band,value". Dimensions are
// inferred from the maximum indices. Labels CSV ("row,col,label") optional.
HsiCube load_cube_csv(const std::filesystem::path& path);

// Matrix format: magic "GCSM", u32 rows, u32 cols, little-endian float64
// row-major.
Matrix load_matrix(const std::filesystem::path& path);
void save_matrix(const Matrix& m, const std::filesystem::path& path);

// One integer label per line; '#' comments and blank lines ignored.
std::vector<int> load_labels_csv(const std::filesystem::path& path);
void save_labels_csv(const std::vector<int>& labels,
                     const std::filesystem::path& path);

// Labels paired with pixel coordinates, "row,col,label" per line.
void load_label_map_csv(const std::filesystem::path& path, HsiCube& cube);
void save_coords_csv(const std::vector<std::pair<int, int>>& coords,
                     const std::filesystem::path& path);
std::vector<std::pair<int, int>> load_coords_csv(
    const std::filesystem::path& path);

// Symmetrized edge list, "i,j" per undirected edge with i < j.
void save_edge_list(const Matrix& adjacency, const std::filesystem::path& path);

// Writes to a temp file in the target directory, then renames into place.
void atomic_write(const std::filesystem::path& path, const std::string& bytes);

}  // namespace gcsc::io
