#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gcsc/types.hpp"

namespace gcsc::io {

/// A numeric array read from a MAT-v5 file, values widened to double,
/// stored in MATLAB column-major order with up to 3 dimensions.
struct MatArray {
    std::vector<int> dims;
    std::vector<double> values;  // column-major

    double at3(int i, int j, int k) const {
        return values[static_cast<size_t>(i) +
                      static_cast<size_t>(dims[0]) *
                          (static_cast<size_t>(j) +
                           static_cast<size_t>(dims[1]) * k)];
    }
};

/// Reads every 2-D/3-D numeric array from a MAT-v5 file. Compressed
/// elements are supported; cell arrays, structs, sparse and char arrays
/// are skipped.
std::map<std::string, MatArray> load_mat_arrays(
    const std::filesystem::path& path);

/// Builds a cube from the (unique) 3-D array in `data_path`. When
/// `gt_path` is nonempty its unique 2-D array becomes the label map;
/// pass the same file twice if both live together.
HsiCube load_cube_mat(const std::filesystem::path& data_path,
                      const std::filesystem::path& gt_path = {});

}  // namespace gcsc::io
