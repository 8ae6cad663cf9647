#include "gcsc/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gcsc/io.hpp"
#include "gcsc/io_mat.hpp"

namespace gcsc {

void HsiCube::validate() const {
    if (rows <= 0 || cols <= 0 || bands < 1)
        throw ArgumentError("cube dimensions must be positive");
    if (data.size() != size_t(rows) * cols * bands)
        throw ArgumentError("cube data size does not match dimensions");
    for (size_t i = 0; i < data.size(); ++i)
        if (!std::isfinite(data[i]))
            throw DataError("non-finite reflectance at flat index " +
                            std::to_string(i));
    if (!labels.empty()) {
        if (labels.size() != size_t(rows) * cols)
            throw ArgumentError("label map size does not match rows x cols");
        for (int l : labels)
            if (l < 0) throw DataError("negative label value");
    }
}

int LabeledSamples::n_classes() const {
    std::set<int> s(labels.begin(), labels.end());
    return static_cast<int>(s.size());
}

CubeFormat parse_cube_format(const std::string& s) {
    if (s == "raw-bin") return CubeFormat::RawBin;
    if (s == "csv-stack") return CubeFormat::CsvStack;
    if (s == "mat-v5") return CubeFormat::MatV5;
    throw ArgumentError("unknown cube format: " + s);
}

HsiCube load_cube(const std::filesystem::path& path, CubeFormat format) {
    switch (format) {
        case CubeFormat::RawBin:
            return io::load_cube_bin(path);
        case CubeFormat::CsvStack: {
            HsiCube cube = io::load_cube_csv(path);
            auto lp = path;
            lp += ".labels.csv";
            if (std::filesystem::exists(lp)) io::load_label_map_csv(lp, cube);
            cube.validate();
            return cube;
        }
        case CubeFormat::MatV5: {
            // ground truth lives in a "<stem>_gt" sibling; datasets named
            // "<name>_corrected" commonly pair with "<name>_gt"
            std::vector<std::string> stems = {path.stem().string()};
            const std::string corrected = "_corrected";
            if (stems[0].size() > corrected.size() &&
                stems[0].ends_with(corrected))
                stems.push_back(
                    stems[0].substr(0, stems[0].size() - corrected.size()));
            for (const auto& stem : stems) {
                auto gt = path;
                gt.replace_filename(stem + "_gt" + path.extension().string());
                if (std::filesystem::exists(gt))
                    return io::load_cube_mat(path, gt);
            }
            return io::load_cube_mat(path, path);
        }
    }
    throw ArgumentError("unreachable cube format");
}

HsiCube crop_subscene(const HsiCube& cube, std::pair<int, int> row_range,
                      std::pair<int, int> col_range) {
    auto [r0, r1] = row_range;
    auto [c0, c1] = col_range;
    if (r0 < 0 || c0 < 0 || r1 >= cube.rows || c1 >= cube.cols || r0 > r1 ||
        c0 > c1)
        throw ArgumentError("crop range out of bounds");
    HsiCube out;
    out.rows = r1 - r0 + 1;
    out.cols = c1 - c0 + 1;
    out.bands = cube.bands;
    out.name = cube.name;
    out.data.resize(size_t(out.rows) * out.cols * out.bands);
    for (int r = 0; r < out.rows; ++r)
        for (int c = 0; c < out.cols; ++c)
            for (int b = 0; b < out.bands; ++b)
                out.at(r, c, b) = cube.at(r + r0, c + c0, b);
    if (cube.has_labels()) {
        out.labels.resize(size_t(out.rows) * out.cols);
        for (int r = 0; r < out.rows; ++r)
            for (int c = 0; c < out.cols; ++c)
                out.labels[static_cast<size_t>(r) * out.cols + c] =
                    cube.label_at(r + r0, c + c0);
    }
    return out;
}

LabeledSamples to_labeled_samples(const HsiCube& cube) {
    if (!cube.has_labels())
        throw StateError("cube has no label map");
    Eigen::Index n = 0;
    for (int l : cube.labels)
        if (l > 0) ++n;
    if (n == 0) throw StateError("cube contains no labeled pixels");

    LabeledSamples out;
    out.features.resize(n, cube.bands);
    out.labels.reserve(n);
    out.coords.reserve(n);
    Eigen::Index i = 0;
    for (int r = 0; r < cube.rows; ++r)
        for (int c = 0; c < cube.cols; ++c) {
            int l = cube.label_at(r, c);
            if (l <= 0) continue;
            for (int b = 0; b < cube.bands; ++b)
                out.features(i, b) = cube.at(r, c, b);
            out.labels.push_back(l);
            out.coords.emplace_back(r, c);
            ++i;
        }
    return out;
}

}  // namespace gcsc
