#include "gcsc/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace gcsc::io {

namespace {

constexpr char kCubeMagic[4] = {'G', 'C', 'S', 'C'};
constexpr char kMatrixMagic[4] = {'G', 'C', 'S', 'M'};
constexpr uint32_t kCubeVersion = 1;

void write_u32(std::ostream& os, uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

uint32_t read_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw FormatError("truncated header");
    return uint32_t(b[0]) | uint32_t(b[1]) << 8 | uint32_t(b[2]) << 16 |
           uint32_t(b[3]) << 24;
}

std::filesystem::path labels_path(const std::filesystem::path& cube_path) {
    auto p = cube_path;
    p += ".labels";
    return p;
}

void check_finite(const std::vector<double>& data, const std::string& what) {
    for (size_t i = 0; i < data.size(); ++i) {
        if (!std::isfinite(data[i])) {
            throw DataError("non-finite value in " + what + " at flat index " +
                            std::to_string(i));
        }
    }
}

}  // namespace

HsiCube load_cube_bin(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot open cube file: " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kCubeMagic, 4) != 0)
        throw FormatError("bad magic in cube file: " + path.string());
    uint32_t version = read_u32(is);
    if (version != kCubeVersion)
        throw FormatError("unsupported cube version " + std::to_string(version));
    HsiCube cube;
    cube.rows = static_cast<int>(read_u32(is));
    cube.cols = static_cast<int>(read_u32(is));
    cube.bands = static_cast<int>(read_u32(is));
    if (cube.rows <= 0 || cube.cols <= 0 || cube.bands <= 0)
        throw FormatError("corrupt cube header dimensions");
    size_t n = size_t(cube.rows) * cube.cols * cube.bands;
    cube.data.resize(n);
    is.read(reinterpret_cast<char*>(cube.data.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
    if (!is) throw FormatError("truncated cube data in " + path.string());
    check_finite(cube.data, path.string());
    cube.name = path.stem().string();

    auto lp = labels_path(path);
    if (std::filesystem::exists(lp)) {
        std::ifstream ls(lp, std::ios::binary);
        size_t np = size_t(cube.rows) * cube.cols;
        std::vector<int32_t> raw(np);
        ls.read(reinterpret_cast<char*>(raw.data()),
                static_cast<std::streamsize>(np * sizeof(int32_t)));
        if (!ls) throw FormatError("truncated label file " + lp.string());
        cube.labels.assign(raw.begin(), raw.end());
    }
    cube.validate();
    return cube;
}

void save_cube_bin(const HsiCube& cube, const std::filesystem::path& path) {
    cube.validate();
    {
        std::ostringstream os(std::ios::binary);
        os.write(kCubeMagic, 4);
        write_u32(os, kCubeVersion);
        write_u32(os, static_cast<uint32_t>(cube.rows));
        write_u32(os, static_cast<uint32_t>(cube.cols));
        write_u32(os, static_cast<uint32_t>(cube.bands));
        os.write(reinterpret_cast<const char*>(cube.data.data()),
                 static_cast<std::streamsize>(cube.data.size() * sizeof(double)));
        atomic_write(path, os.str());
    }
    if (cube.has_labels()) {
        std::vector<int32_t> raw(cube.labels.begin(), cube.labels.end());
        std::string bytes(reinterpret_cast<const char*>(raw.data()),
                          raw.size() * sizeof(int32_t));
        atomic_write(labels_path(path), bytes);
    }
}

HsiCube load_cube_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open csv file: " + path.string());
    std::map<std::tuple<int, int, int>, double> entries;
    int max_r = -1, max_c = -1, max_b = -1;
    std::string line;
    size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line.find_first_not_of("rowcland,bvue \t") ==
                               std::string::npos)
            continue;  // header line
        std::istringstream ss(line);
        int r, c, b;
        double v;
        char comma;
        if (!(ss >> r >> comma >> c >> comma >> b >> comma >> v))
            throw DataError("malformed csv row at line " +
                            std::to_string(lineno) + " of " + path.string());
        if (r < 0 || c < 0 || b < 0)
            throw DataError("negative index at line " + std::to_string(lineno));
        if (!std::isfinite(v))
            throw DataError("non-finite value at line " + std::to_string(lineno));
        entries[{r, c, b}] = v;
        max_r = std::max(max_r, r);
        max_c = std::max(max_c, c);
        max_b = std::max(max_b, b);
    }
    if (entries.empty()) throw FormatError("empty csv cube: " + path.string());
    HsiCube cube;
    cube.rows = max_r + 1;
    cube.cols = max_c + 1;
    cube.bands = max_b + 1;
    cube.data.assign(size_t(cube.rows) * cube.cols * cube.bands, 0.0);
    for (const auto& [key, v] : entries) {
        auto [r, c, b] = key;
        cube.at(r, c, b) = v;
    }
    cube.name = path.stem().string();
    return cube;
}

Matrix load_matrix(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot open matrix file: " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMatrixMagic, 4) != 0)
        throw FormatError("bad magic in matrix file: " + path.string());
    auto rows = static_cast<Eigen::Index>(read_u32(is));
    auto cols = static_cast<Eigen::Index>(read_u32(is));
    Matrix m(rows, cols);
    std::vector<double> buf(static_cast<size_t>(rows) * cols);
    is.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(double)));
    if (!is) throw FormatError("truncated matrix data in " + path.string());
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = buf[static_cast<size_t>(r) * cols + c];
    return m;
}

void save_matrix(const Matrix& m, const std::filesystem::path& path) {
    std::ostringstream os(std::ios::binary);
    os.write(kMatrixMagic, 4);
    write_u32(os, static_cast<uint32_t>(m.rows()));
    write_u32(os, static_cast<uint32_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            double v = m(r, c);
            os.write(reinterpret_cast<const char*>(&v), sizeof(double));
        }
    atomic_write(path, os.str());
}

std::vector<int> load_labels_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open label file: " + path.string());
    std::vector<int> labels;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        labels.push_back(std::stoi(line));
    }
    return labels;
}

void save_labels_csv(const std::vector<int>& labels,
                     const std::filesystem::path& path) {
    std::ostringstream os;
    for (int l : labels) os << l << '\n';
    atomic_write(path, os.str());
}

void load_label_map_csv(const std::filesystem::path& path, HsiCube& cube) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open label map: " + path.string());
    cube.labels.assign(size_t(cube.rows) * cube.cols, 0);
    std::string line;
    size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        int r, c, l;
        char comma;
        if (!(ss >> r >> comma >> c >> comma >> l)) {
            if (lineno == 1) continue;  // header
            throw DataError("malformed label map row at line " +
                            std::to_string(lineno));
        }
        if (r < 0 || r >= cube.rows || c < 0 || c >= cube.cols)
            throw DataError("label map coordinate out of bounds at line " +
                            std::to_string(lineno));
        if (l < 0) throw DataError("negative label at line " + std::to_string(lineno));
        cube.labels[static_cast<size_t>(r) * cube.cols + c] = l;
    }
}

void save_coords_csv(const std::vector<std::pair<int, int>>& coords,
                     const std::filesystem::path& path) {
    std::ostringstream os;
    for (const auto& [r, c] : coords) os << r << ',' << c << '\n';
    atomic_write(path, os.str());
}

std::vector<std::pair<int, int>> load_coords_csv(
    const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("cannot open coords file: " + path.string());
    std::vector<std::pair<int, int>> coords;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        int r, c;
        char comma;
        if (!(ss >> r >> comma >> c)) throw DataError("malformed coords row");
        coords.emplace_back(r, c);
    }
    return coords;
}

void save_edge_list(const Matrix& adjacency,
                    const std::filesystem::path& path) {
    std::ostringstream os;
    for (Eigen::Index i = 0; i < adjacency.rows(); ++i)
        for (Eigen::Index j = i + 1; j < adjacency.cols(); ++j)
            if (adjacency(i, j) != 0.0 || adjacency(j, i) != 0.0)
                os << i << ',' << j << '\n';
    atomic_write(path, os.str());
}

void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
    auto dir = path.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw FormatError("cannot write " + tmp.string());
        os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!os) throw FormatError("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace gcsc::io
