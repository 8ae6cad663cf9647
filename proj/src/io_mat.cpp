#include "gcsc/io_mat.hpp"

#include <zlib.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace gcsc::io {

namespace {

// MAT-v5 data element types.
enum MiType : uint32_t {
    miINT8 = 1,
    miUINT8 = 2,
    miINT16 = 3,
    miUINT16 = 4,
    miINT32 = 5,
    miUINT32 = 6,
    miSINGLE = 7,
    miDOUBLE = 9,
    miINT64 = 12,
    miUINT64 = 13,
    miMATRIX = 14,
    miCOMPRESSED = 15,
};

enum MxClass : uint32_t {
    mxDOUBLE_CLASS = 6,
    mxSINGLE_CLASS = 7,
    mxINT8_CLASS = 8,
    mxUINT8_CLASS = 9,
    mxINT16_CLASS = 10,
    mxUINT16_CLASS = 11,
    mxINT32_CLASS = 12,
    mxUINT32_CLASS = 13,
};

struct Reader {
    const uint8_t* p;
    size_t n;
    size_t pos = 0;

    bool done() const { return pos >= n; }

    const uint8_t* take(size_t k) {
        if (pos + k > n) throw FormatError("truncated MAT element");
        const uint8_t* r = p + pos;
        pos += k;
        return r;
    }
    uint32_t u32() {
        uint32_t v;
        std::memcpy(&v, take(4), 4);
        return v;
    }
    void align8() { pos = (pos + 7) & ~size_t(7); }
};

struct Element {
    uint32_t type;
    const uint8_t* data;
    size_t size;
};

Element read_element(Reader& r) {
    uint32_t first = r.u32();
    Element e;
    if (first >> 16) {  // small data element: size packed in upper 16 bits
        e.type = first & 0xffff;
        e.size = first >> 16;
        e.data = r.take(4);
    } else {
        e.type = first;
        e.size = r.u32();
        e.data = r.take(e.size);
        r.align8();
    }
    return e;
}

std::vector<double> widen(const Element& e) {
    std::vector<double> out;
    auto push = [&](auto tag, size_t bytes) {
        using T = decltype(tag);
        size_t cnt = e.size / bytes;
        out.resize(cnt);
        for (size_t i = 0; i < cnt; ++i) {
            T v;
            std::memcpy(&v, e.data + i * bytes, bytes);
            out[i] = static_cast<double>(v);
        }
    };
    switch (e.type) {
        case miDOUBLE: push(double{}, 8); break;
        case miSINGLE: push(float{}, 4); break;
        case miINT8: push(int8_t{}, 1); break;
        case miUINT8: push(uint8_t{}, 1); break;
        case miINT16: push(int16_t{}, 2); break;
        case miUINT16: push(uint16_t{}, 2); break;
        case miINT32: push(int32_t{}, 4); break;
        case miUINT32: push(uint32_t{}, 4); break;
        case miINT64: push(int64_t{}, 8); break;
        case miUINT64: push(uint64_t{}, 8); break;
        default:
            throw FormatError("unsupported MAT numeric type " +
                              std::to_string(e.type));
    }
    return out;
}

void parse_matrix(const Element& e, std::map<std::string, MatArray>& out) {
    Reader r{e.data, e.size};
    Element flags = read_element(r);
    if (flags.type != miUINT32 || flags.size < 8) return;
    uint32_t f;
    std::memcpy(&f, flags.data, 4);
    uint32_t cls = f & 0xff;
    if (cls < mxDOUBLE_CLASS || cls > mxUINT32_CLASS) return;  // non-numeric

    Element dims_el = read_element(r);
    std::vector<double> dims_d = widen(dims_el);
    if (dims_d.size() < 2 || dims_d.size() > 3) return;

    Element name_el = read_element(r);
    std::string name(reinterpret_cast<const char*>(name_el.data),
                     name_el.size);
    name = name.c_str();  // trim padding NULs

    Element real = read_element(r);
    MatArray arr;
    for (double d : dims_d) arr.dims.push_back(static_cast<int>(d));
    arr.values = widen(real);
    size_t expect = 1;
    for (int d : arr.dims) expect *= static_cast<size_t>(d);
    if (arr.values.size() != expect)
        throw FormatError("MAT array '" + name + "' size mismatch");
    out[name] = std::move(arr);
}

std::vector<uint8_t> inflate_all(const uint8_t* data, size_t size) {
    std::vector<uint8_t> out;
    out.resize(size * 4 + 1024);
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK) throw FormatError("zlib init failed");
    zs.next_in = const_cast<Bytef*>(data);
    zs.avail_in = static_cast<uInt>(size);
    size_t produced = 0;
    int ret = Z_OK;
    while (ret != Z_STREAM_END) {
        if (produced == out.size()) out.resize(out.size() * 2);
        zs.next_out = out.data() + produced;
        zs.avail_out = static_cast<uInt>(out.size() - produced);
        ret = inflate(&zs, Z_NO_FLUSH);
        if (ret != Z_OK && ret != Z_STREAM_END) {
            inflateEnd(&zs);
            throw FormatError("corrupt compressed MAT element");
        }
        produced = zs.total_out;
    }
    inflateEnd(&zs);
    out.resize(produced);
    return out;
}

}  // namespace

std::map<std::string, MatArray> load_mat_arrays(
    const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot open MAT file: " + path.string());
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(is)),
                               std::istreambuf_iterator<char>());
    if (bytes.size() < 128) throw FormatError("MAT file too small");
    uint16_t endian;
    std::memcpy(&endian, bytes.data() + 126, 2);
    if (endian != 0x494d)  // "MI" read on a little-endian host
        throw FormatError("unsupported MAT endianness or not a MAT-v5 file");

    std::map<std::string, MatArray> out;
    Reader r{bytes.data() + 128, bytes.size() - 128};
    while (!r.done()) {
        Element e = read_element(r);
        if (e.type == miCOMPRESSED) {
            auto raw = inflate_all(e.data, e.size);
            Reader cr{raw.data(), raw.size()};
            Element inner = read_element(cr);
            if (inner.type == miMATRIX) parse_matrix(inner, out);
        } else if (e.type == miMATRIX) {
            parse_matrix(e, out);
        }
        // other top-level types are skipped
    }
    return out;
}

HsiCube load_cube_mat(const std::filesystem::path& data_path,
                      const std::filesystem::path& gt_path) {
    auto arrays = load_mat_arrays(data_path);
    const MatArray* cube_arr = nullptr;
    std::string cube_name;
    for (const auto& [name, arr] : arrays) {
        if (arr.dims.size() == 3) {
            if (cube_arr)
                throw FormatError("multiple 3-D arrays in " +
                                  data_path.string());
            cube_arr = &arr;
            cube_name = name;
        }
    }
    if (!cube_arr)
        throw FormatError("no 3-D array found in " + data_path.string());

    HsiCube cube;
    cube.rows = cube_arr->dims[0];
    cube.cols = cube_arr->dims[1];
    cube.bands = cube_arr->dims[2];
    cube.name = cube_name;
    cube.data.resize(size_t(cube.rows) * cube.cols * cube.bands);
    for (int r = 0; r < cube.rows; ++r)
        for (int c = 0; c < cube.cols; ++c)
            for (int b = 0; b < cube.bands; ++b)
                cube.at(r, c, b) = cube_arr->at3(r, c, b);

    if (!gt_path.empty()) {
        auto gt_arrays =
            gt_path == data_path ? arrays : load_mat_arrays(gt_path);
        const MatArray* gt = nullptr;
        for (const auto& [name, arr] : gt_arrays) {
            if (arr.dims.size() == 2 && arr.dims[0] == cube.rows &&
                arr.dims[1] == cube.cols) {
                gt = &arr;
            }
        }
        if (!gt)
            throw FormatError("no matching 2-D ground-truth array in " +
                              gt_path.string());
        cube.labels.resize(size_t(cube.rows) * cube.cols);
        for (int r = 0; r < cube.rows; ++r)
            for (int c = 0; c < cube.cols; ++c) {
                double v = gt->values[static_cast<size_t>(r) +
                                      static_cast<size_t>(cube.rows) * c];
                cube.labels[static_cast<size_t>(r) * cube.cols + c] =
                    static_cast<int>(std::lround(v));
            }
    }
    cube.validate();
    return cube;
}

}  // namespace gcsc::io
