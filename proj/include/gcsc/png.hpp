#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace gcsc::png {

/// Writes an 8-bit RGB image (row-major, 3 bytes per pixel).
void write_rgb(const std::filesystem::path& path, int width, int height,
               const std::vector<uint8_t>& rgb);

}  // namespace gcsc::png
