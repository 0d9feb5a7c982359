#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace byteaxis::png {

/// zlib stream of `data` using one fixed-Huffman deflate block with greedy
/// LZ77 matching. Every parameter is fixed, so the output depends only on
/// the input bytes.
std::vector<std::uint8_t> zlib_compress(std::span<const std::uint8_t> data);

std::uint32_t crc32(std::span<const std::uint8_t> data, std::uint32_t crc = 0) noexcept;
std::uint32_t adler32(std::span<const std::uint8_t> data) noexcept;

/// 8-bit RGB, non-interlaced PNG. `rgb` holds width * height * 3 bytes in
/// row-major order; each (keyword, text) pair becomes a tEXt chunk.
std::vector<std::uint8_t>
encode_rgb(std::uint32_t width, std::uint32_t height, std::span<const std::uint8_t> rgb,
           const std::vector<std::pair<std::string, std::string>>& text = {});

} // namespace byteaxis::png
