#pragma once

#include <array>
#include <cstdint>

namespace byteaxis::font {

inline constexpr int glyph_width = 7;
inline constexpr int glyph_height = 11;

using Glyph = std::array<std::uint8_t, glyph_height>;

inline constexpr Glyph glyphs[] = {
#include "font_glyphs.inc"
};

/// Printable ASCII maps to itself; anything else renders as '?'.
inline const Glyph& glyph(char c) noexcept
{
    auto u = static_cast<unsigned char>(c);
    if (u < 0x20 || u > 0x7e)
        u = '?';
    return glyphs[u - 0x20];
}

inline bool pixel(const Glyph& g, int x, int y) noexcept
{
    return (g[static_cast<std::size_t>(y)] >> (glyph_width - 1 - x)) & 1;
}

} // namespace byteaxis::font
