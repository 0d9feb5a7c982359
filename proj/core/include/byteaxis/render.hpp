#pragma once

#include "byteaxis/color.hpp"
#include "byteaxis/grid.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace byteaxis {

struct RenderConfig
{
    Rgb background = black;
    /// Pixels per cell edge.
    int scale = 3;
    /// Tick spacing in cells; must divide 256.
    int tick_every = 16;
    /// Left margin holds the y tick labels, bottom margin the x labels.
    int margin_left = 48;
    int margin_bottom = 48;
    bool legend = false;
    /// Stored as PNG tEXt "Title" / SVG <title>; does not change geometry.
    std::optional<std::string> title;

    /// Throws ConfigError on a non-positive scale, a tick spacing that does
    /// not divide 256, or negative margins.
    void validate() const;
};

/// Pixel geometry shared by the PNG and SVG renderers. The plot area's
/// top-left corner is (margin_left, 0); cell (x, y) covers columns
/// [left + x*scale, +scale) and rows [(255 - y)*scale, +scale).
struct PlotLayout
{
    int width = 0;
    int height = 0;
    int plot_left = 0;
    int plot_top = 0;
    int plot_size = 0;
    int legend_left = 0;
    int legend_width = 0;
    int legend_rows = 0;

    /// Top-left pixel of a cell's block.
    int cell_left(int x, int scale) const noexcept { return plot_left + x * scale; }
    int cell_top(int y, int scale) const noexcept { return plot_top + (255 - y) * scale; }
};

PlotLayout plot_layout(const ColorAssignment& colors, const RenderConfig& cfg);

/// Text color used for ticks and labels against `background`.
Rgb ink_for(Rgb background) noexcept;

/// Deterministic 8-bit RGB PNG. Pixels inside the plot area are the
/// background color exactly when their cell is unoccupied.
std::vector<std::uint8_t> render_png(const ByteAxisGrid& grid, const ColorAssignment& colors,
                                     const RenderConfig& cfg);

/// SVG 1.1 with integer coordinates and one `class="cell"` rect per
/// occupied cell, in row-major cell order.
std::string render_svg(const ByteAxisGrid& grid, const ColorAssignment& colors,
                       const RenderConfig& cfg);

} // namespace byteaxis
