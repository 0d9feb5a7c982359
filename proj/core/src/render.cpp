#include "byteaxis/render.hpp"

#include "byteaxis/error.hpp"
#include "byteaxis/png.hpp"
#include "font.hpp"

#include <algorithm>
#include <cstdio>

namespace byteaxis {

namespace {

constexpr int tick_length = 4;
constexpr int legend_row_height = font::glyph_height + 3;
constexpr int legend_swatch = 10;
constexpr int legend_pad = 12;
constexpr std::size_t legend_max_chars = 24;

std::string tick_label(int value)
{
    char buf[8];
    std::snprintf(buf, sizeof buf, "0x%02X", value);
    return buf;
}

std::string legend_text(const std::string& key)
{
    if (key.size() <= legend_max_chars)
        return key;
    return key.substr(0, legend_max_chars - 3) + "...";
}

// Label every n-th tick so neighbouring labels keep at least `min_gap` px.
int label_stride(const RenderConfig& cfg, int min_gap)
{
    const int spacing = cfg.tick_every * cfg.scale;
    return std::max(1, (min_gap + spacing - 1) / spacing);
}

struct Box
{
    int left, top, right, bottom; // half-open
};

class Canvas
{
public:
    Canvas(int width, int height, Rgb fill)
        : width_(width), height_(height),
          pixels_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3)
    {
        for (std::size_t i = 0; i < pixels_.size(); i += 3) {
            pixels_[i] = fill.r;
            pixels_[i + 1] = fill.g;
            pixels_[i + 2] = fill.b;
        }
    }

    void fill(Box box, Rgb c)
    {
        box.left = std::max(box.left, 0);
        box.top = std::max(box.top, 0);
        box.right = std::min(box.right, width_);
        box.bottom = std::min(box.bottom, height_);
        for (int y = box.top; y < box.bottom; ++y) {
            auto* row = &pixels_[(static_cast<std::size_t>(y) * width_) * 3];
            for (int x = box.left; x < box.right; ++x) {
                row[x * 3] = c.r;
                row[x * 3 + 1] = c.g;
                row[x * 3 + 2] = c.b;
            }
        }
    }

    void text(int left, int top, const std::string& s, Rgb c, Box clip)
    {
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto& g = font::glyph(s[i]);
            const int gx = left + static_cast<int>(i) * font::glyph_width;
            for (int y = 0; y < font::glyph_height; ++y) {
                for (int x = 0; x < font::glyph_width; ++x) {
                    const int px = gx + x, py = top + y;
                    if (font::pixel(g, x, y) && px >= clip.left && px < clip.right
                        && py >= clip.top && py < clip.bottom)
                        fill({px, py, px + 1, py + 1}, c);
                }
            }
        }
    }

    const std::vector<std::uint8_t>& pixels() const noexcept { return pixels_; }

private:
    int width_, height_;
    std::vector<std::uint8_t> pixels_;
};

Rgb cell_color(const ColorAssignment& colors, std::size_t i, Rgb background)
{
    Rgb c = *colors.cells[i];
    if (c == background)
        c.b ^= 1;
    return c;
}

std::string xml_escape(const std::string& s)
{
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string plot_title(const ByteAxisGrid& grid, const RenderConfig& cfg)
{
    if (cfg.title)
        return *cfg.title;
    return grid.base().to_string();
}

} // namespace

void RenderConfig::validate() const
{
    if (scale < 1)
        throw ConfigError("scale must be at least 1, got " + std::to_string(scale));
    if (tick_every < 1 || 256 % tick_every != 0)
        throw ConfigError("tick spacing " + std::to_string(tick_every) + " does not divide 256");
    if (margin_left < 0 || margin_bottom < 0)
        throw ConfigError("margins must be non-negative");
}

Rgb ink_for(Rgb background) noexcept
{
    const int luma = (299 * background.r + 587 * background.g + 114 * background.b) / 1000;
    return luma > 127 ? Rgb{0, 0, 0} : Rgb{200, 200, 200};
}

PlotLayout plot_layout(const ColorAssignment& colors, const RenderConfig& cfg)
{
    cfg.validate();
    PlotLayout l;
    l.plot_size = 256 * cfg.scale;
    l.plot_left = cfg.margin_left;
    l.plot_top = 0;
    l.legend_left = l.plot_left + l.plot_size;
    if (cfg.legend && !colors.legend.empty()) {
        std::size_t chars = 0;
        for (const auto& [key, _] : colors.legend)
            chars = std::max(chars, legend_text(key).size());
        const int column_width = legend_pad + legend_swatch + 6
                                 + static_cast<int>(chars) * font::glyph_width + legend_pad;
        l.legend_rows = std::max(1, (l.plot_size - 4) / legend_row_height);
        const int columns =
            static_cast<int>((colors.legend.size() + l.legend_rows - 1) / l.legend_rows);
        l.legend_width = columns * column_width;
    }
    l.width = l.plot_left + l.plot_size + l.legend_width;
    l.height = l.plot_size + cfg.margin_bottom;
    return l;
}

std::vector<std::uint8_t> render_png(const ByteAxisGrid& grid, const ColorAssignment& colors,
                                     const RenderConfig& cfg)
{
    const auto l = plot_layout(colors, cfg);
    const Rgb ink = ink_for(cfg.background);
    Canvas canvas(l.width, l.height, cfg.background);

    for (std::size_t i = 0; i < colors.cells.size() && i < grid_cells; ++i) {
        if (!colors.cells[i])
            continue;
        const auto c = CellCoord::from_offset(static_cast<std::uint16_t>(i));
        const int left = l.cell_left(c.x, cfg.scale), top = l.cell_top(c.y, cfg.scale);
        canvas.fill({left, top, left + cfg.scale, top + cfg.scale},
                    cell_color(colors, i, cfg.background));
    }

    const Box left_margin{0, 0, l.plot_left, l.height};
    const Box bottom_margin{0, l.plot_size, l.width, l.height};
    const int x_stride = label_stride(cfg, 4 * font::glyph_width + 4);
    const int y_stride = label_stride(cfg, font::glyph_height + 3);
    for (int v = 0, n = 0; v < 256; v += cfg.tick_every, ++n) {
        const int tx = l.cell_left(v, cfg.scale);
        canvas.fill({tx, l.plot_size, tx + 1, l.plot_size + tick_length}, ink);
        if (n % x_stride == 0) {
            canvas.text(tx - 2 * font::glyph_width, l.plot_size + tick_length + 2, tick_label(v),
                        ink, bottom_margin);
        }

        const int ty = l.cell_top(v, cfg.scale) + cfg.scale - 1;
        canvas.fill({l.plot_left - tick_length, ty, l.plot_left, ty + 1}, ink);
        if (n % y_stride == 0) {
            const int top = std::clamp(ty - font::glyph_height / 2, 0,
                                       std::max(0, l.height - font::glyph_height));
            canvas.text(l.plot_left - tick_length - 3 - 4 * font::glyph_width, top, tick_label(v),
                        ink, left_margin);
        }
    }

    if (l.legend_width > 0) {
        const Box clip{l.legend_left, 0, l.width, l.height};
        const int column_width =
            l.legend_width
            / static_cast<int>((colors.legend.size() + l.legend_rows - 1) / l.legend_rows);
        for (std::size_t i = 0; i < colors.legend.size(); ++i) {
            const int col = static_cast<int>(i) / l.legend_rows;
            const int row = static_cast<int>(i) % l.legend_rows;
            const int left = l.legend_left + col * column_width + legend_pad;
            const int top = 4 + row * legend_row_height;
            canvas.fill({left, top + 1, left + legend_swatch, top + 1 + legend_swatch},
                        colors.legend[i].second);
            canvas.text(left + legend_swatch + 6, top, legend_text(colors.legend[i].first), ink,
                        clip);
        }
    }

    return png::encode_rgb(static_cast<std::uint32_t>(l.width), static_cast<std::uint32_t>(l.height),
                           canvas.pixels(), {{"Title", plot_title(grid, cfg)}});
}

std::string render_svg(const ByteAxisGrid& grid, const ColorAssignment& colors,
                       const RenderConfig& cfg)
{
    const auto l = plot_layout(colors, cfg);
    const std::string ink = ink_for(cfg.background).to_hex();
    const std::string w = std::to_string(l.width), h = std::to_string(l.height);

    std::string out;
    out.reserve(4096 + 96 * grid.occupied_cells());
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + w
           + "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
    out += "<title>" + xml_escape(plot_title(grid, cfg)) + "</title>\n";
    out += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + w + "\" height=\"" + h
           + "\" fill=\"" + cfg.background.to_hex() + "\"/>\n";

    const std::string s = std::to_string(cfg.scale);
    out += "<g class=\"cells\" shape-rendering=\"crispEdges\">\n";
    for (std::size_t i = 0; i < colors.cells.size() && i < grid_cells; ++i) {
        if (!colors.cells[i])
            continue;
        const auto c = CellCoord::from_offset(static_cast<std::uint16_t>(i));
        out += "<rect class=\"cell\" x=\"" + std::to_string(l.cell_left(c.x, cfg.scale))
               + "\" y=\"" + std::to_string(l.cell_top(c.y, cfg.scale)) + "\" width=\"" + s
               + "\" height=\"" + s + "\" fill=\"" + cell_color(colors, i, cfg.background).to_hex()
               + "\"/>\n";
    }
    out += "</g>\n";

    out += "<g class=\"axes\" stroke=\"" + ink + "\" stroke-width=\"1\">\n";
    std::string labels;
    const int x_stride = label_stride(cfg, 4 * font::glyph_width + 4);
    const int y_stride = label_stride(cfg, font::glyph_height + 3);
    for (int v = 0, n = 0; v < 256; v += cfg.tick_every, ++n) {
        const int tx = l.cell_left(v, cfg.scale);
        const int ty = l.cell_top(v, cfg.scale) + cfg.scale;
        out += "<line x1=\"" + std::to_string(tx) + "\" y1=\"" + std::to_string(l.plot_size)
               + "\" x2=\"" + std::to_string(tx) + "\" y2=\""
               + std::to_string(l.plot_size + tick_length) + "\"/>\n";
        out += "<line x1=\"" + std::to_string(l.plot_left - tick_length) + "\" y1=\""
               + std::to_string(ty) + "\" x2=\"" + std::to_string(l.plot_left) + "\" y2=\""
               + std::to_string(ty) + "\"/>\n";
        if (n % x_stride == 0) {
            labels += "<text x=\"" + std::to_string(tx) + "\" y=\""
                      + std::to_string(l.plot_size + tick_length + 2 + font::glyph_height)
                      + "\" text-anchor=\"middle\">" + tick_label(v) + "</text>\n";
        }
        if (n % y_stride == 0) {
            labels += "<text x=\"" + std::to_string(l.plot_left - tick_length - 3) + "\" y=\""
                      + std::to_string(ty + font::glyph_height / 2 - 1)
                      + "\" text-anchor=\"end\">" + tick_label(v) + "</text>\n";
        }
    }
    out += "</g>\n";
    out += "<g class=\"labels\" font-family=\"monospace\" font-size=\"11\" fill=\"" + ink
           + "\">\n" + labels + "</g>\n";

    if (l.legend_width > 0) {
        const int column_width =
            l.legend_width
            / static_cast<int>((colors.legend.size() + l.legend_rows - 1) / l.legend_rows);
        out += "<g class=\"legend\" font-family=\"monospace\" font-size=\"11\" fill=\"" + ink
               + "\">\n";
        for (std::size_t i = 0; i < colors.legend.size(); ++i) {
            const int col = static_cast<int>(i) / l.legend_rows;
            const int row = static_cast<int>(i) % l.legend_rows;
            const int left = l.legend_left + col * column_width + legend_pad;
            const int top = 4 + row * legend_row_height;
            out += "<rect class=\"swatch\" x=\"" + std::to_string(left) + "\" y=\""
                   + std::to_string(top + 1) + "\" width=\"" + std::to_string(legend_swatch)
                   + "\" height=\"" + std::to_string(legend_swatch) + "\" fill=\""
                   + colors.legend[i].second.to_hex() + "\"/>\n";
            out += "<text x=\"" + std::to_string(left + legend_swatch + 6) + "\" y=\""
                   + std::to_string(top + font::glyph_height - 1) + "\">"
                   + xml_escape(legend_text(colors.legend[i].first)) + "</text>\n";
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace byteaxis
