#include "byteaxis/color.hpp"

#include "byteaxis/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

namespace byteaxis {

namespace {

std::uint8_t channel(double unit) noexcept
{
    const double scaled = std::floor(unit * 255.0 + 0.5);
    return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

Rgb avoid(Rgb c, Rgb background) noexcept
{
    if (c == background)
        c.b ^= 1;
    return c;
}

// Unlabeled cells in categorical mode.
constexpr Rgb neutral_grey{160, 160, 160};

std::array<Rgb, 17> make_default_palette() noexcept
{
    // Stepping 7 of 17 hue slots per entry keeps early entries far apart.
    std::array<Rgb, 17> p{};
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = hsv_to_rgb(static_cast<double>((i * 7) % 17) * 360.0 / 17.0,
                          responder_saturation, responder_value);
    return p;
}

} // namespace

std::string Rgb::to_hex() const
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string s = "#";
    for (auto v : {r, g, b}) {
        s += digits[v >> 4];
        s += digits[v & 0xf];
    }
    return s;
}

Rgb parse_rgb(std::string_view text)
{
    auto t = text;
    if (!t.empty() && t.front() == '#')
        t.remove_prefix(1);
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9')
            return c - '0';
        if (c >= 'a' && c <= 'f')
            return c - 'a' + 10;
        if (c >= 'A' && c <= 'F')
            return c - 'A' + 10;
        return -1;
    };
    std::array<std::uint8_t, 3> out{};
    bool ok = t.size() == 6;
    for (std::size_t i = 0; ok && i < 3; ++i) {
        int hi = nibble(t[2 * i]), lo = nibble(t[2 * i + 1]);
        ok = hi >= 0 && lo >= 0;
        out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    if (!ok)
        throw ParseError("invalid color '" + std::string(text) + "': expected RRGGBB",
                         std::string(text));
    return {out[0], out[1], out[2]};
}

Rgb hsv_to_rgb(double hue, double saturation, double value) noexcept
{
    const double h = std::fmod(std::fmod(hue, 360.0) + 360.0, 360.0) / 60.0;
    const double c = value * saturation;
    const double x = c * (1.0 - std::fabs(std::fmod(h, 2.0) - 1.0));
    const double m = value - c;

    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(h)) {
    case 0: r = c, g = x; break;
    case 1: r = x, g = c; break;
    case 2: g = c, b = x; break;
    case 3: g = x, b = c; break;
    case 4: r = x, b = c; break;
    default: r = c, b = x; break;
    }
    return {channel(r + m), channel(g + m), channel(b + m)};
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Rgb responder_color(std::string_view key, std::uint64_t hue_seed) noexcept
{
    const auto hue = static_cast<double>((fnv1a64(key) ^ hue_seed) % 360);
    return hsv_to_rgb(hue, responder_saturation, responder_value);
}

std::span<const Rgb> default_palette() noexcept
{
    static const auto palette = make_default_palette();
    return palette;
}

ColorMode ColorMode::monochrome(Rgb foreground)
{
    ColorMode m;
    m.kind = Kind::monochrome;
    m.foreground = foreground;
    return m;
}

ColorMode ColorMode::categorical(std::vector<Rgb> palette)
{
    ColorMode m;
    m.kind = Kind::categorical;
    m.palette = std::move(palette);
    return m;
}

ColorMode ColorMode::responder(std::uint64_t hue_seed)
{
    ColorMode m;
    m.kind = Kind::responder;
    m.hue_seed = hue_seed;
    return m;
}

ColorAssignment assign_colors(const ByteAxisGrid& grid, const ColorMode& mode, Rgb background)
{
    ColorAssignment out;
    out.cells.resize(grid_cells);
    const auto& cells = grid.cells();

    switch (mode.kind) {
    case ColorMode::Kind::monochrome: {
        if (mode.foreground == background)
            throw ConfigError("foreground " + mode.foreground.to_hex()
                              + " equals the background color");
        for (const auto& [offset, cell] : cells)
            out.cells[offset] = mode.foreground;
        break;
    }
    case ColorMode::Kind::categorical: {
        std::vector<Rgb> palette = mode.palette;
        if (palette.empty()) {
            auto d = default_palette();
            palette.assign(d.begin(), d.end());
        }
        std::map<std::string, std::size_t> index;
        bool any_unlabeled = false;
        for (const auto& [i, cell] : cells) {
            if (cell.labels.empty()) {
                any_unlabeled = true;
                out.cells[i] = avoid(neutral_grey, background);
                continue;
            }
            // std::map iterates in lexicographic order, so strict '>' keeps
            // the smallest label among equal counts.
            const std::string* majority = nullptr;
            std::uint64_t best = 0;
            for (const auto& [label, n] : cell.labels) {
                if (n > best) {
                    best = n;
                    majority = &label;
                }
            }
            auto [it, inserted] = index.try_emplace(*majority, index.size());
            const Rgb color = avoid(palette[it->second % palette.size()], background);
            if (inserted)
                out.legend.emplace_back(*majority, color);
            out.cells[i] = color;
        }
        if (index.size() > palette.size()) {
            out.warnings.push_back(std::to_string(index.size()) + " labels exceed the "
                                   + std::to_string(palette.size())
                                   + "-color palette; colors repeat");
        }
        if (any_unlabeled)
            out.legend.emplace_back(std::string(unlabeled_legend_key),
                                    avoid(neutral_grey, background));
        break;
    }
    case ColorMode::Kind::responder: {
        for (const auto& [i, cell] : cells) {
            // A cell with no recorded responder still needs a visible color.
            const Rgb c = cell.responders.empty()
                              ? mode.foreground
                              : responder_color(*cell.responders.begin(), mode.hue_seed);
            out.cells[i] = avoid(c, background);
        }
        break;
    }
    }
    return out;
}

} // namespace byteaxis
