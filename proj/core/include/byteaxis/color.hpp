#pragma once

#include "byteaxis/grid.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace byteaxis {

struct Rgb
{
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    /// "#rrggbb"
    std::string to_hex() const;

    auto operator<=>(const Rgb&) const = default;
};

inline constexpr Rgb black{0, 0, 0};
inline constexpr Rgb white{255, 255, 255};
inline constexpr Rgb red{255, 0, 0};

/// Parses "RRGGBB" or "#RRGGBB".
Rgb parse_rgb(std::string_view text);

/// HSV to RGB by the six-sector formula; `hue` in degrees [0, 360),
/// saturation and value in [0, 1]. Channels are rounded half up.
Rgb hsv_to_rgb(double hue, double saturation, double value) noexcept;

/// 64-bit FNV-1a with the published offset basis and prime.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

inline constexpr double responder_saturation = 0.80;
inline constexpr double responder_value = 0.90;

/// hue = (fnv1a64(key) ^ seed) mod 360 at fixed saturation/value, so the
/// same responder gets the same color in every plot and every language.
Rgb responder_color(std::string_view key, std::uint64_t hue_seed) noexcept;

/// 17 evenly spaced hues at the responder saturation/value; entry i has
/// hue ((7 * i) mod 17) * 360 / 17.
std::span<const Rgb> default_palette() noexcept;

struct ColorMode
{
    enum class Kind { monochrome, categorical, responder };

    Kind kind = Kind::monochrome;
    Rgb foreground = red;
    std::vector<Rgb> palette;
    std::uint64_t hue_seed = 0;

    static ColorMode monochrome(Rgb foreground = red);
    /// An empty palette selects default_palette().
    static ColorMode categorical(std::vector<Rgb> palette = {});
    static ColorMode responder(std::uint64_t hue_seed = 0);
};

/// Colors for the occupied cells of one grid, plus legend entries.
struct ColorAssignment
{
    /// Indexed by CellCoord::offset(); empty for unoccupied cells.
    std::vector<std::optional<Rgb>> cells;
    std::vector<std::pair<std::string, Rgb>> legend;
    std::vector<std::string> warnings;
};

/// Monochrome paints every occupied cell with `foreground`. Categorical
/// colors a cell by its majority label (ties to the lexicographically
/// smallest); palette indices go to labels in the order their first cell
/// appears in a row-major scan, cycling with a warning when the palette
/// runs out. Responder colors a cell by its smallest responder key.
///
/// No occupied cell ever receives `background`: a colliding color has the
/// low bit of its blue channel flipped. Throws ConfigError when a
/// monochrome foreground equals the background.
ColorAssignment assign_colors(const ByteAxisGrid& grid, const ColorMode& mode,
                              Rgb background = black);

/// Text shown for occupied but unlabeled cells in categorical mode.
inline constexpr std::string_view unlabeled_legend_key = "(unlabeled)";

} // namespace byteaxis
