#pragma once

#include "byteaxis/address.hpp"
#include "byteaxis/ingest.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace byteaxis {

inline constexpr std::size_t grid_side = 256;
inline constexpr std::size_t grid_cells = grid_side * grid_side;

/// What a grid is drawn over: one OUI or one byte-aligned IPv6 prefix.
class GridBase
{
public:
    enum class Kind { mac_oui, v6_prefix };

    static GridBase for_oui(Oui oui);
    /// Throws ConfigError unless the prefix is byte aligned and at most /112.
    static GridBase for_prefix(const Ipv6Prefix& prefix);

    Kind kind() const noexcept { return kind_; }
    const std::optional<Oui>& oui() const noexcept { return oui_; }
    const std::optional<Ipv6Prefix>& prefix() const noexcept { return prefix_; }

    /// "08:3c:0c" or "2a02:27b0:4a01::/48".
    std::string to_string() const;

    /// Filesystem-friendly form of to_string() for output templating.
    std::string slug() const;

    /// Compares the base identity; an OUI's org_name is not part of it.
    bool operator==(const GridBase& other) const;

private:
    GridBase() = default;

    Kind kind_ = Kind::mac_oui;
    std::optional<Oui> oui_;
    std::optional<Ipv6Prefix> prefix_;
};

struct Cell
{
    std::uint64_t count = 0;
    /// Label multiset as label -> multiplicity.
    std::map<std::string, std::uint64_t> labels;
    /// Canonical (RFC 5952) responder text.
    std::set<std::string> responders;

    bool occupied() const noexcept { return count > 0; }

    bool operator==(const Cell&) const = default;
};

/// The 256x256 cell matrix for one base. Cell (x, y) aggregates every
/// address whose two plotted bytes are (y, x).
class ByteAxisGrid
{
public:
    explicit ByteAxisGrid(GridBase base);

    const GridBase& base() const noexcept { return base_; }
    std::uint64_t total() const noexcept { return total_; }

    /// Unoccupied cells read as an empty Cell.
    const Cell& at(CellCoord c) const noexcept;
    const Cell& at(std::uint8_t x, std::uint8_t y) const noexcept { return at(CellCoord{x, y}); }

    /// Occupied cells keyed by CellCoord::offset(), hence in row-major
    /// order. Storage grows with occupancy, not with the 65536-cell plane.
    const std::map<std::uint16_t, Cell>& cells() const noexcept { return cells_; }

    /// Throws ContainmentError when the MAC is outside the grid's OUI.
    void add(const MacObservation& obs);
    /// Throws ContainmentError when the probed /64 is outside the grid's prefix.
    void add(const V6Observation& obs);

    /// Bulk forms of add(). Faster for large inputs because cells are
    /// visited in order. On error the grid is left unchanged.
    void add(std::span<const MacObservation> obs);
    void add(std::span<const V6Observation> obs);

    /// Raw cell update used by importers and merges. Throws ConfigError
    /// unless `delta.count` is at least 1.
    void accumulate(CellCoord c, const Cell& delta);

    std::size_t occupied_cells() const noexcept { return cells_.size(); }

    bool operator==(const ByteAxisGrid& other) const;

private:
    std::uint16_t checked_offset(const MacObservation& obs) const;
    std::uint16_t checked_offset(const V6Observation& obs) const;
    template <class Obs>
    void add_bulk(std::span<const Obs> obs);

    GridBase base_;
    std::map<std::uint16_t, Cell> cells_;
    std::uint64_t total_ = 0;
};

/// Throws ContainmentError naming the first observation outside `oui`.
ByteAxisGrid build_mac_grid(const Oui& oui, const std::vector<MacObservation>& obs);

/// Throws ContainmentError naming the first probed /64 outside `base`.
ByteAxisGrid build_v6_grid(const Ipv6Prefix& base, const std::vector<V6Observation>& obs);

/// Cellwise sum. Throws ConfigError when the bases differ.
ByteAxisGrid merge_grids(const ByteAxisGrid& a, const ByteAxisGrid& b);

/// Fraction of the 65536 cells with a nonzero count.
double occupancy(const ByteAxisGrid& grid) noexcept;

} // namespace byteaxis
