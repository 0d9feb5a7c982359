#pragma once

#include "byteaxis/grid.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace byteaxis {

/// A run of densely occupied rows (fourth MAC octet values).
struct Band
{
    int y_start = 0;
    int y_end = 0; // inclusive
    /// Occupied cells in rows [y_start, y_end] over (rows * 256).
    double density = 0.0;

    bool operator==(const Band&) const = default;
};

struct BandParams
{
    /// A row is active when at least this fraction of its 256 cells is occupied.
    double min_row_fill = 1.0 / 64.0;
    /// Inactive runs this short between active rows are bridged.
    int max_gap_rows = 1;
};

/// Rows with at least min_row_fill * 256 occupied cells (and at least one)
/// are active; maximal runs of active rows, bridging gaps of up to
/// max_gap_rows, become bands ordered by y_start.
std::vector<Band> detect_bands(const ByteAxisGrid& grid, const BandParams& params = {});

/// One responder's alignment envelope: the smallest size-aligned
/// power-of-two block of the 16-bit cell offset space holding all of its
/// cells. For a /48 base, prefix_len = 64 - log2(block size).
struct InferredAllocation
{
    std::string responder_key;
    int prefix_len = 64;
    std::uint64_t cells = 0;
    bool exact_fill = true;
    /// The responder's cells in ascending offset order.
    std::vector<CellCoord> cell_list;

    bool operator==(const InferredAllocation&) const = default;
};

/// One entry per responder key, ordered by key. Throws ConfigError for
/// MAC grids.
std::vector<InferredAllocation> infer_allocation_units(const ByteAxisGrid& grid);

struct AllocationReport
{
    GridBase base;
    std::vector<Band> bands;
    std::vector<InferredAllocation> allocations;
    /// prefix_len -> number of responders.
    std::map<int, std::uint64_t> unit_histogram;
    double occupancy = 0.0;
    std::uint64_t occupied_cells = 0;
    std::uint64_t total = 0;
    /// Distinct labels (MAC grids) or distinct responders (IPv6 grids).
    std::uint64_t distinct_keys = 0;

    bool operator==(const AllocationReport&) const = default;
};

/// Bands for MAC grids, allocation units for IPv6 grids, plus coverage.
AllocationReport summarize(const ByteAxisGrid& grid, const BandParams& params = {});

} // namespace byteaxis
