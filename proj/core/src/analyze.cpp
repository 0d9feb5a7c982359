#include "byteaxis/analyze.hpp"

#include "byteaxis/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <set>

namespace byteaxis {

std::vector<Band> detect_bands(const ByteAxisGrid& grid, const BandParams& params)
{
    std::array<int, grid_side> row_fill{};
    for (const auto& [offset, cell] : grid.cells())
        ++row_fill[offset >> 8];

    const double threshold = params.min_row_fill * static_cast<double>(grid_side);
    std::array<bool, grid_side> active{};
    for (std::size_t y = 0; y < grid_side; ++y)
        active[y] = row_fill[y] > 0 && static_cast<double>(row_fill[y]) >= threshold;

    std::vector<Band> bands;
    auto close = [&](int start, int end) {
        int occupied = 0;
        for (int y = start; y <= end; ++y)
            occupied += row_fill[static_cast<std::size_t>(y)];
        bands.push_back({start, end,
                         static_cast<double>(occupied)
                             / (static_cast<double>(end - start + 1) * grid_side)});
    };

    int start = -1, last_active = -1;
    for (int y = 0; y < static_cast<int>(grid_side); ++y) {
        if (!active[static_cast<std::size_t>(y)])
            continue;
        if (start < 0) {
            start = y;
        } else if (y - last_active - 1 > params.max_gap_rows) {
            close(start, last_active);
            start = y;
        }
        last_active = y;
    }
    if (start >= 0)
        close(start, last_active);
    return bands;
}

std::vector<InferredAllocation> infer_allocation_units(const ByteAxisGrid& grid)
{
    if (grid.base().kind() != GridBase::Kind::v6_prefix)
        throw ConfigError("allocation units need an IPv6 grid, got " + grid.base().to_string());

    std::map<std::string, std::vector<std::uint16_t>> offsets;
    for (const auto& [offset, cell] : grid.cells()) {
        for (const auto& key : cell.responders)
            offsets[key].push_back(offset);
    }

    const int finest = grid.base().prefix()->length() + 16;
    std::vector<InferredAllocation> out;
    out.reserve(offsets.size());
    for (auto& [key, offs] : offsets) {
        // Offsets arrive in ascending order, so min/max bound the block:
        // every offset shares o >> k exactly when min and max do.
        const auto lo = offs.front(), hi = offs.back();
        const int k = std::bit_width(static_cast<unsigned>(lo ^ hi));

        InferredAllocation a;
        a.responder_key = key;
        a.prefix_len = finest - k;
        a.cells = offs.size();
        a.exact_fill = offs.size() == (std::uint64_t{1} << k);
        a.cell_list.reserve(offs.size());
        for (auto o : offs)
            a.cell_list.push_back(CellCoord::from_offset(o));
        out.push_back(std::move(a));
    }
    return out;
}

AllocationReport summarize(const ByteAxisGrid& grid, const BandParams& params)
{
    AllocationReport r{grid.base(), {}, {}, {}, 0.0, 0, 0, 0};
    r.occupied_cells = grid.occupied_cells();
    r.occupancy = occupancy(grid);
    r.total = grid.total();

    if (grid.base().kind() == GridBase::Kind::mac_oui) {
        r.bands = detect_bands(grid, params);
        std::set<std::string> labels;
        for (const auto& [offset, cell] : grid.cells()) {
            for (const auto& [label, _] : cell.labels)
                labels.insert(label);
        }
        r.distinct_keys = labels.size();
    } else {
        r.allocations = infer_allocation_units(grid);
        for (const auto& a : r.allocations)
            ++r.unit_histogram[a.prefix_len];
        r.distinct_keys = r.allocations.size();
    }
    return r;
}

} // namespace byteaxis
