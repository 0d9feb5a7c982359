#include "byteaxis/grid.hpp"

#include "byteaxis/error.hpp"

#include <algorithm>

namespace byteaxis {

GridBase GridBase::for_oui(Oui oui)
{
    GridBase b;
    b.kind_ = Kind::mac_oui;
    b.oui_ = std::move(oui);
    return b;
}

GridBase GridBase::for_prefix(const Ipv6Prefix& prefix)
{
    require_grid_prefix(prefix);
    GridBase b;
    b.kind_ = Kind::v6_prefix;
    b.prefix_ = prefix;
    return b;
}

std::string GridBase::to_string() const
{
    return kind_ == Kind::mac_oui ? oui_->to_string() : prefix_->to_string();
}

std::string GridBase::slug() const
{
    std::string s = to_string();
    for (auto& c : s) {
        if (c == ':')
            c = '-';
        else if (c == '/')
            c = '_';
    }
    return s;
}

bool GridBase::operator==(const GridBase& other) const
{
    return kind_ == other.kind_ && oui_ == other.oui_ && prefix_ == other.prefix_;
}

ByteAxisGrid::ByteAxisGrid(GridBase base)
    : base_(std::move(base))
{}

const Cell& ByteAxisGrid::at(CellCoord c) const noexcept
{
    static const Cell empty;
    const auto it = cells_.find(c.offset());
    return it == cells_.end() ? empty : it->second;
}

std::uint16_t ByteAxisGrid::checked_offset(const MacObservation& obs) const
{
    if (base_.kind() != GridBase::Kind::mac_oui)
        throw ConfigError("cannot add a MAC observation to IPv6 grid " + base_.to_string());
    if (!base_.oui()->contains(obs.mac)) {
        throw ContainmentError("MAC " + obs.mac.to_string() + " is outside OUI "
                               + base_.oui()->to_string());
    }
    return mac_cell(obs.mac).offset();
}

std::uint16_t ByteAxisGrid::checked_offset(const V6Observation& obs) const
{
    if (base_.kind() != GridBase::Kind::v6_prefix)
        throw ConfigError("cannot add an IPv6 observation to MAC grid " + base_.to_string());
    if (!base_.prefix()->contains(obs.probed)) {
        throw ContainmentError("probed " + obs.probed.to_string() + " is outside "
                               + base_.prefix()->to_string());
    }
    return v6_cell(obs.probed.base(), *base_.prefix()).offset();
}

namespace {

std::uint64_t apply(Cell& cell, const MacObservation& obs)
{
    cell.count += obs.weight;
    if (obs.label)
        cell.labels[*obs.label] += obs.weight;
    return obs.weight;
}

std::uint64_t apply(Cell& cell, const V6Observation& obs)
{
    cell.count += 1;
    cell.responders.insert(obs.responder.to_string());
    return 1;
}

} // namespace

void ByteAxisGrid::add(const MacObservation& obs)
{
    total_ += apply(cells_[checked_offset(obs)], obs);
}

void ByteAxisGrid::add(const V6Observation& obs)
{
    total_ += apply(cells_[checked_offset(obs)], obs);
}

template <class Obs>
void ByteAxisGrid::add_bulk(std::span<const Obs> obs)
{
    // Visit cells in key order so the map is walked once, front to back.
    std::vector<std::pair<std::uint16_t, std::uint32_t>> order(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i)
        order[i] = {checked_offset(obs[i]), static_cast<std::uint32_t>(i)};
    std::sort(order.begin(), order.end());

    auto it = cells_.begin();
    for (const auto& [key, index] : order) {
        while (it != cells_.end() && it->first < key)
            ++it;
        if (it == cells_.end() || it->first != key)
            it = cells_.emplace_hint(it, key, Cell{});
        total_ += apply(it->second, obs[index]);
    }
}

void ByteAxisGrid::add(std::span<const MacObservation> obs)
{
    add_bulk(obs);
}

void ByteAxisGrid::add(std::span<const V6Observation> obs)
{
    add_bulk(obs);
}

void ByteAxisGrid::accumulate(CellCoord c, const Cell& delta)
{
    if (delta.count == 0)
        throw ConfigError("cell (" + std::to_string(c.x) + ", " + std::to_string(c.y)
                          + ") update has zero count");
    auto& cell = cells_[c.offset()];
    cell.count += delta.count;
    for (const auto& [label, n] : delta.labels)
        cell.labels[label] += n;
    cell.responders.insert(delta.responders.begin(), delta.responders.end());
    total_ += delta.count;
}

bool ByteAxisGrid::operator==(const ByteAxisGrid& other) const
{
    return base_ == other.base_ && total_ == other.total_ && cells_ == other.cells_;
}

ByteAxisGrid build_mac_grid(const Oui& oui, const std::vector<MacObservation>& obs)
{
    ByteAxisGrid grid(GridBase::for_oui(oui));
    grid.add(std::span<const MacObservation>(obs));
    return grid;
}

ByteAxisGrid build_v6_grid(const Ipv6Prefix& base, const std::vector<V6Observation>& obs)
{
    ByteAxisGrid grid(GridBase::for_prefix(base));
    grid.add(std::span<const V6Observation>(obs));
    return grid;
}

ByteAxisGrid merge_grids(const ByteAxisGrid& a, const ByteAxisGrid& b)
{
    if (!(a.base() == b.base()))
        throw ConfigError("cannot merge grids over " + a.base().to_string() + " and "
                          + b.base().to_string());
    ByteAxisGrid out = a;
    for (const auto& [offset, cell] : b.cells())
        out.accumulate(CellCoord::from_offset(offset), cell);
    return out;
}

double occupancy(const ByteAxisGrid& grid) noexcept
{
    return static_cast<double>(grid.occupied_cells()) / static_cast<double>(grid_cells);
}

} // namespace byteaxis
