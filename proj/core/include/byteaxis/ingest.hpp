#pragma once

#include "byteaxis/address.hpp"

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace byteaxis {

/// One observed MAC, optionally tagged with a categorical label such as
/// the device model. `weight` counts repeated sightings.
struct MacObservation
{
    MacAddress mac;
    std::optional<std::string> label;
    std::uint64_t weight = 1;

    bool operator==(const MacObservation&) const = default;
};

/// A probe into a /64 and the address that answered it.
struct V6Observation
{
    Ipv6Prefix probed; // always a /64
    Ipv6Address responder;

    bool operator==(const V6Observation&) const = default;
};

enum class MacFormat { plain, csv };

struct LoadOptions
{
    /// Strict loads throw LineError on the first bad line; lenient loads
    /// skip it and count it in LoadStats::malformed.
    bool strict = true;
    /// Keep locally-assigned MACs instead of dropping them.
    bool keep_local = false;
};

struct LoadStats
{
    std::size_t records = 0;
    std::size_t dropped_local = 0;
    std::size_t malformed = 0;
    /// Lenient-mode diagnostics, one per skipped line.
    std::vector<std::string> warnings;
};

/// Records plus the 1-based source line each came from.
template <typename Record>
struct LoadResult
{
    std::vector<Record> records;
    std::vector<std::size_t> lines;
    LoadStats stats;
};

/// Plain: one MAC per line. CSV: header `mac,label[,count]`, label may be
/// empty. Blank lines and '#' comments are skipped in both.
LoadResult<MacObservation> load_mac_observations(std::istream& source, MacFormat format,
                                                 const LoadOptions& options = {});

/// CSV with header `probed,responder`. `probed` is a /64 in CIDR form or a
/// bare address, which is truncated to its /64.
LoadResult<V6Observation> load_v6_observations(std::istream& source,
                                               const LoadOptions& options = {});

/// MACs recovered from the EUI-64 interface identifiers among `addrs`.
/// Duplicates are preserved.
std::vector<MacObservation> derive_macs_from_v6(const std::vector<Ipv6Address>& addrs);

class OuiRegistry
{
public:
    void insert(const Oui& oui, std::string org_name);

    std::optional<std::string> lookup(const Oui& oui) const;

    /// `oui` with its org_name filled in from the registry when known.
    Oui annotate(Oui oui) const;

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::map<Oui, std::string>& entries() const noexcept { return entries_; }

private:
    std::map<Oui, std::string> entries_;
};

/// Reads the IEEE `oui.txt` layout, picking up only the
/// "XX-XX-XX   (hex)\t\tOrg" lines. Later duplicates win.
OuiRegistry load_oui_registry(std::istream& source);

/// Partitions by OUI, preserving input order within each group.
std::map<Oui, std::vector<MacObservation>>
group_mac_by_oui(const std::vector<MacObservation>& obs);

/// Partitions by the enclosing prefix of `length` bits (48 by default).
std::map<Ipv6Prefix, std::vector<V6Observation>>
group_v6_by_prefix(const std::vector<V6Observation>& obs, int length = 48);

} // namespace byteaxis
