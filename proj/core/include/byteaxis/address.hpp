#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace byteaxis {

/// A 48-bit hardware address. Octet 0 is the most significant.
struct MacAddress
{
    std::array<std::uint8_t, 6> octets{};

    /// Lowercase hex pairs joined by ':'.
    std::string to_string() const;

    auto operator<=>(const MacAddress&) const = default;
};

/// A 24-bit MA-L allocation block (the first three MAC octets).
///
/// Equality and ordering consider only the prefix octets; `org_name` is
/// registry metadata riding along with the key.
struct Oui
{
    std::array<std::uint8_t, 3> prefix{};
    std::optional<std::string> org_name;

    /// Lowercase "xx:xx:xx".
    std::string to_string() const;

    /// True iff `mac` lies inside this block.
    bool contains(const MacAddress& mac) const noexcept;

    bool operator==(const Oui& other) const noexcept { return prefix == other.prefix; }
    std::strong_ordering operator<=>(const Oui& other) const noexcept
    {
        return prefix <=> other.prefix;
    }
};

struct Ipv6Address
{
    std::array<std::uint8_t, 16> octets{};

    /// RFC 5952 canonical text: lowercase, no leading zeros, the longest
    /// run of two or more zero groups (leftmost on ties) replaced by "::".
    std::string to_string() const;

    auto operator<=>(const Ipv6Address&) const = default;
};

/// A CIDR block whose host bits are all zero.
class Ipv6Prefix
{
public:
    /// The universal prefix ::/0.
    Ipv6Prefix() = default;

    /// Throws ParseError when `length` > 128 or `base` has bits set past it.
    Ipv6Prefix(const Ipv6Address& base, int length);

    /// Clears the host bits of `addr` instead of rejecting them.
    static Ipv6Prefix truncate(const Ipv6Address& addr, int length);

    const Ipv6Address& base() const noexcept { return base_; }
    int length() const noexcept { return length_; }

    bool contains(const Ipv6Address& addr) const noexcept;
    bool contains(const Ipv6Prefix& other) const noexcept;

    std::string to_string() const;

    auto operator<=>(const Ipv6Prefix&) const = default;

private:
    Ipv6Address base_{};
    int length_ = 0;
};

/// One cell of a byte-axis plot. Both coordinates span the full byte range.
struct CellCoord
{
    std::uint8_t x = 0;
    std::uint8_t y = 0;

    /// Row-major offset y * 256 + x, the 16-bit position inside the base.
    constexpr std::uint16_t offset() const noexcept
    {
        return static_cast<std::uint16_t>(y << 8 | x);
    }

    static constexpr CellCoord from_offset(std::uint16_t offset) noexcept
    {
        return {static_cast<std::uint8_t>(offset & 0xff), static_cast<std::uint8_t>(offset >> 8)};
    }

    auto operator<=>(const CellCoord&) const = default;
};

/// Accepts six hex pairs joined uniformly by ':' or '-', in either case.
MacAddress parse_mac(std::string_view text);

/// Accepts any RFC 4291 textual form, including "::" compression and a
/// trailing dotted-quad.
Ipv6Address parse_ipv6(std::string_view text);

/// "addr/len" with zero host bits.
Ipv6Prefix parse_prefix(std::string_view text);

/// Accepts "xx:xx:xx", "xx-xx-xx" or "xxxxxx".
Oui parse_oui(std::string_view text);

Oui oui_of(const MacAddress& mac) noexcept;

/// The U/L bit (0x02 of the first octet).
bool is_locally_assigned(const MacAddress& mac) noexcept;

/// Recovers the MAC embedded in a modified EUI-64 interface identifier, or
/// nothing when octets 11-12 are not the ff:fe marker.
std::optional<MacAddress> extract_mac_from_eui64(const Ipv6Address& addr) noexcept;

/// Inverse of extract_mac_from_eui64: `prefix` supplies the upper 64 bits.
Ipv6Address embed_eui64(const Ipv6Address& prefix, const MacAddress& mac) noexcept;

/// y = fourth octet, x = fifth octet. The sixth octet is never plotted.
constexpr CellCoord mac_cell(const MacAddress& mac) noexcept
{
    return {mac.octets[4], mac.octets[3]};
}

/// Throws ConfigError unless `base` is byte aligned and at most /112.
void require_grid_prefix(const Ipv6Prefix& base);

/// With B = base.length / 8: y = octet B, x = octet B + 1.
///
/// Throws ConfigError for unsupported base lengths and ContainmentError
/// when `addr` lies outside `base`.
CellCoord v6_cell(const Ipv6Address& addr, const Ipv6Prefix& base);

} // namespace byteaxis

template <>
struct std::hash<byteaxis::MacAddress>
{
    std::size_t operator()(const byteaxis::MacAddress& mac) const noexcept
    {
        std::uint64_t v = 0;
        for (auto o : mac.octets)
            v = v << 8 | o;
        return std::hash<std::uint64_t>{}(v);
    }
};
