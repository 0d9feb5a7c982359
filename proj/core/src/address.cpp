#include "byteaxis/address.hpp"

#include "byteaxis/error.hpp"

#include <arpa/inet.h>

#include <charconv>
#include <span>
#include <cstdio>
#include <vector>

namespace byteaxis {

namespace {

int hex_value(char c) noexcept
{
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

std::optional<std::uint8_t> hex_pair(std::string_view token) noexcept
{
    if (token.size() != 2)
        return std::nullopt;
    int hi = hex_value(token[0]);
    int lo = hex_value(token[1]);
    if (hi < 0 || lo < 0)
        return std::nullopt;
    return static_cast<std::uint8_t>(hi << 4 | lo);
}

// Splits `text` into exactly `groups` hex pairs separated uniformly by ':' or '-'.
template <std::size_t N>
std::array<std::uint8_t, N> parse_hex_groups(std::string_view text, const char* what)
{
    std::array<std::uint8_t, N> out{};
    const auto sep_pos = text.find_first_of(":-");
    if (sep_pos == std::string_view::npos) {
        throw ParseError(std::string("invalid ") + what + " '" + std::string(text)
                             + "': expected " + std::to_string(N)
                             + " hex pairs separated by ':' or '-'",
                         std::string(text));
    }
    const char sep = text[sep_pos];

    std::vector<std::string_view> tokens;
    std::size_t start = 0;
    while (true) {
        auto end = text.find(sep, start);
        tokens.push_back(text.substr(start, end == std::string_view::npos ? end : end - start));
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }
    if (tokens.size() != N) {
        throw ParseError(std::string("invalid ") + what + " '" + std::string(text) + "': "
                             + std::to_string(tokens.size()) + " groups, expected "
                             + std::to_string(N),
                         std::string(text));
    }
    for (std::size_t i = 0; i < N; ++i) {
        auto v = hex_pair(tokens[i]);
        if (!v) {
            throw ParseError(std::string("invalid ") + what + " '" + std::string(text)
                                 + "': bad group '" + std::string(tokens[i]) + "'",
                             std::string(tokens[i]));
        }
        out[i] = *v;
    }
    return out;
}

void append_hex_octets(std::string& out, std::span<const std::uint8_t> octets)
{
    static constexpr char digits[] = "0123456789abcdef";
    for (std::size_t i = 0; i < octets.size(); ++i) {
        if (i)
            out += ':';
        out += digits[octets[i] >> 4];
        out += digits[octets[i] & 0xf];
    }
}

bool host_bits_clear(const Ipv6Address& addr, int length) noexcept
{
    for (int bit = length; bit < 128; ++bit) {
        if (addr.octets[bit / 8] & (0x80 >> (bit % 8)))
            return false;
    }
    return true;
}

} // namespace

std::string MacAddress::to_string() const
{
    std::string out;
    out.reserve(17);
    append_hex_octets(out, octets);
    return out;
}

std::string Oui::to_string() const
{
    std::string out;
    out.reserve(8);
    append_hex_octets(out, prefix);
    return out;
}

bool Oui::contains(const MacAddress& mac) const noexcept
{
    return mac.octets[0] == prefix[0] && mac.octets[1] == prefix[1] && mac.octets[2] == prefix[2];
}

std::string Ipv6Address::to_string() const
{
    std::array<std::uint16_t, 8> groups{};
    for (std::size_t i = 0; i < 8; ++i)
        groups[i] = static_cast<std::uint16_t>(octets[2 * i] << 8 | octets[2 * i + 1]);

    int best_start = -1, best_len = 0;
    for (int i = 0; i < 8;) {
        if (groups[i] != 0) {
            ++i;
            continue;
        }
        int j = i;
        while (j < 8 && groups[j] == 0)
            ++j;
        if (j - i > best_len) {
            best_start = i;
            best_len = j - i;
        }
        i = j;
    }
    if (best_len < 2)
        best_start = -1;

    std::string out;
    char buf[8];
    for (int i = 0; i < 8; ++i) {
        if (i == best_start) {
            out += "::";
            i += best_len - 1;
            continue;
        }
        if (!out.empty() && out.back() != ':')
            out += ':';
        auto res = std::to_chars(buf, buf + sizeof buf, groups[i], 16);
        out.append(buf, res.ptr);
    }
    return out;
}

Ipv6Prefix::Ipv6Prefix(const Ipv6Address& base, int length)
    : base_(base), length_(length)
{
    if (length < 0 || length > 128)
        throw ParseError("prefix length " + std::to_string(length) + " out of range [0, 128]",
                         std::to_string(length));
    if (!host_bits_clear(base, length)) {
        throw ParseError("prefix " + base.to_string() + "/" + std::to_string(length)
                             + " has bits set beyond its length",
                         base.to_string());
    }
}

Ipv6Prefix Ipv6Prefix::truncate(const Ipv6Address& addr, int length)
{
    if (length < 0 || length > 128)
        throw ParseError("prefix length " + std::to_string(length) + " out of range [0, 128]",
                         std::to_string(length));
    Ipv6Address base = addr;
    for (int bit = length; bit < 128; ++bit)
        base.octets[bit / 8] &= static_cast<std::uint8_t>(~(0x80 >> (bit % 8)));
    return Ipv6Prefix(base, length);
}

bool Ipv6Prefix::contains(const Ipv6Address& addr) const noexcept
{
    const int full = length_ / 8;
    for (int i = 0; i < full; ++i) {
        if (addr.octets[i] != base_.octets[i])
            return false;
    }
    if (const int rest = length_ % 8) {
        const auto mask = static_cast<std::uint8_t>(0xff << (8 - rest));
        if ((addr.octets[full] & mask) != base_.octets[full])
            return false;
    }
    return true;
}

bool Ipv6Prefix::contains(const Ipv6Prefix& other) const noexcept
{
    return other.length_ >= length_ && contains(other.base_);
}

std::string Ipv6Prefix::to_string() const
{
    return base_.to_string() + "/" + std::to_string(length_);
}

MacAddress parse_mac(std::string_view text)
{
    return MacAddress{parse_hex_groups<6>(text, "MAC address")};
}

Ipv6Address parse_ipv6(std::string_view text)
{
    // inet_pton needs a terminated buffer; the longest valid form is 45 chars.
    if (text.empty() || text.size() > 45) {
        throw ParseError("invalid IPv6 address '" + std::string(text) + "'", std::string(text));
    }
    char buf[46];
    text.copy(buf, text.size());
    buf[text.size()] = '\0';

    Ipv6Address addr;
    if (::inet_pton(AF_INET6, buf, addr.octets.data()) != 1)
        throw ParseError("invalid IPv6 address '" + std::string(text) + "'", std::string(text));
    return addr;
}

Ipv6Prefix parse_prefix(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        throw ParseError("invalid prefix '" + std::string(text) + "': missing '/'",
                         std::string(text));

    const auto len_text = text.substr(slash + 1);
    int length = -1;
    auto res = std::from_chars(len_text.data(), len_text.data() + len_text.size(), length);
    if (len_text.empty() || res.ec != std::errc() || res.ptr != len_text.data() + len_text.size()
        || length < 0 || length > 128) {
        throw ParseError("invalid prefix length '" + std::string(len_text) + "'",
                         std::string(len_text));
    }
    return Ipv6Prefix(parse_ipv6(text.substr(0, slash)), length);
}

Oui parse_oui(std::string_view text)
{
    if (text.size() == 6 && text.find_first_of(":-") == std::string_view::npos) {
        Oui oui;
        for (std::size_t i = 0; i < 3; ++i) {
            auto v = hex_pair(text.substr(2 * i, 2));
            if (!v)
                throw ParseError("invalid OUI '" + std::string(text) + "'", std::string(text));
            oui.prefix[i] = *v;
        }
        return oui;
    }
    return Oui{parse_hex_groups<3>(text, "OUI"), std::nullopt};
}

Oui oui_of(const MacAddress& mac) noexcept
{
    return Oui{{mac.octets[0], mac.octets[1], mac.octets[2]}, std::nullopt};
}

bool is_locally_assigned(const MacAddress& mac) noexcept
{
    return (mac.octets[0] & 0x02) != 0;
}

std::optional<MacAddress> extract_mac_from_eui64(const Ipv6Address& addr) noexcept
{
    const auto& o = addr.octets;
    if (o[11] != 0xff || o[12] != 0xfe)
        return std::nullopt;
    return MacAddress{{static_cast<std::uint8_t>(o[8] ^ 0x02), o[9], o[10], o[13], o[14], o[15]}};
}

Ipv6Address embed_eui64(const Ipv6Address& prefix, const MacAddress& mac) noexcept
{
    Ipv6Address out = prefix;
    const auto& m = mac.octets;
    out.octets[8] = static_cast<std::uint8_t>(m[0] ^ 0x02);
    out.octets[9] = m[1];
    out.octets[10] = m[2];
    out.octets[11] = 0xff;
    out.octets[12] = 0xfe;
    out.octets[13] = m[3];
    out.octets[14] = m[4];
    out.octets[15] = m[5];
    return out;
}

void require_grid_prefix(const Ipv6Prefix& base)
{
    if (base.length() % 8 != 0 || base.length() > 112) {
        throw ConfigError("unsupported grid base " + base.to_string()
                          + ": length must be a multiple of 8 and at most 112");
    }
}

CellCoord v6_cell(const Ipv6Address& addr, const Ipv6Prefix& base)
{
    require_grid_prefix(base);
    if (!base.contains(addr))
        throw ContainmentError(addr.to_string() + " is outside " + base.to_string());
    const auto b = static_cast<std::size_t>(base.length() / 8);
    return {addr.octets[b + 1], addr.octets[b]};
}

} // namespace byteaxis
