#pragma once

// Random dataset builders shared by the unit and acceptance suites.

#include "byteaxis/grid.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace gen {

inline byteaxis::Ipv6Address v6_in(const byteaxis::Ipv6Prefix& base, std::uint16_t offset,
                                   std::uint64_t iid = 0)
{
    auto a = base.base();
    const auto b = static_cast<std::size_t>(base.length() / 8);
    a.octets[b] = static_cast<std::uint8_t>(offset >> 8);
    a.octets[b + 1] = static_cast<std::uint8_t>(offset & 0xff);
    for (std::size_t i = 0; i < 8 && b + 2 + i < 16; ++i)
        a.octets[15 - i] = static_cast<std::uint8_t>(iid >> (8 * i));
    return a;
}

inline byteaxis::V6Observation probe(const byteaxis::Ipv6Prefix& base, std::uint16_t offset,
                                     const byteaxis::Ipv6Address& responder)
{
    return {byteaxis::Ipv6Prefix::truncate(v6_in(base, offset), std::max(64, base.length() + 16)),
            responder};
}

/// Distinct, size-aligned blocks of 2^k offsets, each owned by one responder
/// whose address sits inside its block.
struct Allocation
{
    std::uint16_t first = 0;
    int bits = 0;
    byteaxis::Ipv6Address responder;
};

inline std::vector<Allocation> aligned_allocations(const byteaxis::Ipv6Prefix& base, int bits,
                                                   std::size_t count, std::mt19937_64& rng)
{
    const std::size_t slots = std::size_t{1} << (16 - bits);
    std::vector<std::size_t> ids(slots);
    for (std::size_t i = 0; i < slots; ++i)
        ids[i] = i;
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<Allocation> out;
    for (std::size_t i = 0; i < count && i < slots; ++i) {
        const auto first = static_cast<std::uint16_t>(ids[i] << bits);
        out.push_back({first, bits, v6_in(base, first, 1)});
    }
    return out;
}

inline std::vector<byteaxis::V6Observation>
fill_allocations(const byteaxis::Ipv6Prefix& base, const std::vector<Allocation>& allocs)
{
    std::vector<byteaxis::V6Observation> obs;
    for (const auto& a : allocs) {
        for (std::uint32_t i = 0; i < (1u << a.bits); ++i)
            obs.push_back(probe(base, static_cast<std::uint16_t>(a.first + i), a.responder));
    }
    return obs;
}

inline byteaxis::ByteAxisGrid random_mac_grid(std::mt19937_64& rng, std::size_t n)
{
    using namespace byteaxis;
    Oui oui{{static_cast<std::uint8_t>(rng() & 0xfc), static_cast<std::uint8_t>(rng()),
             static_cast<std::uint8_t>(rng())},
            std::nullopt};
    if (rng() % 2)
        oui.org_name = "Org \"" + std::to_string(rng() % 100) + "\", Inc.; 100%";
    static const std::vector<std::string> labels = {"iPhone 5c", "iPad Mini 2", "a=b;c", "x,y",
                                                    "50% off", "Ünïcode"};
    ByteAxisGrid g(GridBase::for_oui(oui));
    for (std::size_t i = 0; i < n; ++i) {
        MacAddress m{{oui.prefix[0], oui.prefix[1], oui.prefix[2], static_cast<std::uint8_t>(rng()),
                      static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng())}};
        MacObservation o{m, std::nullopt, 1 + rng() % 4};
        if (rng() % 3)
            o.label = labels[rng() % labels.size()];
        g.add(o);
    }
    return g;
}

inline byteaxis::ByteAxisGrid random_v6_grid(std::mt19937_64& rng, std::size_t n)
{
    using namespace byteaxis;
    const int len = 8 * static_cast<int>(2 + rng() % 5); // /16 .. /48
    Ipv6Address raw;
    for (auto& o : raw.octets)
        o = static_cast<std::uint8_t>(rng());
    const auto base = Ipv6Prefix::truncate(raw, len);
    ByteAxisGrid g(GridBase::for_prefix(base));
    for (std::size_t i = 0; i < n; ++i) {
        const auto off = static_cast<std::uint16_t>(rng());
        g.add(probe(base, off, v6_in(base, static_cast<std::uint16_t>(off & 0xfff0), rng() % 4)));
    }
    return g;
}

} // namespace gen
