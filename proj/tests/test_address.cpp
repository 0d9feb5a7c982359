#include "byteaxis/address.hpp"
#include "byteaxis/error.hpp"

#include "doctest.h"
#include "support/oracles.hpp"

#include <random>

using namespace byteaxis;

namespace {

MacAddress mac(std::initializer_list<int> o)
{
    MacAddress m;
    std::size_t i = 0;
    for (int v : o)
        m.octets[i++] = static_cast<std::uint8_t>(v);
    return m;
}

} // namespace

TEST_SUITE("parse_mac")
{
    TEST_CASE("colon form")
    {
        CHECK(parse_mac("00:11:22:33:44:55") == mac({0x00, 0x11, 0x22, 0x33, 0x44, 0x55}));
    }

    TEST_CASE("dash form, mixed case")
    {
        CHECK(parse_mac("08-3C-0C-aa-BB-cc") == mac({0x08, 0x3c, 0x0c, 0xaa, 0xbb, 0xcc}));
    }

    TEST_CASE("five groups is rejected")
    {
        CHECK_THROWS_AS(parse_mac("00:11:22:33:44"), ParseError);
    }

    TEST_CASE("malformed inputs name the offending token")
    {
        try {
            parse_mac("00:11:zz:33:44:55");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.token() == "zz");
        }
        CHECK_THROWS_AS(parse_mac("00:11-22:33:44:55"), ParseError);
        CHECK_THROWS_AS(parse_mac("001122334455"), ParseError);
        CHECK_THROWS_AS(parse_mac("00:11:22:33:44:5"), ParseError);
        CHECK_THROWS_AS(parse_mac("00:11:22:33:44:555"), ParseError);
        CHECK_THROWS_AS(parse_mac(""), ParseError);
        CHECK_THROWS_AS(parse_mac("00:11:22:33:44:55:"), ParseError);
    }

    TEST_CASE("canonical text is lowercase colon-separated")
    {
        CHECK(parse_mac("08-3C-0C-AA-BB-CC").to_string() == "08:3c:0c:aa:bb:cc");
    }

    TEST_CASE("multicast addresses are accepted")
    {
        CHECK(parse_mac("01:00:5e:00:00:01").octets[0] == 0x01);
    }
}

TEST_SUITE("parse_ipv6")
{
    TEST_CASE("compressed tail")
    {
        auto a = parse_ipv6("2a02:27b0:4a01::");
        std::array<std::uint8_t, 16> want{0x2a, 0x02, 0x27, 0xb0, 0x4a, 0x01};
        CHECK(a.octets == want);
    }

    TEST_CASE("all zeros")
    {
        CHECK(parse_ipv6("::").octets == std::array<std::uint8_t, 16>{});
    }

    TEST_CASE("compressed middle")
    {
        std::array<std::uint8_t, 16> want{0x20, 0x01, 0x03, 0xb0, 0x00, 0x22};
        want[15] = 0x01;
        CHECK(parse_ipv6("2001:3b0:22::1").octets == want);
    }

    TEST_CASE("rejects garbage")
    {
        CHECK_THROWS_AS(parse_ipv6("not-an-address"), ParseError);
        CHECK_THROWS_AS(parse_ipv6("1:2:3:4:5:6:7:8:9"), ParseError);
        CHECK_THROWS_AS(parse_ipv6("2001::db8::1"), ParseError);
        CHECK_THROWS_AS(parse_ipv6(""), ParseError);
        CHECK_THROWS_AS(parse_ipv6("10.0.0.1"), ParseError);
    }

    TEST_CASE("RFC 5952 canonical text")
    {
        CHECK(parse_ipv6("2001:0DB8:0:0:1:0:0:1").to_string() == "2001:db8::1:0:0:1");
        CHECK(parse_ipv6("2001:db8:0:0:0:0:2:1").to_string() == "2001:db8::2:1");
        CHECK(parse_ipv6("2001:db8:0:1:1:1:1:1").to_string() == "2001:db8:0:1:1:1:1:1");
        CHECK(parse_ipv6("2001:db8:0:0:1:0:0:0").to_string() == "2001:db8:0:0:1::");
        CHECK(parse_ipv6("0:0:0:0:0:0:0:1").to_string() == "::1");
        CHECK(parse_ipv6("1:0:0:0:0:0:0:0").to_string() == "1::");
        CHECK(parse_ipv6("2001:03b0:0022::").to_string() == "2001:3b0:22::");
        CHECK(parse_ipv6("::ffff:1.2.3.4").to_string() == "::ffff:102:304");
    }
}

TEST_SUITE("parse_prefix")
{
    TEST_CASE("the /48 base")
    {
        auto p = parse_prefix("2a02:27b0:4a01::/48");
        CHECK(p.length() == 48);
        CHECK(p.base() == parse_ipv6("2a02:27b0:4a01::"));
        CHECK(p.to_string() == "2a02:27b0:4a01::/48");
    }

    TEST_CASE("universal prefix")
    {
        auto p = parse_prefix("::/0");
        CHECK(p.length() == 0);
        CHECK(p.base() == Ipv6Address{});
    }

    TEST_CASE("host bits beyond the length are rejected")
    {
        CHECK_THROWS_AS(parse_prefix("2a02:27b0:4a01:1::/48"), ParseError);
    }

    TEST_CASE("structural errors")
    {
        CHECK_THROWS_AS(parse_prefix("2a02:27b0:4a01::"), ParseError);
        CHECK_THROWS_AS(parse_prefix("::/129"), ParseError);
        CHECK_THROWS_AS(parse_prefix("::/-1"), ParseError);
        CHECK_THROWS_AS(parse_prefix("::/"), ParseError);
        CHECK_THROWS_AS(parse_prefix("::/4x"), ParseError);
    }

    TEST_CASE("non byte-aligned containment")
    {
        auto p = parse_prefix("2001:db8::/33");
        CHECK(p.contains(parse_ipv6("2001:db8:7fff::1")));
        CHECK_FALSE(p.contains(parse_ipv6("2001:db8:8000::1")));
    }
}

TEST_SUITE("oui_of")
{
    TEST_CASE("first three octets")
    {
        CHECK(oui_of(parse_mac("08:3C:0C:12:34:56")).prefix == std::array<std::uint8_t, 3>{0x08, 0x3c, 0x0c});
        CHECK(oui_of(parse_mac("00:00:00:00:00:00")).prefix == std::array<std::uint8_t, 3>{});
        const auto rebound = oui_of(parse_mac("00:27:15:FF:FF:FF"));
        CHECK(rebound.to_string() == "00:27:15");
        CHECK_FALSE(rebound.org_name.has_value());
    }

    TEST_CASE("org_name does not affect identity")
    {
        Oui a = parse_oui("08:3c:0c");
        Oui b = a;
        b.org_name = "ARRIS Group, Inc.";
        CHECK(a == b);
        CHECK(parse_oui("083C0C") == a);
        CHECK(parse_oui("08-3C-0C") == a);
    }
}

TEST_SUITE("is_locally_assigned")
{
    TEST_CASE("examples")
    {
        CHECK(is_locally_assigned(parse_mac("02:00:00:00:00:00")));
        CHECK_FALSE(is_locally_assigned(parse_mac("00:11:22:33:44:55")));
        // 0xFE & 0x02 == 0x02
        CHECK((0xFE & 0x02) == 0x02);
        CHECK(is_locally_assigned(parse_mac("FE:11:22:33:44:55")));
    }

    TEST_CASE("depends on the U/L bit alone")
    {
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 2000; ++trial) {
            const auto m = oracle::u48_to_mac(rng() & 0xffffffffffffULL);
            const bool expected = is_locally_assigned(m);
            for (int bit = 0; bit < 48; ++bit) {
                if (bit == 41) // 0x02 of the first octet
                    continue;
                const auto flipped = oracle::u48_to_mac(oracle::mac_to_u48(m) ^ (1ULL << bit));
                REQUIRE(is_locally_assigned(flipped) == expected);
            }
            const auto ul = oracle::u48_to_mac(oracle::mac_to_u48(m) ^ (1ULL << 41));
            REQUIRE(is_locally_assigned(ul) != expected);
        }
    }
}

TEST_SUITE("eui64")
{
    TEST_CASE("extraction examples agree with the integer oracle")
    {
        const auto a = parse_ipv6("2001:db8::0211:22ff:fe33:4455");
        const auto want = oracle::mac_from_interface_id(oracle::interface_id(a));
        REQUIRE(want);
        CHECK(*want == 0x001122334455ULL);
        CHECK(extract_mac_from_eui64(a) == parse_mac("00:11:22:33:44:55"));

        const auto b = parse_ipv6("fe80::0200:00ff:fe00:0001");
        CHECK(*oracle::mac_from_interface_id(oracle::interface_id(b)) == 0x000000000001ULL);
        CHECK(extract_mac_from_eui64(b) == parse_mac("00:00:00:00:00:01"));
    }

    TEST_CASE("no marker")
    {
        CHECK_FALSE(extract_mac_from_eui64(parse_ipv6("2001:db8::1")).has_value());
    }

    TEST_CASE("round trip and agreement with RFC 4291 construction")
    {
        std::mt19937_64 rng(11);
        const auto prefix = parse_ipv6("2001:db8:1:2::");
        for (int i = 0; i < 5000; ++i) {
            const auto m = oracle::u48_to_mac(rng() & 0xffffffffffffULL);
            const auto addr = embed_eui64(prefix, m);
            REQUIRE(oracle::interface_id(addr) == oracle::eui64_interface_id(m));
            REQUIRE(extract_mac_from_eui64(addr) == m);
        }
    }
}

TEST_SUITE("cell mapping")
{
    TEST_CASE("mac_cell examples")
    {
        CHECK(mac_cell(parse_mac("00:11:22:33:44:55")) == CellCoord{0x44, 0x33});
        CHECK(mac_cell(parse_mac("08:3C:0C:00:00:00")) == CellCoord{0, 0});
        CHECK(mac_cell(parse_mac("08:3C:0C:28:10:FF")) == CellCoord{0x10, 0x28});
    }

    TEST_CASE("v6_cell examples")
    {
        const auto base = parse_prefix("2a02:27b0:4a01::/48");
        CHECK(v6_cell(parse_ipv6("2a02:27b0:4a01:ab12::1"), base) == CellCoord{0x12, 0xab});
        CHECK(v6_cell(base.base(), base) == CellCoord{0, 0});
        CHECK(v6_cell(parse_ipv6("2001:3b0:22:ff00::"), parse_prefix("2001:3b0:22::/48"))
              == CellCoord{0x00, 0xff});
    }

    TEST_CASE("v6_cell errors")
    {
        const auto base = parse_prefix("2a02:27b0:4a01::/48");
        CHECK_THROWS_AS(v6_cell(parse_ipv6("2a02:27b0:4a02::1"), base), ContainmentError);
        CHECK_THROWS_AS(v6_cell(parse_ipv6("2a02:27b0:4a01::1"), parse_prefix("2a02:27b0:4a00::/44")),
                        ConfigError);
        CHECK_THROWS_AS(v6_cell(parse_ipv6("::1"), parse_prefix("::/120")), ConfigError);
    }

    TEST_CASE("other byte-aligned bases use the next two octets")
    {
        const auto base = parse_prefix("2001:db8:aa00::/40");
        CHECK(v6_cell(parse_ipv6("2001:db8:aa12:3400::"), base) == CellCoord{0x34, 0x12});
        const auto wide = parse_prefix("::/0");
        CHECK(v6_cell(parse_ipv6("abcd::"), wide) == CellCoord{0xcd, 0xab});
    }

    TEST_CASE("exhaustive bijection over all 65536 cells")
    {
        const auto base = parse_prefix("2a02:27b0:4a01::/48");
        std::size_t failures = 0;
        for (int y = 0; y < 256; ++y) {
            for (int x = 0; x < 256; ++x) {
                auto m = parse_mac("08:3c:0c:00:00:5a");
                m.octets[3] = static_cast<std::uint8_t>(y);
                m.octets[4] = static_cast<std::uint8_t>(x);
                auto a = base.base();
                a.octets[6] = static_cast<std::uint8_t>(y);
                a.octets[7] = static_cast<std::uint8_t>(x);
                const CellCoord want{static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)};
                failures += mac_cell(m) != want;
                failures += v6_cell(a, base) != want;
                failures += CellCoord::from_offset(want.offset()) != want;
            }
        }
        CHECK(failures == 0);
    }

    TEST_CASE("every cell covers exactly 256 MACs")
    {
        // The sixth octet is the only free byte once the OUI and (y, x) are fixed.
        auto m = parse_mac("08:3c:0c:12:34:00");
        for (int z = 0; z < 256; ++z) {
            m.octets[5] = static_cast<std::uint8_t>(z);
            REQUIRE(mac_cell(m) == CellCoord{0x34, 0x12});
        }
    }
}

TEST_CASE("text round trips")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const auto m = oracle::u48_to_mac(rng() & 0xffffffffffffULL);
        REQUIRE(parse_mac(m.to_string()) == m);

        Ipv6Address a;
        for (auto& o : a.octets) {
            // Bias toward zero groups so "::" placement gets exercised.
            o = (rng() % 3 == 0) ? static_cast<std::uint8_t>(rng()) : 0;
        }
        const auto text = a.to_string();
        REQUIRE(parse_ipv6(text) == a);
        REQUIRE(parse_ipv6(text).to_string() == text);

        const int len = static_cast<int>(rng() % 129);
        const auto p = Ipv6Prefix::truncate(a, len);
        REQUIRE(parse_prefix(p.to_string()) == p);
    }
}
