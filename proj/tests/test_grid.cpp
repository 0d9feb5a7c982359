#include "byteaxis/error.hpp"
#include "byteaxis/grid.hpp"

#include "doctest.h"
#include "support/generators.hpp"

#include <algorithm>
#include <random>

using namespace byteaxis;

TEST_SUITE("build_mac_grid")
{
    const Oui arris = parse_oui("08:3c:0c");

    TEST_CASE("single insertion")
    {
        auto g = build_mac_grid(arris, {{parse_mac("08:3C:0C:28:10:00"), std::nullopt, 1}});
        CHECK(g.at(0x10, 0x28).count == 1);
        CHECK(g.total() == 1);
        CHECK(g.occupied_cells() == 1);
    }

    TEST_CASE("repeated MAC accumulates in one cell")
    {
        const MacObservation o{parse_mac("08:3C:0C:28:10:00"), "model", 1};
        auto g = build_mac_grid(arris, {o, o});
        CHECK(g.at(0x10, 0x28).count == 2);
        CHECK(g.at(0x10, 0x28).labels.at("model") == 2);
        CHECK(g.occupied_cells() == 1);
    }

    TEST_CASE("weights scale counts and label multiplicities")
    {
        auto g = build_mac_grid(arris, {{parse_mac("08:3c:0c:01:02:03"), "iPhone 5c", 3},
                                        {parse_mac("08:3c:0c:01:02:04"), std::nullopt, 2}});
        CHECK(g.at(0x02, 0x01).count == 5);
        CHECK(g.at(0x02, 0x01).labels.at("iPhone 5c") == 3);
        CHECK(g.total() == 5);
    }

    TEST_CASE("foreign OUI is a containment error naming the MAC")
    {
        try {
            build_mac_grid(arris, {{parse_mac("00:27:15:00:00:01"), std::nullopt, 1}});
            FAIL("expected ContainmentError");
        } catch (const ContainmentError& e) {
            CHECK(std::string(e.what()).find("00:27:15:00:00:01") != std::string::npos);
        }
    }
}

TEST_SUITE("build_v6_grid")
{
    const auto base = parse_prefix("2a02:27b0:4a01::/48");

    TEST_CASE("probe lands on its /64 cell")
    {
        const auto r = parse_ipv6("2a02:27b0:4a01:ab10::1");
        auto g = build_v6_grid(base, {{parse_prefix("2a02:27b0:4a01:ab12::/64"), r}});
        const auto& c = g.at(0x12, 0xab);
        CHECK(c.count == 1);
        CHECK(c.responders == std::set<std::string>{"2a02:27b0:4a01:ab10::1"});
    }

    TEST_CASE("responders are a set")
    {
        const V6Observation o{parse_prefix("2a02:27b0:4a01:ab12::/64"), parse_ipv6("2a02:27b0:4a01:ab10::1")};
        auto g = build_v6_grid(base, {o, o});
        CHECK(g.at(0x12, 0xab).count == 2);
        CHECK(g.at(0x12, 0xab).responders.size() == 1);
    }

    TEST_CASE("empty input")
    {
        auto g = build_v6_grid(base, {});
        CHECK(g.total() == 0);
        CHECK(g.occupied_cells() == 0);
    }

    TEST_CASE("probe outside the base")
    {
        CHECK_THROWS_AS(build_v6_grid(base, {{parse_prefix("2a02:27b0:4a02::/64"), parse_ipv6("::1")}}),
                        ContainmentError);
        CHECK_THROWS_AS(build_v6_grid(parse_prefix("2a02:27b0:4a00::/44"), {}), ConfigError);
    }

    TEST_CASE("kind mismatch")
    {
        ByteAxisGrid g(GridBase::for_prefix(base));
        CHECK_THROWS_AS(g.add(MacObservation{parse_mac("08:3c:0c:00:00:01"), std::nullopt, 1}),
                        ConfigError);
    }
}

TEST_SUITE("grid properties")
{
    TEST_CASE("permutation invariance and conservation")
    {
        std::mt19937_64 rng(41);
        const Oui oui = parse_oui("08:3c:0c");
        std::vector<MacObservation> obs;
        std::uint64_t weights = 0;
        for (int i = 0; i < 5000; ++i) {
            MacAddress m{{0x08, 0x3c, 0x0c, static_cast<std::uint8_t>(rng() % 40),
                          static_cast<std::uint8_t>(rng()), static_cast<std::uint8_t>(rng())}};
            MacObservation o{m, std::nullopt, 1 + rng() % 3};
            if (rng() % 2)
                o.label = "m" + std::to_string(rng() % 5);
            weights += o.weight;
            obs.push_back(o);
        }
        const auto g = build_mac_grid(oui, obs);
        CHECK(g.total() == weights);
        for (int trial = 0; trial < 5; ++trial) {
            std::shuffle(obs.begin(), obs.end(), rng);
            REQUIRE(build_mac_grid(oui, obs) == g);
        }

        const auto base = parse_prefix("2001:3b0:22::/48");
        std::vector<V6Observation> v6;
        for (int i = 0; i < 3000; ++i)
            v6.push_back(gen::probe(base, static_cast<std::uint16_t>(rng() % 700),
                                    gen::v6_in(base, static_cast<std::uint16_t>(rng() % 50), 1)));
        const auto gv = build_v6_grid(base, v6);
        CHECK(gv.total() == v6.size());
        std::shuffle(v6.begin(), v6.end(), rng);
        CHECK(build_v6_grid(base, v6) == gv);
    }

    TEST_CASE("occupied iff at least one observation")
    {
        std::mt19937_64 rng(43);
        auto g = gen::random_mac_grid(rng, 2000);
        std::uint64_t sum = 0;
        for (const auto& [offset, c] : g.cells()) {
            sum += c.count;
            std::uint64_t labelled = 0;
            for (const auto& [name, n] : c.labels)
                labelled += n;
            REQUIRE(c.occupied());
            REQUIRE(labelled <= c.count);
        }
        CHECK(sum == g.total());
        std::size_t seen = 0;
        for (int y = 0; y < 256; ++y)
            for (int x = 0; x < 256; ++x)
                seen += g.at(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)).occupied();
        CHECK(seen == g.cells().size());
    }

    TEST_CASE("zero-count updates are rejected")
    {
        ByteAxisGrid g(GridBase::for_oui(parse_oui("08:3c:0c")));
        CHECK_THROWS_AS(g.accumulate({1, 2}, Cell{}), ConfigError);
        CHECK(g.cells().empty());
    }
}

TEST_SUITE("merge_grids")
{
    TEST_CASE("identity, additivity, commutativity, associativity")
    {
        std::mt19937_64 rng(47);
        const auto oui = parse_oui("08:3c:0c");
        auto make = [&](std::size_t n) {
            std::vector<MacObservation> obs;
            for (std::size_t i = 0; i < n; ++i) {
                MacAddress m{{0x08, 0x3c, 0x0c, static_cast<std::uint8_t>(rng() % 8),
                              static_cast<std::uint8_t>(rng() % 8), 0}};
                obs.push_back({m, "l" + std::to_string(rng() % 3), 1 + rng() % 2});
            }
            return build_mac_grid(oui, obs);
        };
        const auto a = make(300), b = make(200), c = make(100);
        const ByteAxisGrid empty(GridBase::for_oui(oui));

        CHECK(merge_grids(a, empty) == a);
        CHECK(merge_grids(empty, a) == a);
        CHECK(merge_grids(a, b).total() == a.total() + b.total());
        CHECK(merge_grids(a, b) == merge_grids(b, a));
        CHECK(merge_grids(merge_grids(a, b), c) == merge_grids(a, merge_grids(b, c)));
    }

    TEST_CASE("responder sets union")
    {
        const auto base = parse_prefix("2a02:27b0:4a01::/48");
        auto a = build_v6_grid(base, {gen::probe(base, 5, parse_ipv6("2a02:27b0:4a01::1"))});
        auto b = build_v6_grid(base, {gen::probe(base, 5, parse_ipv6("2a02:27b0:4a01::2")),
                                      gen::probe(base, 5, parse_ipv6("2a02:27b0:4a01::1"))});
        auto m = merge_grids(a, b);
        CHECK(m.at(CellCoord::from_offset(5)).count == 3);
        CHECK(m.at(CellCoord::from_offset(5)).responders.size() == 2);
    }

    TEST_CASE("base mismatch")
    {
        ByteAxisGrid a(GridBase::for_oui(parse_oui("08:3c:0c")));
        ByteAxisGrid b(GridBase::for_oui(parse_oui("00:27:15")));
        ByteAxisGrid c(GridBase::for_prefix(parse_prefix("2001:db8::/48")));
        CHECK_THROWS_AS(merge_grids(a, b), ConfigError);
        CHECK_THROWS_AS(merge_grids(a, c), ConfigError);
    }
}

TEST_CASE("occupancy")
{
    ByteAxisGrid g(GridBase::for_oui(parse_oui("08:3c:0c")));
    CHECK(occupancy(g) == 0.0);

    g.add(MacObservation{parse_mac("08:3c:0c:00:00:00"), std::nullopt, 1});
    CHECK(occupancy(g) == doctest::Approx(1.0 / 65536.0));
    CHECK(occupancy(g) == doctest::Approx(0.0000153).epsilon(0.01));

    for (int y = 0; y < 256; ++y)
        for (int x = 0; x < 256; ++x)
            g.add(MacObservation{{{0x08, 0x3c, 0x0c, static_cast<std::uint8_t>(y),
                                   static_cast<std::uint8_t>(x), 0}},
                                 std::nullopt,
                                 1});
    CHECK(occupancy(g) == 1.0);
}

TEST_CASE("base slugs")
{
    CHECK(GridBase::for_oui(parse_oui("08:3c:0c")).slug() == "08-3c-0c");
    CHECK(GridBase::for_prefix(parse_prefix("2a02:27b0:4a01::/48")).slug() == "2a02-27b0-4a01--_48");
}
