#include "byteaxis/png.hpp"

#include "doctest.h"
#include "support/oracles.hpp"

#include <random>

using namespace byteaxis;

TEST_SUITE("png")
{
    TEST_CASE("checksums agree with zlib")
    {
        std::mt19937_64 rng(2);
        for (std::size_t n : {0u, 1u, 7u, 5552u, 5553u, 100000u}) {
            std::vector<std::uint8_t> data(n);
            for (auto& b : data)
                b = static_cast<std::uint8_t>(rng());
            CHECK(png::crc32(data) == ::crc32(0, data.data(), static_cast<uInt>(n)));
            CHECK(png::adler32(data) == ::adler32(1, data.data(), static_cast<uInt>(n)));
        }
    }

    TEST_CASE("deflate stream inflates back with zlib")
    {
        std::mt19937_64 rng(4);
        std::vector<std::vector<std::uint8_t>> inputs;
        inputs.emplace_back();
        inputs.emplace_back(1, 0x42);
        inputs.emplace_back(200000, 0);
        {
            std::vector<std::uint8_t> random(70000);
            for (auto& b : random)
                b = static_cast<std::uint8_t>(rng());
            inputs.push_back(random);
        }
        {
            // Repetitive with long-range matches past the window size.
            std::vector<std::uint8_t> mixed;
            for (int i = 0; i < 120000; ++i)
                mixed.push_back(static_cast<std::uint8_t>((i % 1000 < 500) ? i % 7 : rng() % 4));
            inputs.push_back(mixed);
        }
        for (const auto& in : inputs) {
            const auto z = png::zlib_compress(in);
            REQUIRE(oracle::inflate_zlib(z, in.size()) == in);
        }
    }

    TEST_CASE("flat images compress well")
    {
        std::vector<std::uint8_t> rgb(816 * 816 * 3, 0);
        const auto png = png::encode_rgb(816, 816, rgb);
        CHECK(png.size() < 20000);
    }

    TEST_CASE("encoded image decodes to the same pixels")
    {
        std::mt19937_64 rng(6);
        const std::uint32_t w = 37, h = 23;
        std::vector<std::uint8_t> rgb(w * h * 3);
        for (auto& b : rgb)
            b = static_cast<std::uint8_t>(rng() % 5 * 60);
        const auto bytes = png::encode_rgb(w, h, rgb, {{"Title", "08:3c:0c"}});
        const auto img = oracle::decode_png(bytes);
        CHECK(img.crc_ok);
        CHECK(img.width == w);
        CHECK(img.height == h);
        CHECK(img.rgb == rgb);
        REQUIRE(img.text.size() == 1);
        CHECK(img.text[0].first == "Title");
        CHECK(img.text[0].second == "08:3c:0c");
        CHECK(png::encode_rgb(w, h, rgb, {{"Title", "08:3c:0c"}}) == bytes);
    }
}
