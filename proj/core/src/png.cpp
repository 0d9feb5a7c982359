#include "byteaxis/png.hpp"

#include "byteaxis/error.hpp"

#include <array>

namespace byteaxis::png {

namespace {

constexpr std::size_t window_size = 32768;
constexpr std::size_t min_match = 3;
constexpr std::size_t max_match = 258;
constexpr std::size_t max_chain = 64;
constexpr std::size_t hash_bits = 15;

constexpr std::array<std::uint16_t, 29> length_base = {
    3,  4,  5,  6,  7,  8,  9,  10, 11,  13,  15,  17,  19,  23, 27,
    31, 35, 43, 51, 59, 67, 83, 99, 115, 131, 163, 195, 227, 258};
constexpr std::array<std::uint8_t, 29> length_extra = {
    0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 0};
constexpr std::array<std::uint16_t, 30> dist_base = {
    1,   2,   3,   4,   5,   7,    9,    13,   17,   25,   33,   49,   65,    97,    129,
    193, 257, 385, 513, 769, 1025, 1537, 2049, 3073, 4097, 6145, 8193, 12289, 16385, 24577};
constexpr std::array<std::uint8_t, 30> dist_extra = {
    0, 0, 0, 0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 11, 12, 12, 13, 13};

class BitWriter
{
public:
    explicit BitWriter(std::vector<std::uint8_t>& out) : out_(out) {}

    // LSB-first, as deflate packs data elements.
    void bits(std::uint32_t value, unsigned count)
    {
        acc_ |= static_cast<std::uint64_t>(value) << used_;
        used_ += count;
        while (used_ >= 8) {
            out_.push_back(static_cast<std::uint8_t>(acc_));
            acc_ >>= 8;
            used_ -= 8;
        }
    }

    // Huffman codes go out most significant bit first.
    void code(std::uint32_t code, unsigned length)
    {
        std::uint32_t reversed = 0;
        for (unsigned i = 0; i < length; ++i)
            reversed |= ((code >> i) & 1u) << (length - 1 - i);
        bits(reversed, length);
    }

    void flush()
    {
        if (used_ > 0)
            out_.push_back(static_cast<std::uint8_t>(acc_));
        acc_ = 0;
        used_ = 0;
    }

private:
    std::vector<std::uint8_t>& out_;
    std::uint64_t acc_ = 0;
    unsigned used_ = 0;
};

void put_symbol(BitWriter& w, unsigned sym)
{
    if (sym < 144)
        w.code(0x30 + sym, 8);
    else if (sym < 256)
        w.code(0x190 + (sym - 144), 9);
    else if (sym < 280)
        w.code(sym - 256, 7);
    else
        w.code(0xc0 + (sym - 280), 8);
}

void put_match(BitWriter& w, std::size_t length, std::size_t distance)
{
    std::size_t li = length_base.size() - 1;
    while (length_base[li] > length)
        --li;
    put_symbol(w, static_cast<unsigned>(257 + li));
    if (length_extra[li])
        w.bits(static_cast<std::uint32_t>(length - length_base[li]), length_extra[li]);

    std::size_t di = dist_base.size() - 1;
    while (dist_base[di] > distance)
        --di;
    w.code(static_cast<std::uint32_t>(di), 5);
    if (dist_extra[di])
        w.bits(static_cast<std::uint32_t>(distance - dist_base[di]), dist_extra[di]);
}

std::uint32_t hash3(const std::uint8_t* p) noexcept
{
    const std::uint32_t v = static_cast<std::uint32_t>(p[0]) << 16
                            | static_cast<std::uint32_t>(p[1]) << 8 | p[2];
    return (v * 2654435761u) >> (32 - hash_bits);
}

const std::array<std::uint32_t, 256>& crc_table() noexcept
{
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t n = 0; n < 256; ++n) {
            std::uint32_t c = n;
            for (int k = 0; k < 8; ++k)
                c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
            t[n] = c;
        }
        return t;
    }();
    return table;
}

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_chunk(std::vector<std::uint8_t>& out, const char (&type)[5],
               std::span<const std::uint8_t> payload)
{
    put_be32(out, static_cast<std::uint32_t>(payload.size()));
    const std::size_t type_at = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), payload.begin(), payload.end());
    put_be32(out, crc32(std::span(out).subspan(type_at)));
}

} // namespace

std::uint32_t crc32(std::span<const std::uint8_t> data, std::uint32_t crc) noexcept
{
    const auto& table = crc_table();
    std::uint32_t c = crc ^ 0xffffffffu;
    for (auto b : data)
        c = table[(c ^ b) & 0xff] ^ (c >> 8);
    return c ^ 0xffffffffu;
}

std::uint32_t adler32(std::span<const std::uint8_t> data) noexcept
{
    constexpr std::uint32_t mod = 65521;
    std::uint32_t a = 1, b = 0;
    std::size_t i = 0;
    while (i < data.size()) {
        // 5552 is the largest run that cannot overflow 32 bits before reducing.
        const std::size_t end = std::min(data.size(), i + 5552);
        for (; i < end; ++i) {
            a += data[i];
            b += a;
        }
        a %= mod;
        b %= mod;
    }
    return b << 16 | a;
}

std::vector<std::uint8_t> zlib_compress(std::span<const std::uint8_t> data)
{
    std::vector<std::uint8_t> out;
    out.reserve(data.size() / 8 + 64);
    out.push_back(0x78); // deflate, 32K window
    out.push_back(0x01); // fastest-level flag; (0x78 << 8 | 0x01) % 31 == 0

    BitWriter w(out);
    w.bits(1, 1); // BFINAL
    w.bits(1, 2); // BTYPE = fixed Huffman

    const std::size_t n = data.size();
    std::vector<std::int64_t> head(std::size_t{1} << hash_bits, -1);
    std::vector<std::int64_t> prev(window_size, -1);

    auto insert = [&](std::size_t pos) {
        if (pos + min_match > n)
            return;
        const auto h = hash3(&data[pos]);
        prev[pos & (window_size - 1)] = head[h];
        head[h] = static_cast<std::int64_t>(pos);
    };

    std::size_t i = 0;
    while (i < n) {
        std::size_t best_len = 0, best_dist = 0;
        if (i + min_match <= n) {
            const std::size_t limit = std::min(max_match, n - i);
            std::int64_t cand = head[hash3(&data[i])];
            for (std::size_t chain = 0; cand >= 0 && chain < max_chain; ++chain) {
                const auto c = static_cast<std::size_t>(cand);
                const std::size_t dist = i - c;
                if (dist > window_size)
                    break;
                std::size_t len = 0;
                while (len < limit && data[c + len] == data[i + len])
                    ++len;
                if (len > best_len) {
                    best_len = len;
                    best_dist = dist;
                    if (len == limit)
                        break;
                }
                const auto next = prev[c & (window_size - 1)];
                // Slots are recycled once the window wraps; stop at stale links.
                if (next >= cand)
                    break;
                cand = next;
            }
        }

        if (best_len >= min_match) {
            put_match(w, best_len, best_dist);
            for (std::size_t k = 0; k < best_len; ++k)
                insert(i + k);
            i += best_len;
        } else {
            put_symbol(w, data[i]);
            insert(i);
            ++i;
        }
    }
    put_symbol(w, 256);
    w.flush();
    put_be32(out, adler32(data));
    return out;
}

std::vector<std::uint8_t>
encode_rgb(std::uint32_t width, std::uint32_t height, std::span<const std::uint8_t> rgb,
           const std::vector<std::pair<std::string, std::string>>& text)
{
    const std::size_t stride = static_cast<std::size_t>(width) * 3;
    if (rgb.size() != stride * height)
        throw ConfigError("pixel buffer size does not match " + std::to_string(width) + "x"
                          + std::to_string(height));

    std::vector<std::uint8_t> out = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

    std::vector<std::uint8_t> ihdr;
    put_be32(ihdr, width);
    put_be32(ihdr, height);
    ihdr.insert(ihdr.end(), {8, 2, 0, 0, 0}); // depth 8, truecolor, deflate, filter 0, no interlace
    put_chunk(out, "IHDR", ihdr);

    for (const auto& [keyword, value] : text) {
        std::vector<std::uint8_t> payload(keyword.begin(), keyword.end());
        payload.push_back(0);
        payload.insert(payload.end(), value.begin(), value.end());
        put_chunk(out, "tEXt", payload);
    }

    std::vector<std::uint8_t> raw;
    raw.reserve((stride + 1) * height);
    for (std::uint32_t y = 0; y < height; ++y) {
        raw.push_back(0); // filter: none
        const auto row = rgb.subspan(y * stride, stride);
        raw.insert(raw.end(), row.begin(), row.end());
    }
    put_chunk(out, "IDAT", zlib_compress(raw));
    put_chunk(out, "IEND", {});
    return out;
}

} // namespace byteaxis::png
