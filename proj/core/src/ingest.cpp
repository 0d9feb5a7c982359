#include "byteaxis/ingest.hpp"

#include "byteaxis/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace byteaxis {

namespace {

std::string_view trim(std::string_view s) noexcept
{
    constexpr std::string_view ws = " \t\r\n\v\f";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

bool skippable(std::string_view line) noexcept
{
    const auto t = trim(line);
    return t.empty() || t.front() == '#';
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// RFC 4180 field splitting: double-quoted fields may contain commas and
// doubled quotes.
std::vector<std::string> split_csv(std::string_view line)
{
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    fields.back() += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    if (quoted)
        throw Error("unterminated quoted field");
    return fields;
}

std::vector<std::string> split_header(std::string_view line)
{
    auto fields = split_csv(line);
    for (auto& f : fields)
        f = lower(trim(f));
    return fields;
}

std::uint64_t parse_weight(std::string_view text)
{
    const auto t = trim(text);
    std::uint64_t value = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || value == 0)
        throw ParseError("invalid count '" + std::string(t) + "': expected a positive integer",
                         std::string(t));
    return value;
}

// Drives the line loop shared by the loaders: skips blanks/comments, hands
// the first data line to `on_header` when set, and applies strict/lenient
// error policy around `on_row`.
template <typename Record, typename HeaderFn, typename RowFn>
LoadResult<Record> load_lines(std::istream& source, const LoadOptions& options,
                              HeaderFn&& on_header, RowFn&& on_row)
{
    LoadResult<Record> result;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(source, line)) {
        ++line_no;
        if (skippable(line))
            continue;
        if (!header_seen) {
            header_seen = true;
            if (on_header(line, line_no))
                continue;
        }
        try {
            if (auto rec = on_row(line, result.stats)) {
                result.records.push_back(std::move(*rec));
                result.lines.push_back(line_no);
            }
        } catch (const Error& e) {
            if (options.strict)
                throw LineError(line_no, e.what());
            ++result.stats.malformed;
            result.stats.warnings.push_back("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    result.stats.records = result.records.size();
    return result;
}

} // namespace

LoadResult<MacObservation> load_mac_observations(std::istream& source, MacFormat format,
                                                 const LoadOptions& options)
{
    bool has_count_column = false;

    auto keep = [&](MacObservation obs, LoadStats& stats) -> std::optional<MacObservation> {
        if (!options.keep_local && is_locally_assigned(obs.mac)) {
            ++stats.dropped_local;
            return std::nullopt;
        }
        return obs;
    };

    if (format == MacFormat::plain) {
        return load_lines<MacObservation>(
            source, options, [](const std::string&, std::size_t) { return false; },
            [&](const std::string& line, LoadStats& stats) {
                return keep(MacObservation{parse_mac(trim(line)), std::nullopt, 1}, stats);
            });
    }

    auto on_header = [&](const std::string& line, std::size_t line_no) {
        const auto cols = split_header(line);
        if (cols.size() < 2 || cols.size() > 3 || cols[0] != "mac" || cols[1] != "label"
            || (cols.size() == 3 && cols[2] != "count")) {
            throw LineError(line_no, "expected CSV header 'mac,label[,count]'");
        }
        has_count_column = cols.size() == 3;
        return true;
    };

    auto on_row = [&](const std::string& line, LoadStats& stats) {
        const auto fields = split_csv(line);
        const std::size_t max_fields = has_count_column ? 3 : 2;
        if (fields.size() > max_fields) {
            throw Error("expected at most " + std::to_string(max_fields) + " fields, got "
                        + std::to_string(fields.size()));
        }
        MacObservation obs{parse_mac(trim(fields[0])), std::nullopt, 1};
        if (fields.size() > 1) {
            const auto label = trim(fields[1]);
            if (!label.empty())
                obs.label = std::string(label);
        }
        if (fields.size() > 2 && !trim(fields[2]).empty())
            obs.weight = parse_weight(fields[2]);
        return keep(std::move(obs), stats);
    };

    return load_lines<MacObservation>(source, options, on_header, on_row);
}

LoadResult<V6Observation> load_v6_observations(std::istream& source, const LoadOptions& options)
{
    auto on_header = [](const std::string& line, std::size_t line_no) {
        const auto cols = split_header(line);
        if (cols.size() != 2 || cols[0] != "probed" || cols[1] != "responder")
            throw LineError(line_no, "expected CSV header 'probed,responder'");
        return true;
    };

    auto on_row = [](const std::string& line, LoadStats&) -> std::optional<V6Observation> {
        const auto fields = split_csv(line);
        if (fields.size() != 2)
            throw Error("expected 2 fields, got " + std::to_string(fields.size()));

        const auto probed_text = trim(fields[0]);
        Ipv6Prefix probed;
        if (probed_text.find('/') != std::string_view::npos) {
            probed = parse_prefix(probed_text);
            if (probed.length() != 64) {
                throw ParseError("probed prefix '" + std::string(probed_text) + "' is not a /64",
                                 std::string(probed_text));
            }
        } else {
            probed = Ipv6Prefix::truncate(parse_ipv6(probed_text), 64);
        }
        return V6Observation{probed, parse_ipv6(trim(fields[1]))};
    };

    return load_lines<V6Observation>(source, options, on_header, on_row);
}

std::vector<MacObservation> derive_macs_from_v6(const std::vector<Ipv6Address>& addrs)
{
    std::vector<MacObservation> out;
    for (const auto& addr : addrs) {
        if (auto mac = extract_mac_from_eui64(addr))
            out.push_back(MacObservation{*mac, std::nullopt, 1});
    }
    return out;
}

void OuiRegistry::insert(const Oui& oui, std::string org_name)
{
    Oui key{oui.prefix, std::nullopt};
    entries_.insert_or_assign(key, std::move(org_name));
}

std::optional<std::string> OuiRegistry::lookup(const Oui& oui) const
{
    auto it = entries_.find(oui);
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

Oui OuiRegistry::annotate(Oui oui) const
{
    if (auto name = lookup(oui))
        oui.org_name = std::move(name);
    return oui;
}

OuiRegistry load_oui_registry(std::istream& source)
{
    OuiRegistry registry;
    std::string line;
    while (std::getline(source, line)) {
        auto t = trim(line);
        if (t.size() < 8)
            continue;
        Oui oui;
        try {
            oui = parse_oui(t.substr(0, 8));
        } catch (const ParseError&) {
            continue;
        }
        if (t[2] != '-')
            continue;
        auto rest = trim(t.substr(8));
        constexpr std::string_view tag = "(hex)";
        if (rest.substr(0, tag.size()) != tag)
            continue;
        auto org = trim(rest.substr(tag.size()));
        if (org.empty())
            continue;
        registry.insert(oui, std::string(org));
    }
    return registry;
}

namespace {

// Sorts by key once and fills each group in a single pass, which beats
// per-record map lookups when there are many distinct keys.
template <typename Key, typename Record, typename KeyFn>
std::map<Key, std::vector<Record>> group_sorted(const std::vector<Record>& records, KeyFn&& key_of)
{
    std::vector<std::pair<Key, std::size_t>> order;
    order.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
        order.emplace_back(key_of(records[i]), i);
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    std::map<Key, std::vector<Record>> groups;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && order[j].first == order[i].first)
            ++j;
        auto& group = groups.emplace_hint(groups.end(), order[i].first, std::vector<Record>{})->second;
        group.reserve(j - i);
        for (; i < j; ++i)
            group.push_back(records[order[i].second]);
    }
    return groups;
}

} // namespace

std::map<Oui, std::vector<MacObservation>>
group_mac_by_oui(const std::vector<MacObservation>& obs)
{
    return group_sorted<Oui>(obs, [](const MacObservation& o) { return oui_of(o.mac); });
}

std::map<Ipv6Prefix, std::vector<V6Observation>>
group_v6_by_prefix(const std::vector<V6Observation>& obs, int length)
{
    return group_sorted<Ipv6Prefix>(obs, [length](const V6Observation& o) {
        return Ipv6Prefix::truncate(o.probed.base(), length);
    });
}

} // namespace byteaxis
