#include "byteaxis/serialize.hpp"

#include "byteaxis/error.hpp"

#include "json.hpp"

#include <charconv>
#include <sstream>

namespace byteaxis {

using nlohmann::json;

namespace {

constexpr std::string_view csv_header = "y,x,count,responders,labels";

std::string percent_encode(std::string_view s)
{
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (c == '%' || c == ';' || c == '=' || c == ',' || c == '"' || c == '\r' || c == '\n'
            || c == ' ') {
            out += '%';
            out += digits[c >> 4];
            out += digits[c & 0xf];
        } else {
            out += static_cast<char>(c);
        }
    }
    return out;
}

std::string percent_decode(std::string_view s)
{
    auto nibble = [&](char c) {
        if (c >= '0' && c <= '9')
            return c - '0';
        if (c >= 'A' && c <= 'F')
            return c - 'A' + 10;
        if (c >= 'a' && c <= 'f')
            return c - 'a' + 10;
        throw ParseError("bad percent escape in '" + std::string(s) + "'", std::string(s));
    };
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '%') {
            out += s[i];
            continue;
        }
        if (i + 2 >= s.size())
            throw ParseError("truncated percent escape in '" + std::string(s) + "'",
                             std::string(s));
        out += static_cast<char>(nibble(s[i + 1]) << 4 | nibble(s[i + 2]));
        i += 2;
    }
    return out;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    if (s.empty())
        return out;
    std::size_t start = 0;
    while (true) {
        auto end = s.find(sep, start);
        out.push_back(s.substr(start, end == std::string_view::npos ? end : end - start));
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view s, const char* what)
{
    T v{};
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParseError(std::string("invalid ") + what + " '" + std::string(s) + "'",
                         std::string(s));
    return v;
}

CellCoord checked_coord(long long x, long long y)
{
    if (x < 0 || x > 255 || y < 0 || y > 255)
        throw ParseError("cell coordinate out of range", std::to_string(x) + "," + std::to_string(y));
    return {static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)};
}

json base_to_json(const GridBase& base)
{
    json j;
    if (base.kind() == GridBase::Kind::mac_oui) {
        j["kind"] = "mac_oui";
        j["oui"] = base.oui()->to_string();
        if (base.oui()->org_name)
            j["org_name"] = *base.oui()->org_name;
    } else {
        j["kind"] = "v6_prefix";
        j["prefix"] = base.prefix()->to_string();
    }
    return j;
}

GridBase base_from_json(const json& j)
{
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "mac_oui") {
        Oui oui = parse_oui(j.at("oui").get<std::string>());
        if (j.contains("org_name"))
            oui.org_name = j.at("org_name").get<std::string>();
        return GridBase::for_oui(std::move(oui));
    }
    if (kind == "v6_prefix")
        return GridBase::for_prefix(parse_prefix(j.at("prefix").get<std::string>()));
    throw ParseError("unknown grid base kind '" + kind + "'", kind);
}

json report_json(const AllocationReport& r)
{
    json j;
    j["base"] = base_to_json(r.base);
    j["occupancy"] = r.occupancy;
    j["occupied_cells"] = r.occupied_cells;
    j["total"] = r.total;
    j["distinct_keys"] = r.distinct_keys;

    j["bands"] = json::array();
    for (const auto& b : r.bands)
        j["bands"].push_back({{"y_start", b.y_start}, {"y_end", b.y_end}, {"density", b.density}});

    j["unit_histogram"] = json::object();
    for (const auto& [len, n] : r.unit_histogram)
        j["unit_histogram"][std::to_string(len)] = n;

    j["allocations"] = json::array();
    for (const auto& a : r.allocations) {
        json cells = json::array();
        for (const auto& c : a.cell_list)
            cells.push_back({c.y, c.x});
        j["allocations"].push_back({{"responder", a.responder_key},
                                    {"prefix_len", a.prefix_len},
                                    {"cells", a.cells},
                                    {"exact_fill", a.exact_fill},
                                    {"cell_list", std::move(cells)}});
    }
    return j;
}

AllocationReport report_value(const json& j)
{
    AllocationReport r{base_from_json(j.at("base")), {}, {}, {}, 0.0, 0, 0, 0};
    r.occupancy = j.at("occupancy").get<double>();
    r.occupied_cells = j.at("occupied_cells").get<std::uint64_t>();
    r.total = j.at("total").get<std::uint64_t>();
    r.distinct_keys = j.at("distinct_keys").get<std::uint64_t>();
    for (const auto& b : j.at("bands")) {
        r.bands.push_back({b.at("y_start").get<int>(), b.at("y_end").get<int>(),
                           b.at("density").get<double>()});
    }
    for (const auto& [len, n] : j.at("unit_histogram").items())
        r.unit_histogram[parse_number<int>(len, "prefix length")] = n.get<std::uint64_t>();
    for (const auto& a : j.at("allocations")) {
        InferredAllocation ia;
        ia.responder_key = a.at("responder").get<std::string>();
        ia.prefix_len = a.at("prefix_len").get<int>();
        ia.cells = a.at("cells").get<std::uint64_t>();
        ia.exact_fill = a.at("exact_fill").get<bool>();
        for (const auto& c : a.at("cell_list"))
            ia.cell_list.push_back(checked_coord(c.at(1).get<long long>(), c.at(0).get<long long>()));
        r.allocations.push_back(std::move(ia));
    }
    return r;
}

template <typename Fn>
auto with_json_errors(Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what(), "");
    }
}

} // namespace

std::string grid_to_csv(const ByteAxisGrid& grid)
{
    std::ostringstream out;
    out << "# byteaxis grid\n";
    const auto& base = grid.base();
    if (base.kind() == GridBase::Kind::mac_oui) {
        out << "# base: oui " << base.oui()->to_string() << '\n';
        if (base.oui()->org_name)
            out << "# org: " << percent_encode(*base.oui()->org_name) << '\n';
    } else {
        out << "# base: prefix " << base.prefix()->to_string() << '\n';
    }
    out << csv_header << '\n';

    for (const auto& [offset, cell] : grid.cells()) {
        const auto c = CellCoord::from_offset(offset);
        out << int{c.y} << ',' << int{c.x} << ',' << cell.count << ',';
        bool first = true;
        for (const auto& r : cell.responders) {
            out << (first ? "" : ";") << r;
            first = false;
        }
        out << ',';
        first = true;
        for (const auto& [label, n] : cell.labels) {
            out << (first ? "" : ";") << percent_encode(label) << '=' << n;
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

ByteAxisGrid grid_from_csv(std::string_view text)
{
    std::optional<GridBase> base;
    std::optional<std::string> org;
    bool header_seen = false;
    std::optional<ByteAxisGrid> grid;

    std::size_t line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            continue;
        if (line.front() == '#') {
            constexpr std::string_view base_tag = "# base: ", org_tag = "# org: ";
            if (line.starts_with(base_tag)) {
                auto rest = line.substr(base_tag.size());
                if (rest.starts_with("oui "))
                    base = GridBase::for_oui(parse_oui(rest.substr(4)));
                else if (rest.starts_with("prefix "))
                    base = GridBase::for_prefix(parse_prefix(rest.substr(7)));
                else
                    throw LineError(line_no, "unknown base descriptor");
            } else if (line.starts_with(org_tag)) {
                org = percent_decode(line.substr(org_tag.size()));
            }
            continue;
        }
        if (!header_seen) {
            if (line != csv_header)
                throw LineError(line_no, "expected header '" + std::string(csv_header) + "'");
            if (!base)
                throw LineError(line_no, "missing '# base:' line before header");
            if (org && base->kind() == GridBase::Kind::mac_oui) {
                Oui oui = *base->oui();
                oui.org_name = org;
                base = GridBase::for_oui(std::move(oui));
            }
            grid.emplace(*base);
            header_seen = true;
            continue;
        }

        const auto fields = split(line, ',');
        if (fields.size() != 5)
            throw LineError(line_no, "expected 5 fields");
        try {
            const auto coord = checked_coord(parse_number<long long>(fields[1], "x"),
                                             parse_number<long long>(fields[0], "y"));
            Cell delta;
            delta.count = parse_number<std::uint64_t>(fields[2], "count");
            if (delta.count == 0)
                throw ParseError("occupied cell with zero count", std::string(fields[2]));
            for (auto r : split(fields[3], ';'))
                delta.responders.insert(parse_ipv6(r).to_string());
            for (auto entry : split(fields[4], ';')) {
                const auto eq = entry.rfind('=');
                if (eq == std::string_view::npos)
                    throw ParseError("label entry without '='", std::string(entry));
                delta.labels[percent_decode(entry.substr(0, eq))] +=
                    parse_number<std::uint64_t>(entry.substr(eq + 1), "label count");
            }
            grid->accumulate(coord, delta);
        } catch (const ParseError& e) {
            throw LineError(line_no, e.what());
        }
    }
    if (!grid)
        throw ParseError("grid CSV has no header", "");
    return std::move(*grid);
}

std::string grid_to_json(const ByteAxisGrid& grid)
{
    json j;
    j["base"] = base_to_json(grid.base());
    j["total"] = grid.total();
    j["cells"] = json::array();
    for (const auto& [offset, cell] : grid.cells()) {
        const auto c = CellCoord::from_offset(offset);
        json labels = json::object();
        for (const auto& [label, n] : cell.labels)
            labels[label] = n;
        j["cells"].push_back({{"y", c.y},
                              {"x", c.x},
                              {"count", cell.count},
                              {"labels", std::move(labels)},
                              {"responders", cell.responders}});
    }
    return j.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

ByteAxisGrid grid_from_json(std::string_view text)
{
    return with_json_errors([&] {
        const auto j = json::parse(text);
        ByteAxisGrid grid(base_from_json(j.at("base")));
        for (const auto& c : j.at("cells")) {
            Cell delta;
            delta.count = c.at("count").get<std::uint64_t>();
            if (delta.count == 0)
                throw ParseError("cell count must be at least 1", "count");
            for (const auto& [label, n] : c.at("labels").items())
                delta.labels[label] += n.get<std::uint64_t>();
            for (const auto& r : c.at("responders"))
                delta.responders.insert(parse_ipv6(r.get<std::string>()).to_string());
            grid.accumulate(checked_coord(c.at("x").get<long long>(), c.at("y").get<long long>()),
                            delta);
        }
        if (grid.total() != j.at("total").get<std::uint64_t>())
            throw ParseError("grid total does not match its cells", "total");
        return grid;
    });
}

std::string report_to_json(const AllocationReport& report, int indent)
{
    return report_json(report).dump(indent, ' ', false, json::error_handler_t::replace) + "\n";
}

AllocationReport report_from_json(std::string_view text)
{
    return with_json_errors([&] { return report_value(json::parse(text)); });
}

std::string reports_to_json(const std::vector<AllocationReport>& reports, int indent)
{
    json j;
    j["reports"] = json::array();
    for (const auto& r : reports)
        j["reports"].push_back(report_json(r));
    return j.dump(indent, ' ', false, json::error_handler_t::replace) + "\n";
}

std::vector<AllocationReport> reports_from_json(std::string_view text)
{
    return with_json_errors([&] {
        const json doc = json::parse(text);
        std::vector<AllocationReport> out;
        for (const auto& r : doc.at("reports"))
            out.push_back(report_value(r));
        return out;
    });
}

} // namespace byteaxis
