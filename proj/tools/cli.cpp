#include "cli.hpp"

#include "byteaxis/error.hpp"
#include "byteaxis/grid.hpp"
#include "byteaxis/serialize.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace byteaxis::cli {

namespace {

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path)
{
    if (path == "-") {
        // Standard input can only be drained once; later reads reuse it.
        static const std::string stdin_data{std::istreambuf_iterator<char>(std::cin),
                                            std::istreambuf_iterator<char>()};
        return stdin_data;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open input '" + path + "'");
    std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad())
        throw IoError("error reading '" + path + "'");
    return data;
}

void write_output(const std::string& path, std::string_view data, std::ostream& out)
{
    if (path == "-") {
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        out.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw IoError("cannot open output '" + path + "'");
    file.write(data.data(), static_cast<std::streamsize>(data.size()));
    file.close();
    if (!file)
        throw IoError("error writing '" + path + "'");
}

// First line that is neither blank nor a comment, lowercased and trimmed.
std::string first_data_line(std::string_view text)
{
    std::istringstream in{std::string(text.substr(0, 4096))};
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        auto last = line.find_last_not_of(" \t\r");
        std::string t = line.substr(first, last - first + 1);
        for (auto& c : t)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        std::string compact;
        for (char c : t) {
            if (c != ' ' && c != '\t')
                compact += c;
        }
        return compact;
    }
    return {};
}

bool looks_like_v6(std::string_view text)
{
    return first_data_line(text) == "probed,responder";
}

MacFormat mac_format(const CliConfig& cfg, std::string_view text)
{
    switch (cfg.format) {
    case CliConfig::Format::plain: return MacFormat::plain;
    case CliConfig::Format::csv: return MacFormat::csv;
    case CliConfig::Format::automatic: break;
    }
    return first_data_line(text).starts_with("mac,") ? MacFormat::csv : MacFormat::plain;
}

std::string source_name(const std::string& path)
{
    return path == "-" ? "<stdin>" : path;
}

template <typename Record>
struct Loaded
{
    std::vector<Record> records;
    std::vector<std::string> origins; // "file:line" per record
};

void report_stats(const std::string& path, const LoadStats& stats, std::ostream& err)
{
    for (const auto& w : stats.warnings)
        err << "warning: " << source_name(path) << ": " << w << '\n';
    err << source_name(path) << ": " << stats.records << " records";
    if (stats.dropped_local)
        err << ", " << stats.dropped_local << " locally-assigned dropped";
    if (stats.malformed)
        err << ", " << stats.malformed << " malformed skipped";
    err << '\n';
}

template <typename Record, typename LoadFn>
Loaded<Record> load_all(const CliConfig& cfg, std::ostream& err, LoadFn&& load)
{
    if (cfg.inputs.empty())
        throw InputError("no input files given");
    Loaded<Record> all;
    for (const auto& path : cfg.inputs) {
        const std::string text = read_input(path);
        std::istringstream in(text);
        try {
            auto result = load(in, text);
            report_stats(path, result.stats, err);
            for (std::size_t i = 0; i < result.records.size(); ++i) {
                all.records.push_back(std::move(result.records[i]));
                all.origins.push_back(source_name(path) + ":" + std::to_string(result.lines[i]));
            }
        } catch (const LineError& e) {
            throw InputError(source_name(path) + ":" + std::to_string(e.line()) + ": " + e.detail());
        }
    }
    return all;
}

LoadOptions load_options(const CliConfig& cfg)
{
    return LoadOptions{cfg.strict, cfg.keep_local};
}

Loaded<MacObservation> load_mac(const CliConfig& cfg, std::ostream& err)
{
    return load_all<MacObservation>(cfg, err, [&](std::istream& in, std::string_view text) {
        return load_mac_observations(in, mac_format(cfg, text), load_options(cfg));
    });
}

Loaded<V6Observation> load_v6(const CliConfig& cfg, std::ostream& err)
{
    return load_all<V6Observation>(cfg, err, [&](std::istream& in, std::string_view) {
        return load_v6_observations(in, load_options(cfg));
    });
}

std::optional<OuiRegistry> load_registry(const CliConfig& cfg)
{
    if (!cfg.registry)
        return std::nullopt;
    std::istringstream in(read_input(*cfg.registry));
    return load_oui_registry(in);
}

// Explicit-base selections that found no data are returned as empty grids
// only when `keep_empty` is set (analyze reports them; renders skip them).
std::vector<ByteAxisGrid> mac_grids(const CliConfig& cfg, const Loaded<MacObservation>& input,
                                    const std::optional<OuiRegistry>& registry, bool keep_empty,
                                    std::ostream& err)
{
    auto annotate = [&](Oui oui) { return registry ? registry->annotate(std::move(oui)) : oui; };
    auto groups = group_mac_by_oui(input.records);

    std::vector<ByteAxisGrid> grids;
    if (cfg.oui == "auto") {
        for (const auto& [oui, obs] : groups)
            grids.push_back(build_mac_grid(annotate(oui), obs));
        return grids;
    }

    const Oui selected = parse_oui(cfg.oui);
    auto it = groups.find(selected);
    if (it == groups.end()) {
        err << "warning: no observations for OUI " << selected.to_string() << '\n';
        if (keep_empty)
            grids.emplace_back(GridBase::for_oui(annotate(selected)));
        return grids;
    }
    grids.push_back(build_mac_grid(annotate(selected), it->second));
    return grids;
}

std::vector<ByteAxisGrid> v6_grids(const CliConfig& cfg, const Loaded<V6Observation>& input,
                                   bool keep_empty, std::ostream& err)
{
    std::vector<ByteAxisGrid> grids;
    if (cfg.prefix == "auto") {
        for (const auto& [base, obs] : group_v6_by_prefix(input.records, 48))
            grids.push_back(build_v6_grid(base, obs));
        return grids;
    }

    const Ipv6Prefix base = parse_prefix(cfg.prefix);
    require_grid_prefix(base);
    ByteAxisGrid grid(GridBase::for_prefix(base));
    for (std::size_t i = 0; i < input.records.size(); ++i) {
        try {
            grid.add(input.records[i]);
        } catch (const ContainmentError& e) {
            throw InputError(input.origins[i] + ": " + e.what());
        }
    }
    if (grid.total() == 0) {
        err << "warning: no observations inside " << base.to_string() << '\n';
        if (!keep_empty)
            return grids;
    }
    grids.push_back(std::move(grid));
    return grids;
}

std::uint64_t parse_seed(const std::string& text, const char* source)
{
    try {
        std::size_t used = 0;
        const auto v = std::stoull(text, &used, 0);
        if (used != text.size())
            throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InputError(std::string("invalid hue seed '") + text + "' from " + source);
    }
}

std::uint64_t hue_seed(const CliConfig& cfg)
{
    if (cfg.hue_seed)
        return *cfg.hue_seed;
    if (const char* env = std::getenv("BYTEAXIS_HUE_SEED"); env && *env)
        return parse_seed(env, "BYTEAXIS_HUE_SEED");
    return 0;
}

Rgb background(const CliConfig& cfg)
{
    return cfg.background ? parse_rgb(*cfg.background) : black;
}

ColorMode color_mode(const CliConfig& cfg, ColorMode::Kind fallback)
{
    ColorMode mode;
    mode.kind = cfg.color_mode.value_or(fallback);
    if (cfg.foreground)
        mode.foreground = parse_rgb(*cfg.foreground);
    mode.hue_seed = hue_seed(cfg);
    return mode;
}

std::string title_for(const ByteAxisGrid& grid)
{
    std::string title = grid.base().to_string();
    if (const auto& oui = grid.base().oui(); oui && oui->org_name)
        title += " (" + *oui->org_name + ")";
    return title;
}

bool has_extension(const std::string& path, std::string_view ext)
{
    if (path.size() < ext.size())
        return false;
    auto tail = path.substr(path.size() - ext.size());
    for (auto& c : tail)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return tail == ext;
}

void emit_grid(const CliConfig& cfg, const ByteAxisGrid& grid, const ColorMode& mode,
               const std::string& pattern, std::ostream& out, std::ostream& err)
{
    const std::string path = expand_template(pattern, grid.base().slug());
    if (has_extension(path, ".csv")) {
        write_output(path, grid_to_csv(grid), out);
    } else if (has_extension(path, ".json")) {
        write_output(path, grid_to_json(grid), out);
    } else {
        RenderConfig rc;
        rc.background = background(cfg);
        rc.scale = cfg.scale;
        rc.legend = cfg.legend;
        rc.title = title_for(grid);
        const auto colors = assign_colors(grid, mode, rc.background);
        for (const auto& w : colors.warnings)
            err << "warning: " << grid.base().to_string() << ": " << w << '\n';
        if (has_extension(path, ".svg")) {
            write_output(path, render_svg(grid, colors, rc), out);
        } else {
            const auto png = render_png(grid, colors, rc);
            write_output(path,
                         std::string_view(reinterpret_cast<const char*>(png.data()), png.size()),
                         out);
        }
    }
    if (path != "-")
        err << "wrote " << path << '\n';
}

void check_template(const CliConfig& cfg, const std::string& selector, std::size_t grids)
{
    const std::string pattern = cfg.out.value_or("{base}.png");
    if (selector == "auto" && pattern.find("{base}") == std::string::npos && grids > 0)
        throw InputError("--out must contain '{base}' when the base is 'auto'");
}

std::vector<AllocationReport> reports_for(const std::vector<ByteAxisGrid>& grids,
                                          const BandParams& params)
{
    std::vector<AllocationReport> reports;
    reports.reserve(grids.size());
    for (const auto& g : grids)
        reports.push_back(summarize(g, params));
    return reports;
}

void validate_bands(const BandParams& p)
{
    if (!(p.min_row_fill >= 0.0 && p.min_row_fill <= 1.0))
        throw InputError("--min-row-fill must be within [0, 1]");
    if (p.max_gap_rows < 0)
        throw InputError("--max-gap-rows must be non-negative");
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn)
{
    try {
        return fn();
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_io;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }
}

void add_common(CLI::App* sub, CliConfig& cfg)
{
    sub->add_option("inputs", cfg.inputs, "Observation files ('-' for stdin)")->required();
    sub->add_flag("--strict,!--lenient", cfg.strict,
                  "Fail on the first malformed line (default) or skip and count it");
}

void add_render(CLI::App* sub, CliConfig& cfg)
{
    sub->add_option("--color-mode", cfg.color_mode, "mono, categorical or responder")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, ColorMode::Kind>{{"mono", ColorMode::Kind::monochrome},
                                                   {"monochrome", ColorMode::Kind::monochrome},
                                                   {"categorical", ColorMode::Kind::categorical},
                                                   {"responder", ColorMode::Kind::responder}}))
        ->option_text("mono|categorical|responder");
    sub->add_option("--foreground", cfg.foreground, "Monochrome cell color RRGGBB");
    sub->add_option("--background", cfg.background, "Background color RRGGBB (default 000000)");
    sub->add_option("--scale", cfg.scale, "Pixels per cell")->check(CLI::PositiveNumber);
    sub->add_flag("--legend", cfg.legend, "Draw a legend right of the plot");
    sub->add_option("--hue-seed", cfg.hue_seed,
                    "Responder hue seed (overrides BYTEAXIS_HUE_SEED)");
    sub->add_option("--out", cfg.out,
                    "Output path template with {base}; .png, .svg, .csv or .json");
    sub->add_option("--report", cfg.report, "Also write the allocation report JSON here");
}

void add_mac_selection(CLI::App* sub, CliConfig& cfg)
{
    sub->add_option("--format", cfg.format, "plain, csv or auto")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, CliConfig::Format>{{"auto", CliConfig::Format::automatic},
                                                     {"plain", CliConfig::Format::plain},
                                                     {"csv", CliConfig::Format::csv}}))
        ->option_text("auto|plain|csv");
    sub->add_option("--oui", cfg.oui, "OUI XX:XX:XX or 'auto' for one grid per OUI");
    sub->add_option("--registry", cfg.registry, "IEEE oui.txt for organization names");
    sub->add_flag("--keep-local", cfg.keep_local, "Keep locally-assigned MACs");
}

void add_bands(CLI::App* sub, CliConfig& cfg)
{
    sub->add_option("--min-row-fill", cfg.bands.min_row_fill,
                    "Fraction of a row that must be occupied for band detection");
    sub->add_option("--max-gap-rows", cfg.bands.max_gap_rows,
                    "Inactive rows bridged inside one band");
}

} // namespace

std::string expand_template(const std::string& pattern, const std::string& base_slug)
{
    std::string out = pattern;
    constexpr std::string_view tag = "{base}";
    for (auto pos = out.find(tag); pos != std::string::npos;
         pos = out.find(tag, pos + base_slug.size()))
        out.replace(pos, tag.size(), base_slug);
    return out;
}

int run_mac(const CliConfig& cfg, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        validate_bands(cfg.bands);
        const auto registry = load_registry(cfg);
        const auto input = load_mac(cfg, err);
        const auto mode = color_mode(cfg, ColorMode::Kind::monochrome);
        const auto grids = mac_grids(cfg, input, registry, false, err);
        check_template(cfg, cfg.oui, grids.size());
        const std::string pattern = cfg.out.value_or("{base}.png");
        for (const auto& g : grids)
            emit_grid(cfg, g, mode, pattern, out, err);
        if (cfg.report)
            write_output(*cfg.report, reports_to_json(reports_for(grids, cfg.bands)), out);
        return exit_ok;
    });
}

int run_v6(const CliConfig& cfg, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const auto input = load_v6(cfg, err);
        const auto mode = color_mode(cfg, ColorMode::Kind::responder);
        const auto grids = v6_grids(cfg, input, false, err);
        check_template(cfg, cfg.prefix, grids.size());
        const std::string pattern = cfg.out.value_or("{base}.png");
        for (const auto& g : grids)
            emit_grid(cfg, g, mode, pattern, out, err);
        if (cfg.report)
            write_output(*cfg.report, reports_to_json(reports_for(grids, cfg.bands)), out);
        return exit_ok;
    });
}

int run_analyze(const CliConfig& cfg, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        validate_bands(cfg.bands);
        auto kind = cfg.input_kind;
        if (kind == CliConfig::InputKind::automatic) {
            if (cfg.prefix != "auto")
                kind = CliConfig::InputKind::v6;
            else if (cfg.oui != "auto")
                kind = CliConfig::InputKind::mac;
            else
                kind = !cfg.inputs.empty() && looks_like_v6(read_input(cfg.inputs.front()))
                           ? CliConfig::InputKind::v6
                           : CliConfig::InputKind::mac;
        }

        std::vector<ByteAxisGrid> grids;
        if (kind == CliConfig::InputKind::v6) {
            grids = v6_grids(cfg, load_v6(cfg, err), true, err);
        } else {
            const auto registry = load_registry(cfg);
            grids = mac_grids(cfg, load_mac(cfg, err), registry, true, err);
        }
        write_output(cfg.out.value_or("-"), reports_to_json(reports_for(grids, cfg.bands)), out);
        return exit_ok;
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CliConfig cfg;
    CLI::App app{"Byte-axis plots of MAC and IPv6 address allocations", "byteaxis"};
    app.require_subcommand(1);

    auto* mac = app.add_subcommand("mac", "Plot MAC observations, one grid per OUI");
    add_common(mac, cfg);
    add_mac_selection(mac, cfg);
    add_render(mac, cfg);
    add_bands(mac, cfg);

    auto* v6 = app.add_subcommand("v6", "Plot IPv6 probe responses, one grid per base prefix");
    add_common(v6, cfg);
    v6->add_option("--prefix", cfg.prefix, "Base prefix CIDR or 'auto' for one grid per /48");
    add_render(v6, cfg);

    auto* analyze = app.add_subcommand("analyze", "Write allocation reports as JSON");
    add_common(analyze, cfg);
    add_mac_selection(analyze, cfg);
    analyze->add_option("--prefix", cfg.prefix, "Base prefix CIDR or 'auto' (IPv6 inputs)");
    analyze->add_option("--kind", cfg.input_kind, "Input kind: auto, mac or v6")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, CliConfig::InputKind>{{"auto", CliConfig::InputKind::automatic},
                                                        {"mac", CliConfig::InputKind::mac},
                                                        {"v6", CliConfig::InputKind::v6}}))
        ->option_text("auto|mac|v6");
    analyze->add_option("--out", cfg.out, "Report path (default: standard output)");
    add_bands(analyze, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return exit_ok;
        }
        app.exit(e, err, err);
        return exit_input;
    }

    if (mac->parsed()) {
        cfg.command = CliConfig::Command::mac;
        return run_mac(cfg, out, err);
    }
    if (v6->parsed()) {
        cfg.command = CliConfig::Command::v6;
        return run_v6(cfg, out, err);
    }
    cfg.command = CliConfig::Command::analyze;
    return run_analyze(cfg, out, err);
}

} // namespace byteaxis::cli
