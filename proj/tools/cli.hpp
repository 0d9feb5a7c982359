#pragma once

#include "byteaxis/analyze.hpp"
#include "byteaxis/color.hpp"
#include "byteaxis/ingest.hpp"
#include "byteaxis/render.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace byteaxis::cli {

enum ExitCode : int { exit_ok = 0, exit_input = 1, exit_io = 2 };

struct CliConfig
{
    enum class Command { mac, v6, analyze };
    enum class InputKind { automatic, mac, v6 };
    enum class Format { automatic, plain, csv };

    Command command = Command::mac;
    std::vector<std::string> inputs;
    InputKind input_kind = InputKind::automatic;
    Format format = Format::automatic;

    /// "auto" or an OUI / CIDR.
    std::string oui = "auto";
    std::string prefix = "auto";

    std::optional<ColorMode::Kind> color_mode;
    std::optional<std::string> foreground;
    std::optional<std::string> background;
    int scale = 3;
    bool legend = false;
    std::optional<std::uint64_t> hue_seed;

    BandParams bands;

    /// Output path template; "{base}" expands to the grid base slug. The
    /// extension picks the format: .svg, .csv and .json (grid exports),
    /// anything else PNG.
    std::optional<std::string> out;
    std::optional<std::string> report;
    std::optional<std::string> registry;

    bool strict = true;
    bool keep_local = false;
};

/// Parses argv and dispatches. Data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run_mac(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_v6(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_analyze(const CliConfig& cfg, std::ostream& out, std::ostream& err);

/// Replaces every "{base}" in `pattern`.
std::string expand_template(const std::string& pattern, const std::string& base_slug);

} // namespace byteaxis::cli
