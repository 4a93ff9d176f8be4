#pragma once

// Command-line pipeline: load a lattice, build the chamber and emit one report.
// Exit codes: 0 success, 1 bad input or exhausted search, 2 a certificate failed.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace k3cone {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { analyze, roots, walls, packing, fibrations, vcd, render };
enum class OutputFormat { svg, json, text };

std::optional<Command> parse_command(const std::string& s);
std::optional<OutputFormat> parse_format(const std::string& s);
std::string to_string(Command c);

struct RunConfig {
  std::filesystem::path input;
  Command command = Command::analyze;
  std::int64_t height = 20;
  std::int64_t iso_height = 10;
  std::size_t word_bound = 6;
  bool assume_cantor = false;
  std::optional<std::filesystem::path> out;
  /// Unset: svg for render, json otherwise.
  std::optional<OutputFormat> format;
  bool dump_debug = false;
};

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace k3cone
