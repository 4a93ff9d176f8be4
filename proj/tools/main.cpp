#include <iostream>

#include "CLI11.hpp"
#include "k3cone/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Walls, boundary packings and vcd estimates for K3 nef cones"};
  app.set_version_flag("--version", k3cone::kVersion);
  app.require_subcommand(1);

  k3cone::RunConfig cfg;
  std::string out, format;
  const char* help[] = {
      "summary: signature, walls, packing, vcd",  "(-2)-roots up to the height bound",
      "walls of the chamber of the ample class",  "packing certificate, tangency graph, boundary spheres",
      "elliptic fibrations and Mordell-Weil ranks", "virtual cohomological dimension report",
      "boundary picture as svg or json",
  };
  int i = 0;
  for (const char* name : {"analyze", "roots", "walls", "packing", "fibrations", "vcd", "render"}) {
    auto* sub = app.add_subcommand(name, help[i++]);
    sub->add_option("input", cfg.input, "lattice JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--height", cfg.height, "root height bound H")->capture_default_str();
    sub->add_option("--iso-height", cfg.iso_height, "isotropic class height bound")->capture_default_str();
    sub->add_option("--word-bound", cfg.word_bound, "reflection steps when reducing isotropic classes")
        ->capture_default_str();
    sub->add_flag("--assume-cantor", cfg.assume_cantor, "take the limit set to be a Cantor set");
    sub->add_option("--out", out, "write the report here instead of stdout");
    sub->add_option("--format", format, "svg, json or text")->check(CLI::IsMember({"svg", "json", "text"}));
    sub->add_flag("--dump-debug", cfg.dump_debug, "include intermediate data in the report");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  cfg.command = *k3cone::parse_command(app.get_subcommands().front()->get_name());
  if (!out.empty()) cfg.out = out;
  if (!format.empty()) cfg.format = k3cone::parse_format(format);
  return k3cone::run(cfg, std::cout, std::cerr);
}
