#include <CLI11.hpp>

#include <iostream>

#include "aniso/error.hpp"
#include "commands.hpp"

namespace {

int exit_code(aniso::ErrorKind kind) {
  switch (kind) {
    case aniso::ErrorKind::usage: return 2;
    case aniso::ErrorKind::io: return 3;
    case aniso::ErrorKind::precondition:
    case aniso::ErrorKind::structural:
    case aniso::ErrorKind::range: return 4;
    case aniso::ErrorKind::numerical: return 5;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic Besov analysis and Navier-Stokes experiments"};
  app.require_subcommand(1);
  std::string config;
  std::string out = ".";
  std::uint64_t seed = 0;

  using Handler = int (*)(aniso::cli::RunConfig&);
  const std::pair<const char*, Handler> commands[] = {
      {"lp-analyze", aniso::cli::cmd_lp_analyze},     {"besov-norm", aniso::cli::cmd_besov_norm},
      {"profile-extract", aniso::cli::cmd_profile_extract}, {"ns-solve", aniso::cli::cmd_ns_solve},
      {"make-corpus", aniso::cli::cmd_make_corpus},
  };
  const char* help[] = {
      "Block energies and oscillation profile of a field or sequence",
      "Anisotropic Besov norm, dyadic or heat-kernel form",
      "Profile decomposition of a sequence",
      "Navier-Stokes runs: plain, perturbed or gate",
      "Synthetic fields and sequences",
  };
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->add_option("--config", config, "key = value parameter file");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--seed", seed, "seed for randomized generation");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (std::size_t i = 0; i < std::size(commands); ++i) {
    if (!app.got_subcommand(commands[i].first)) continue;
    try {
      aniso::cli::RunConfig cfg(commands[i].first, out, seed);
      if (!config.empty()) cfg.load(config);
      return commands[i].second(cfg);
    } catch (const aniso::Error& e) {
      std::cerr << "error (" << aniso::to_string(e.kind()) << "): " << e.what() << "\n";
      return exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
      std::cerr << "error (io): " << e.what() << "\n";
      return 3;
    }
  }
  return 2;
}
