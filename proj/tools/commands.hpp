#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace wirl::cli {

namespace fs = std::filesystem;

struct GenerateOptions {
  fs::path spec;
  fs::path phi0;
  fs::path out;
  std::uint64_t seed = 0;
  double tie_tol = 0.0;
};

struct TrainOptions {
  fs::path data_dir;
  fs::path feasible;
  fs::path config;
  fs::path out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::optional<double> tie_tol;
  double eps = 1e-2;  // bound used for gap_report.json when target_eps is unset
};

struct WassersteinOptions {
  fs::path a;
  fs::path b;
};

struct VerifyOptions {
  fs::path data_dir;
  fs::path manifest;
  fs::path run_dir;
  double eps = 1e-2;
  std::optional<double> tie_tol;
  std::optional<fs::path> report;
};

// Each command throws wirl::Error on failure; run() maps it to an exit code.
void cmd_generate(const GenerateOptions& opt, std::ostream& out);
void cmd_train(const TrainOptions& opt, std::ostream& out, std::ostream& err);
void cmd_wasserstein(const WassersteinOptions& opt, std::ostream& out);
void cmd_verify(const VerifyOptions& opt, std::ostream& out);

/// Parses argv, dispatches, and returns the process exit code:
/// 0 ok, 2 validation, 3 theorem violation, 4 I/O.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace wirl::cli
