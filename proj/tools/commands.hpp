#pragma once

// Subcommands of the hydrolim executable. Each returns the process exit code:
// 0 success, 1 usage or configuration error, 2 numerical divergence.

#include <filesystem>
#include <iosfwd>
#include <string>

namespace hydrolim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitDiverged = 2;

int cmd_run(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::filesystem::path& config, std::ostream& out, std::ostream& err);
/// fault: "" or "broken-partition".
int cmd_check(const std::string& fault, std::ostream& out, std::ostream& err);
int cmd_besov(const std::filesystem::path& field, double s, std::ostream& out,
              std::ostream& err);

}  // namespace hydrolim::cli
