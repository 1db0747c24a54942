#pragma once

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace cli_runner {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

// Runs `cli args`, capturing exit code, stdout, and stderr.
inline RunResult run(const std::string& cli, const std::string& args,
                     const std::filesystem::path& tmp_dir) {
  static int counter = 0;
  std::filesystem::create_directories(tmp_dir);
  const std::filesystem::path out_path =
      tmp_dir / ("stdout_" + std::to_string(counter) + ".txt");
  const std::filesystem::path err_path =
      tmp_dir / ("stderr_" + std::to_string(counter) + ".txt");
  ++counter;

  const std::string cmd = cli + " " + args + " >" + out_path.string() + " 2>" +
                          err_path.string();
  const int raw = std::system(cmd.c_str());

  RunResult result;
  if (raw != -1 && WIFEXITED(raw)) result.code = WEXITSTATUS(raw);
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

}  // namespace cli_runner
