#include "pulseflow/io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "pulseflow/errors.hpp"

namespace pulseflow {

std::string round_trip(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw IoError("round_trip: formatting failed");
  return std::string(buffer, end);
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("ensure_directory: cannot create " + dir.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("write_text_file: cannot open " + path.string());
  out << content;
  if (!out) throw IoError("write_text_file: write failed for " + path.string());
}

} // namespace pulseflow
