#pragma once

#include <filesystem>
#include <string>

namespace pulseflow {

/// Shortest decimal representation that round-trips to the same double.
/// All numeric text emitted by the CLI goes through this, so identical runs
/// produce bit-identical files.
std::string round_trip(double value);

/// Creates the directory (and parents) if needed.
void ensure_directory(const std::filesystem::path& dir);

/// Writes a whole text file, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace pulseflow
