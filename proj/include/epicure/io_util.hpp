#ifndef EPICURE_IO_UTIL_HPP
#define EPICURE_IO_UTIL_HPP

#include <filesystem>
#include <string>

namespace epicure {

/// Format a double with 12 significant digits, '.' decimal separator.
std::string fmt_sig(double x, int digits = 12);

/// Write content to path via a temp file in the same directory plus rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

}  // namespace epicure

#endif
