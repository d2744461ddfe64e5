#pragma once

#include <string>

namespace nlgap {

/// Whole-file helpers; both throw IoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace nlgap
