#ifndef ANONYABE_IO_FILES_HPP
#define ANONYABE_IO_FILES_HPP

#include <filesystem>

#include "anonyabe/algebra/bytes.hpp"

namespace anonyabe {

Bytes read_file(const std::filesystem::path& path);

/// Writes next to the target and renames over it, so readers observe
/// either the old or the new content, never a torn write.
void write_file_atomic(const std::filesystem::path& path, const Bytes& content);
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace anonyabe

#endif
