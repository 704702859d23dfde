#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace zenolink {

// Round-trip-exact decimal form of v; stable across runs.
std::string format_double(double v);

// Write to <path>.tmp.<pid> then rename (append-free, atomic).
void atomic_write_file(const std::filesystem::path& path, std::string_view content);

// ISO-8601 UTC. Honors SOURCE_DATE_EPOCH so runs can be made byte-identical.
std::string timestamp_string();

} // namespace zenolink
