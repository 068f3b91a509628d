#pragma once

// Small text helpers shared by the format readers. Not part of the public API.

#include <string>
#include <string_view>
#include <vector>

namespace hgr::detail {

std::vector<std::string_view> split_ws(std::string_view line);
std::vector<std::string_view> split_on(std::string_view text, char sep);
std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Strict decimal parse of the whole token. Returns false on any trailing garbage.
bool parse_double(std::string_view token, double& out);
bool parse_u64(std::string_view token, unsigned long long& out);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace hgr::detail
