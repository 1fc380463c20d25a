// Copyright 2026 The binstylo authors.  See LICENSE file for terms.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

// Whitespace-separated tokens; empty tokens are never produced.
std::vector<std::string_view> split_ws(std::string_view s);

// Split on a single separator, keeping empty fields.
std::vector<std::string_view> split(std::string_view s, char sep);

std::string_view trim(std::string_view s);

std::string lower(std::string_view s);

// Strict signed integer parse. Accepts an optional leading '-' and either
// decimal digits or a 0x-prefixed hex literal. Anything else -> nullopt.
std::optional<long long> parse_int(std::string_view s);

// Locale-independent fixed-point formatting.
std::string fmt_double(double v, int precision);

// Escapes '%', tab, CR and LF so a value can live in a tab-separated line.
std::string percent_escape(std::string_view s);
std::string percent_unescape(std::string_view s);

uint64_t fnv1a64(std::string_view data, uint64_t h = 0xcbf29ce484222325ull);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);
bool file_exists(const std::string& path);

// Runs fn(0..n-1) on up to `threads` workers (0 = hardware concurrency).
// Tasks must write only to their own slots; iteration order is unspecified.
void parallel_for(size_t n, int threads, const std::function<void(size_t)>& fn);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace stylo
