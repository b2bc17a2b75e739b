#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace aekg::text {

std::string_view trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);
std::string to_upper_ascii(std::string_view s);
bool iequals(std::string_view a, std::string_view b);

// Uppercase, trimmed, runs of ASCII whitespace collapsed to one space.
// This is the identity used for Drug, AdverseEvent, Symptom and Vaccine nodes.
std::string normalize_name(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

bool is_valid_utf8(std::string_view s);

enum class SingleByteEncoding { latin1, windows1252 };

// Transcodes a single-byte encoded string to UTF-8.
std::string to_utf8(std::string_view s, SingleByteEncoding from);

}  // namespace aekg::text
