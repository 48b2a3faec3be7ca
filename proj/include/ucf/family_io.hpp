#pragma once

// Family text format.
//
//   n=<int>
//   {}          <- the empty set
//   1,2,3       <- ascending 1-based labels, one member per line
//
// Blank lines and lines starting with '#' are ignored. Repeated members are a
// parse error.

#include <filesystem>
#include <string>
#include <string_view>

#include "ucf/family.hpp"

namespace ucf {

/// Throws ParseError carrying the offending line number.
SetFamily parse_family(std::string_view text);

/// Reads and parses a file; I/O failures surface as ParseError on line 0.
SetFamily read_family_file(const std::filesystem::path& path);

/// "{}" or "1,2,3".
std::string format_member(SubsetMask a);

/// Full text form, newline-terminated, members in storage order.
std::string format_family(const SetFamily& f);

/// Single-line form "n=6: {} 1,2,3 1,2,3,4,5,6" used in key listings.
std::string format_family_inline(const SetFamily& f);

} // namespace ucf
