#pragma once

// Resumable campaign log. One line per completed top-level subtree:
//
//   subtree=<root-mask-list> count=<int> [key=value ...]
//
// The first line is a '#' header naming the run configuration; a log is only
// resumed by a run with the identical header.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ucf {

struct CheckpointEntry {
    std::string subtree;
    std::uint64_t count = 0;
    /// Extra key=value fields in write order; values contain no spaces.
    std::vector<std::pair<std::string, std::string>> fields;

    /// Value of an extra field, empty when absent.
    std::string field(std::string_view key) const;
};

std::string format_checkpoint_entry(const CheckpointEntry& e);

/// Throws ParseError with the given line number.
CheckpointEntry parse_checkpoint_entry(std::string_view line, std::size_t line_no);

class CheckpointFile {
public:
    /// Opens or creates the log. An existing file must start with `header`
    /// (PreconditionViolation otherwise); its entries become completed().
    CheckpointFile(std::filesystem::path path, std::string header);

    const std::map<std::string, CheckpointEntry>& completed() const { return completed_; }

    /// Appends and flushes one entry. Safe to call from several threads.
    void record(const CheckpointEntry& e);

private:
    std::filesystem::path path_;
    std::map<std::string, CheckpointEntry> completed_;
    std::ofstream out_;
    std::mutex mutex_;
};

} // namespace ucf
