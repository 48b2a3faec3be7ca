#include "ucf/family_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "ucf/errors.hpp"

namespace ucf {

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

bool parse_int(std::string_view s, int& out) {
    s = trim(s);
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

SubsetMask parse_member(std::string_view line, int n, std::size_t line_no) {
    if (line == "{}") return SubsetMask();
    std::uint32_t bits = 0;
    int previous = 0;
    std::size_t start = 0;
    while (start <= line.size()) {
        const std::size_t comma = line.find(',', start);
        const std::string_view token =
            line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        int label = 0;
        if (!parse_int(token, label))
            throw ParseError(line_no, "expected an element label, got '" + std::string(trim(token)) + "'");
        if (label < 1 || label > n)
            throw ParseError(line_no, "label " + std::to_string(label) + " outside 1.." + std::to_string(n));
        if (label <= previous) throw ParseError(line_no, "labels must be strictly ascending");
        previous = label;
        bits |= std::uint32_t{1} << (label - 1);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return SubsetMask(bits);
}

} // namespace

SetFamily parse_family(std::string_view text) {
    int n = 0;
    std::vector<SubsetMask> members;
    std::map<std::uint32_t, std::size_t> first_seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        const std::string_view raw =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;

        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        if (n == 0) {
            if (line.substr(0, 2) != "n=" || !parse_int(line.substr(2), n))
                throw ParseError(line_no, "expected header 'n=<int>'");
            if (n < kMinGround || n > kMaxGround)
                throw ParseError(line_no, "ground size " + std::to_string(n) + " outside [2, 12]");
            continue;
        }

        const SubsetMask a = parse_member(line, n, line_no);
        const auto [it, inserted] = first_seen.emplace(a.bits(), line_no);
        if (!inserted)
            throw ParseError(line_no, "duplicate member " + format_member(a) + " (first on line " +
                                          std::to_string(it->second) + ")");
        members.push_back(a);
    }
    if (n == 0) throw ParseError(0, "empty input: missing 'n=<int>' header");
    return SetFamily(n, std::move(members));
}

SetFamily read_family_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_family(buf.str());
}

std::string format_member(SubsetMask a) {
    if (a.empty()) return "{}";
    std::string out;
    for (int label : a.labels()) {
        if (!out.empty()) out += ',';
        out += std::to_string(label);
    }
    return out;
}

std::string format_family(const SetFamily& f) {
    std::string out = "n=" + std::to_string(f.ground_size()) + "\n";
    for (SubsetMask a : f) {
        out += format_member(a);
        out += '\n';
    }
    return out;
}

std::string format_family_inline(const SetFamily& f) {
    std::string out = "n=" + std::to_string(f.ground_size()) + ":";
    for (SubsetMask a : f) {
        out += ' ';
        out += format_member(a);
    }
    return out;
}

} // namespace ucf
