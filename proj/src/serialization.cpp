#include <istream>
#include <ostream>
#include <string>

#include "vdw/errors.hpp"
#include "vdw/morse.hpp"

namespace vdw {

namespace {

constexpr std::string_view kCriticalHeader = "# critical";

// The empty field stands for the empty face.
Face parse_field(std::string_view text, std::size_t line) {
    while (!text.empty() && (text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    if (text.empty()) return Face{};
    try {
        return parse_face(text);
    } catch (const parse_error& e) {
        throw parse_error(line, e.what());
    }
}

}  // namespace

void write_matching(std::ostream& out, const MorseMatching& matching, const std::vector<Face>& critical) {
    for (const auto& [lower, upper] : matching.pairs) out << to_string(lower) << '\t' << to_string(upper) << '\n';
    out << kCriticalHeader << '\n';
    for (Face f : critical) out << to_string(f) << '\n';
}

ParsedMatching read_matching(std::istream& in) {
    ParsedMatching parsed;
    bool in_critical = false;
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        std::string_view text = raw;
        if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
        if (text.empty()) continue;
        if (text.front() == '#') {
            if (text == kCriticalHeader) {
                if (in_critical) throw parse_error(line, "second '# critical' section");
                in_critical = true;
            }
            continue;
        }
        if (in_critical) {
            if (text.find('\t') != std::string_view::npos) throw parse_error(line, "pair after '# critical'");
            parsed.critical.push_back(parse_field(text, line));
            continue;
        }
        const auto tab = text.find('\t');
        if (tab == std::string_view::npos) throw parse_error(line, "expected 'lower<TAB>upper'");
        if (text.find('\t', tab + 1) != std::string_view::npos) throw parse_error(line, "more than two fields");
        parsed.pairs.push_back({parse_field(text.substr(0, tab), line), parse_field(text.substr(tab + 1), line)});
    }
    return parsed;
}

}  // namespace vdw
