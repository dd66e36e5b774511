#include "adl/backend/emit.hpp"

#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>

#include "adl/meta/class_id.hpp"

namespace adl::backend {

namespace {

constexpr std::string_view kBegin = "// <<adl:user-begin ";
constexpr std::string_view kEnd = "// <<adl:user-end ";

struct Marker {
    bool begin = false;
    std::string name;
    std::uint32_t hash = 0;
};

std::string_view trim_left(std::string_view s)
{
    std::size_t i = s.find_first_not_of(" \t");
    return i == std::string_view::npos ? std::string_view{} : s.substr(i);
}

[[noreturn]] void bad(std::size_t line, const std::string& what)
{
    throw std::invalid_argument("line " + std::to_string(line) + ": " + what);
}

std::optional<Marker> parse_marker(std::string_view line, std::size_t lineNo)
{
    std::string_view s = trim_left(line);
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    bool begin = s.substr(0, kBegin.size()) == kBegin;
    bool end = s.substr(0, kEnd.size()) == kEnd;
    if (!begin && !end) {
        if (s.find("<<adl:user-") != std::string_view::npos) {
            bad(lineNo, "unrecognized user-region marker");
        }
        return std::nullopt;
    }
    s.remove_prefix(begin ? kBegin.size() : kEnd.size());
    if (s.size() < 2 || s.substr(s.size() - 2) != ">>") {
        bad(lineNo, "unterminated user-region marker");
    }
    s.remove_suffix(2);
    Marker m;
    m.begin = begin;
    if (begin) {
        std::size_t sp = s.rfind(" hash=");
        if (sp == std::string_view::npos || s.size() - sp != 14) {
            bad(lineNo, "user-region marker without a hash");
        }
        unsigned value = 0;
        if (std::sscanf(std::string(s.substr(sp + 6)).c_str(), "%8x", &value) != 1) {
            bad(lineNo, "user-region marker with a malformed hash");
        }
        m.hash = value;
        s = s.substr(0, sp);
    }
    if (s.empty() || s.find(' ') != std::string_view::npos) {
        bad(lineNo, "malformed user-region name");
    }
    m.name = std::string(s);
    return m;
}

std::string hash_hex(std::uint32_t h)
{
    char buf[12];
    std::snprintf(buf, sizeof buf, "%08x", h);
    return buf;
}

/// Splits text into lines that keep their terminators.
std::vector<std::string_view> lines_of(std::string_view text)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        std::size_t stop = nl == std::string_view::npos ? text.size() : nl + 1;
        out.push_back(text.substr(start, stop - start));
        start = stop;
    }
    return out;
}

} // namespace

std::vector<UserRegion> scan_user_regions(std::string_view text)
{
    std::vector<UserRegion> regions;
    std::optional<UserRegion> open;
    std::size_t lineNo = 0;
    for (std::string_view line : lines_of(text)) {
        ++lineNo;
        auto m = parse_marker(line, lineNo);
        if (!m) {
            if (open) {
                open->body.append(line);
            }
            continue;
        }
        if (m->begin) {
            if (open) {
                bad(lineNo, "user region '" + m->name + "' opened inside '" + open->name + "'");
            }
            for (const auto& r : regions) {
                if (r.name == m->name) {
                    bad(lineNo, "user region '" + m->name + "' appears twice");
                }
            }
            open = UserRegion{m->name, m->hash, {}};
        } else {
            if (!open || open->name != m->name) {
                bad(lineNo, "user region end '" + m->name + "' does not match an open region");
            }
            regions.push_back(std::move(*open));
            open.reset();
        }
    }
    if (open) {
        bad(lineNo, "user region '" + open->name + "' is never closed");
    }
    return regions;
}

std::string user_region(std::string_view name, std::string_view body, std::string_view indent)
{
    std::string out;
    out.append(indent).append(kBegin).append(name);
    out += " hash=" + hash_hex(meta::fnv1a32(body)) + ">>\n";
    out.append(body);
    out.append(indent).append(kEnd).append(name).append(">>\n");
    return out;
}

MergeResult merge_user_regions(std::string_view existing, std::string_view generated)
{
    std::map<std::string, std::string> edited;
    for (auto& r : scan_user_regions(existing)) {
        if (meta::fnv1a32(r.body) != r.hash) {
            edited.emplace(r.name, std::move(r.body));
        }
    }
    scan_user_regions(generated);

    MergeResult out;
    bool skipping = false;
    std::size_t lineNo = 0;
    for (std::string_view line : lines_of(generated)) {
        ++lineNo;
        auto m = parse_marker(line, lineNo);
        if (m && m->begin) {
            out.text.append(line);
            auto it = edited.find(m->name);
            if (it != edited.end()) {
                out.text.append(it->second);
                skipping = true;
                edited.erase(it);
            }
            continue;
        }
        if (m) {
            skipping = false;
        }
        if (!skipping) {
            out.text.append(line);
        }
    }
    for (const auto& [name, body] : edited) {
        out.warnings.push_back("edited user region '" + name +
                               "' has no place in the regenerated file and was dropped");
    }
    return out;
}

} // namespace adl::backend
