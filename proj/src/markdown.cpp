#include "coursegen/markdown.hpp"

#include <algorithm>
#include <cctype>

namespace coursegen::md {

namespace {

bool is_blank(std::string_view line) {
    return line.find_first_not_of(" \t") == std::string_view::npos;
}

// Number of backslashes immediately preceding pos. Odd means pos is escaped.
std::size_t backslash_run_before(std::string_view text, std::size_t pos) {
    std::size_t n = 0;
    while (n < pos && text[pos - 1 - n] == '\\') ++n;
    return n;
}

bool is_escaped(std::string_view text, std::size_t pos) {
    return backslash_run_before(text, pos) % 2 == 1;
}

struct Line {
    Span span;  // newline excluded
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::size_t end = eol == std::string_view::npos ? text.size() : eol;
        lines.push_back({{pos, end}});
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return lines;
}

// Fence marker: up to three spaces of indent, then three or more backticks.
// Returns the tick count, or 0 if the line is not a fence marker.
std::size_t fence_ticks(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size() && i < 3 && line[i] == ' ') ++i;
    std::size_t ticks = 0;
    while (i + ticks < line.size() && line[i + ticks] == '`') ++ticks;
    return ticks >= 3 ? ticks : 0;
}

std::string fence_info(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size() && line[i] == ' ') ++i;
    while (i < line.size() && line[i] == '`') ++i;
    std::size_t start = line.find_first_not_of(" \t", i);
    if (start == std::string_view::npos) return "";
    std::size_t end = start;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '`') ++end;
    return std::string(line.substr(start, end - start));
}

void scan_inline_spans_in_line(std::string_view text, Span line, std::vector<Span>& out) {
    std::size_t i = line.begin;
    while (i < line.end) {
        char c = text[i];
        if (c == '\\') {
            i += 2;  // an escaped char can never open a code span
            continue;
        }
        if (c != '`') {
            ++i;
            continue;
        }
        std::size_t open = i;
        std::size_t run = 0;
        while (i + run < line.end && text[i + run] == '`') ++run;
        // Close at the next backtick run of exactly the same length.
        std::size_t k = open + run;
        bool matched = false;
        while (k < line.end) {
            if (text[k] != '`') {
                ++k;
                continue;
            }
            std::size_t r2 = 0;
            while (k + r2 < line.end && text[k + r2] == '`') ++r2;
            if (r2 == run) {
                out.push_back({open, k + r2});
                i = k + r2;
                matched = true;
                break;
            }
            k += r2;
        }
        if (!matched) i = open + run;
    }
}

}  // namespace

bool CodeRegions::contains(std::size_t pos) const {
    for (const auto& f : fences) {
        if (pos >= f.block.begin && pos < f.block.end) return true;
    }
    for (const auto& s : inline_spans) {
        if (pos >= s.begin && pos < s.end) return true;
    }
    return false;
}

const FenceBlock* CodeRegions::fence_at_line(std::size_t line_begin) const {
    for (const auto& f : fences) {
        if (f.block.begin == line_begin) return &f;
    }
    return nullptr;
}

CodeRegions scan_code_regions(std::string_view text) {
    CodeRegions regions;
    auto lines = split_lines(text);

    bool in_fence = false;
    std::size_t open_begin = 0;
    std::size_t open_ticks = 0;
    std::size_t content_begin = 0;
    std::string open_info;

    for (const auto& line : lines) {
        std::string_view lv = text.substr(line.span.begin, line.span.size());
        std::size_t ticks = fence_ticks(lv);
        if (!in_fence) {
            // An opening fence may carry an info string, but no backticks in it.
            if (ticks > 0 && lv.find('`', lv.find_first_not_of(' ') + ticks) == std::string_view::npos) {
                in_fence = true;
                open_begin = line.span.begin;
                open_ticks = ticks;
                open_info = fence_info(lv);
                content_begin = std::min(line.span.end + 1, text.size());
            } else {
                scan_inline_spans_in_line(text, line.span, regions.inline_spans);
            }
        } else if (ticks >= open_ticks && is_blank(lv.substr(lv.find_first_not_of(' ') + ticks))) {
            regions.fences.push_back(
                {{open_begin, line.span.end}, {content_begin, line.span.begin}, open_info, true});
            in_fence = false;
        }
    }
    if (in_fence) {
        regions.fences.push_back({{open_begin, text.size()},
                                  {std::min(content_begin, text.size()), text.size()},
                                  open_info,
                                  false});
    }
    return regions;
}

std::vector<HeadingInfo> scan_headings(std::string_view text) {
    return scan_headings(text, scan_code_regions(text));
}

std::vector<HeadingInfo> scan_headings(std::string_view text, const CodeRegions& regions) {
    std::vector<HeadingInfo> headings;
    for (const auto& line : split_lines(text)) {
        if (regions.contains(line.span.begin)) continue;
        std::string_view lv = text.substr(line.span.begin, line.span.size());
        std::size_t indent = 0;
        while (indent < lv.size() && indent < 3 && lv[indent] == ' ') ++indent;
        std::size_t hashes = 0;
        while (indent + hashes < lv.size() && lv[indent + hashes] == '#') ++hashes;
        if (hashes < 1 || hashes > 6) continue;
        std::size_t after = indent + hashes;
        if (after < lv.size() && lv[after] != ' ' && lv[after] != '\t') continue;
        // Trim surrounding whitespace and an optional closing hash run.
        std::size_t cbegin = lv.find_first_not_of(" \t", after);
        if (cbegin == std::string_view::npos) cbegin = lv.size();
        std::size_t cend = lv.size();
        while (cend > cbegin && (lv[cend - 1] == ' ' || lv[cend - 1] == '\t')) --cend;
        std::size_t closing = cend;
        while (closing > cbegin && lv[closing - 1] == '#') --closing;
        if (closing < cend && (closing == cbegin || lv[closing - 1] == ' ' || lv[closing - 1] == '\t')) {
            cend = closing;
            while (cend > cbegin && (lv[cend - 1] == ' ' || lv[cend - 1] == '\t')) --cend;
        }
        headings.push_back({static_cast<int>(hashes),
                            line.span,
                            {line.span.begin + cbegin, line.span.begin + cend}});
    }
    return headings;
}

int min_heading_level(const std::vector<HeadingInfo>& headings) {
    int level = 0;
    for (const auto& h : headings) {
        if (level == 0 || h.level < level) level = h.level;
    }
    return level;
}

std::string escape_html(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string escape_attr(std::string_view text) {
    return escape_html(text);
}

namespace {

bool is_punct_ascii(char c) {
    return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

const RawSplice* splice_at(const std::vector<RawSplice>& splices, std::size_t pos) {
    for (const auto& s : splices) {
        if (s.span.begin == pos && s.span.end > s.span.begin) return &s;
    }
    return nullptr;
}

const Span* inline_span_at(const CodeRegions& regions, std::size_t pos) {
    for (const auto& s : regions.inline_spans) {
        if (s.begin == pos) return &s;
    }
    return nullptr;
}

struct InlineRenderer {
    std::string_view text;
    const CodeRegions& regions;
    const std::vector<RawSplice>& splices;

    bool space_before(std::size_t pos) const {
        if (pos == 0) return true;
        char c = text[pos - 1];
        return c == ' ' || c == '\t' || c == '\n';
    }

    bool space_after(std::size_t pos) const {
        if (pos >= text.size()) return true;
        char c = text[pos];
        return c == ' ' || c == '\t' || c == '\n';
    }

    bool alnum_before(std::size_t pos) const {
        return pos > 0 && std::isalnum(static_cast<unsigned char>(text[pos - 1])) != 0;
    }

    bool alnum_at(std::size_t pos) const {
        return pos < text.size() && std::isalnum(static_cast<unsigned char>(text[pos])) != 0;
    }

    // Next position in (from, limit) where `count` copies of `delim` close an
    // emphasis run opened at the given delimiter, or npos.
    std::size_t find_close(char delim, std::size_t count, std::size_t from, std::size_t limit) const {
        std::size_t i = from;
        while (i < limit) {
            char c = text[i];
            if (c == '\\') {
                i += 2;
                continue;
            }
            if (const Span* code = inline_span_at(regions, i)) {
                i = code->end;
                continue;
            }
            if (c == delim) {
                std::size_t run = 0;
                while (i + run < limit && text[i + run] == delim) ++run;
                if (run == count && !space_before(i) && !(delim == '_' && alnum_at(i + run))) return i;
                i += run;
                continue;
            }
            ++i;
        }
        return std::string_view::npos;
    }

    // Matching ']' for a '[' at `open`, bracket-depth aware; npos if none.
    std::size_t find_bracket_close(std::size_t open, std::size_t limit) const {
        int depth = 0;
        std::size_t i = open;
        while (i < limit) {
            char c = text[i];
            if (c == '\\') {
                i += 2;
                continue;
            }
            if (const Span* code = inline_span_at(regions, i)) {
                i = code->end;
                continue;
            }
            if (c == '[') ++depth;
            if (c == ']') {
                if (--depth == 0) return i;
            }
            ++i;
        }
        return std::string_view::npos;
    }

    std::size_t find_paren_close(std::size_t open, std::size_t limit) const {
        int depth = 0;
        std::size_t i = open;
        while (i < limit) {
            char c = text[i];
            if (c == '\\') {
                i += 2;
                continue;
            }
            if (c == '(') ++depth;
            if (c == ')') {
                if (--depth == 0) return i;
            }
            ++i;
        }
        return std::string_view::npos;
    }

    std::string plain(Span range) const {
        std::string out;
        for (std::size_t i = range.begin; i < range.end;) {
            if (text[i] == '\\' && i + 1 < range.end && is_punct_ascii(text[i + 1])) {
                out += text[i + 1];
                i += 2;
                continue;
            }
            out += text[i++];
        }
        return out;
    }

    void render(Span range, std::string& out) const {
        std::size_t i = range.begin;
        while (i < range.end) {
            if (const RawSplice* s = splice_at(splices, i)) {
                if (!regions.contains(i)) {
                    out += s->text;
                    i = std::min(s->span.end, range.end);
                    continue;
                }
            }
            if (const Span* code = inline_span_at(regions, i)) {
                std::size_t ticks = 0;
                while (code->begin + ticks < code->end && text[code->begin + ticks] == '`') ++ticks;
                Span inner{code->begin + ticks, code->end - ticks};
                // CommonMark trims one space pair around otherwise non-blank content.
                std::string_view iv = text.substr(inner.begin, inner.size());
                if (iv.size() >= 2 && iv.front() == ' ' && iv.back() == ' ' &&
                    iv.find_first_not_of(' ') != std::string_view::npos) {
                    inner.begin += 1;
                    inner.end -= 1;
                }
                out += "<code>";
                out += escape_html(text.substr(inner.begin, inner.size()));
                out += "</code>";
                i = code->end;
                continue;
            }
            char c = text[i];
            if (c == '\\' && i + 1 < range.end && is_punct_ascii(text[i + 1])) {
                out += escape_html(text.substr(i + 1, 1));
                i += 2;
                continue;
            }
            if (c == '*' || c == '_') {
                std::size_t run = 0;
                while (i + run < range.end && text[i + run] == c) ++run;
                bool can_open = !space_after(i + run) && !(c == '_' && alnum_before(i));
                if (can_open && run >= 2) {
                    std::size_t close = find_close(c, 2, i + 2, range.end);
                    if (close != std::string_view::npos) {
                        out += "<strong>";
                        render({i + 2, close}, out);
                        out += "</strong>";
                        i = close + 2;
                        continue;
                    }
                }
                if (can_open && run == 1) {
                    std::size_t close = find_close(c, 1, i + 1, range.end);
                    if (close != std::string_view::npos) {
                        out += "<em>";
                        render({i + 1, close}, out);
                        out += "</em>";
                        i = close + 1;
                        continue;
                    }
                }
                out += c;
                ++i;
                continue;
            }
            if (c == '[' || (c == '!' && i + 1 < range.end && text[i + 1] == '[')) {
                bool image = c == '!';
                std::size_t bracket = image ? i + 1 : i;
                std::size_t close = find_bracket_close(bracket, range.end);
                if (close != std::string_view::npos && close + 1 < range.end &&
                    text[close + 1] == '(') {
                    std::size_t paren = find_paren_close(close + 1, range.end);
                    if (paren != std::string_view::npos) {
                        std::string url = plain({close + 2, paren});
                        if (image) {
                            out += "<img src=\"" + escape_attr(url) + "\" alt=\"" +
                                   escape_attr(plain({bracket + 1, close})) + "\">";
                        } else {
                            out += "<a href=\"" + escape_attr(url) + "\">";
                            render({bracket + 1, close}, out);
                            out += "</a>";
                        }
                        i = paren + 1;
                        continue;
                    }
                }
                out += escape_html(std::string_view(&c, 1));
                ++i;
                continue;
            }
            out += escape_html(std::string_view(&c, 1));
            ++i;
        }
    }
};

struct ListMarker {
    bool ordered = false;
    std::size_t content_offset = 0;  // offset of the item text within the line
};

bool parse_list_marker(std::string_view line, ListMarker& marker) {
    std::size_t i = 0;
    while (i < line.size() && i < 3 && line[i] == ' ') ++i;
    if (i < line.size() && (line[i] == '-' || line[i] == '*' || line[i] == '+')) {
        std::size_t after = i + 1;
        if (after < line.size() && (line[after] == ' ' || line[after] == '\t')) {
            marker.ordered = false;
            marker.content_offset = line.find_first_not_of(" \t", after);
            if (marker.content_offset == std::string_view::npos) marker.content_offset = line.size();
            return true;
        }
        return false;
    }
    std::size_t digits = 0;
    while (i + digits < line.size() && std::isdigit(static_cast<unsigned char>(line[i + digits]))) {
        ++digits;
    }
    if (digits >= 1 && digits <= 9 && i + digits < line.size() &&
        (line[i + digits] == '.' || line[i + digits] == ')')) {
        std::size_t after = i + digits + 1;
        if (after < line.size() && (line[after] == ' ' || line[after] == '\t')) {
            marker.ordered = true;
            marker.content_offset = line.find_first_not_of(" \t", after);
            if (marker.content_offset == std::string_view::npos) marker.content_offset = line.size();
            return true;
        }
    }
    return false;
}

}  // namespace

std::string render_html(std::string_view text, const std::vector<RawSplice>& splices) {
    CodeRegions regions = scan_code_regions(text);
    InlineRenderer inl{text, regions, splices};
    auto lines = split_lines(text);
    auto headings = scan_headings(text, regions);

    std::string out;
    std::size_t li = 0;
    while (li < lines.size()) {
        Span line = lines[li].span;
        std::string_view lv = text.substr(line.begin, line.size());

        if (const FenceBlock* fence = regions.fence_at_line(line.begin)) {
            out += "<pre><code";
            if (!fence->info.empty()) out += " class=\"language-" + escape_attr(fence->info) + "\"";
            out += ">";
            out += escape_html(text.substr(fence->content.begin, fence->content.size()));
            out += "</code></pre>\n";
            while (li < lines.size() && lines[li].span.begin < fence->block.end) ++li;
            continue;
        }

        if (is_blank(lv)) {
            ++li;
            continue;
        }

        auto heading = std::find_if(headings.begin(), headings.end(),
                                    [&](const HeadingInfo& h) { return h.line.begin == line.begin; });
        if (heading != headings.end()) {
            std::string tag = "h" + std::to_string(heading->level);
            out += "<" + tag + ">";
            inl.render(heading->content, out);
            out += "</" + tag + ">\n";
            ++li;
            continue;
        }

        ListMarker marker;
        if (parse_list_marker(lv, marker)) {
            bool ordered = marker.ordered;
            out += ordered ? "<ol>\n" : "<ul>\n";
            while (li < lines.size()) {
                Span item = lines[li].span;
                std::string_view iv = text.substr(item.begin, item.size());
                ListMarker m;
                if (regions.fence_at_line(item.begin) || !parse_list_marker(iv, m) ||
                    m.ordered != ordered) {
                    break;
                }
                out += "<li>";
                inl.render({item.begin + m.content_offset, item.end}, out);
                out += "</li>\n";
                ++li;
            }
            out += ordered ? "</ol>\n" : "</ul>\n";
            continue;
        }

        // Paragraph: consecutive lines up to a blank line or another block form.
        std::size_t start = li;
        while (li < lines.size()) {
            Span p = lines[li].span;
            std::string_view pv = text.substr(p.begin, p.size());
            if (regions.fence_at_line(p.begin) || is_blank(pv)) break;
            bool is_heading = std::any_of(headings.begin(), headings.end(), [&](const HeadingInfo& h) {
                return h.line.begin == p.begin;
            });
            ListMarker m;
            if (is_heading || parse_list_marker(pv, m)) break;
            ++li;
        }
        out += "<p>";
        inl.render({lines[start].span.begin, lines[li - 1].span.end}, out);
        out += "</p>\n";
    }
    return out;
}

std::string render_text(std::string_view text, const std::vector<RawSplice>& splices) {
    return render_text(text, {0, text.size()}, splices);
}

std::string render_text(std::string_view text, Span range, const std::vector<RawSplice>& splices) {
    CodeRegions regions = scan_code_regions(text);
    std::string out;
    std::size_t i = range.begin;
    while (i < range.end) {
        if (const RawSplice* s = splice_at(splices, i)) {
            if (!regions.contains(i)) {
                out += s->text;
                i = std::min(s->span.end, range.end);
                continue;
            }
        }
        if (text[i] == '\\' && i + 2 < range.end && text[i + 1] == '$' && text[i + 2] == '$' &&
            !regions.contains(i) && !is_escaped(text, i)) {
            out += "$$";
            i += 3;
            continue;
        }
        out += text[i++];
    }
    return out;
}

}  // namespace coursegen::md
