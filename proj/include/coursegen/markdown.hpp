#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace coursegen::md {

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;  // exclusive

    std::size_t size() const { return end - begin; }
    bool operator==(const Span&) const = default;
};

struct FenceBlock {
    Span block;        // open fence line through close fence line (or EOF)
    Span content;      // lines between the fences, with their newlines
    std::string info;  // first word of the info string, "" if none
    bool closed = false;
};

// Byte ranges that behave as literal code and are opaque to directive
// recognition: ``` fenced blocks (up to three spaces of indent) and
// backtick code spans matched within a single line.
struct CodeRegions {
    std::vector<FenceBlock> fences;
    std::vector<Span> inline_spans;  // includes the delimiting backticks

    bool contains(std::size_t pos) const;
    const FenceBlock* fence_at_line(std::size_t line_begin) const;
};

CodeRegions scan_code_regions(std::string_view text);

struct HeadingInfo {
    int level = 1;  // 1..6
    Span line;      // whole heading line, newline excluded
    Span content;   // text after the marker, closing #s stripped
};

// ATX headings outside fenced code.
std::vector<HeadingInfo> scan_headings(std::string_view text);
std::vector<HeadingInfo> scan_headings(std::string_view text, const CodeRegions& regions);

// Shallowest level present, 0 when there is no heading.
int min_heading_level(const std::vector<HeadingInfo>& headings);

// Replacement spliced over a byte range of the source while rendering.
// Splices that fall inside code regions are ignored; the source text wins.
struct RawSplice {
    Span span;
    std::string text;  // raw HTML for render_html, plain text for render_text
};

std::string escape_html(std::string_view text);
std::string escape_attr(std::string_view text);

// Renders the supported Markdown subset to HTML: ATX headings, paragraphs,
// flat ordered/unordered lists, fenced code blocks, inline code, emphasis,
// strong, links, images and backslash escapes. Raw HTML in the source is
// escaped rather than passed through.
std::string render_html(std::string_view text, const std::vector<RawSplice>& splices = {});

// Plain-text pass used by the slide backend: applies splices and rewrites
// the \$$ escape to $$ outside code regions; everything else is verbatim.
std::string render_text(std::string_view text, const std::vector<RawSplice>& splices = {});
std::string render_text(std::string_view text, Span range, const std::vector<RawSplice>& splices);

}  // namespace coursegen::md
