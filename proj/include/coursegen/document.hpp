#pragma once

#include "coursegen/diagnostics.hpp"
#include "coursegen/markdown.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace coursegen {

enum class DirectiveKind { LinkTo, Include };

// One $$link_to / $$include occurrence. The span covers the leading "$$"
// through the last target character, as byte offsets into the owning body.
// $$include_topic is an accepted alias and parses as Include.
struct DirectiveNode {
    DirectiveKind kind = DirectiveKind::LinkTo;
    std::string target;
    md::Span span;

    bool operator==(const DirectiveNode&) const = default;
};

struct Property {
    std::string key;
    std::string value;

    bool operator==(const Property&) const = default;
};

struct ParsedDocument {
    std::string origin;                // display path; not part of equality
    bool has_header = false;           // a "---" delimited block was present
    std::vector<Property> properties;  // declaration order
    std::string body;                  // raw body text, LF newlines
    std::vector<DirectiveNode> directives;
    int body_first_line = 1;           // 1-based source line where the body starts

    const std::string* property(std::string_view key) const;
    std::string title_or(std::string_view fallback) const;

    bool operator==(const ParsedDocument& other) const {
        return has_header == other.has_header && properties == other.properties &&
               body == other.body && directives == other.directives;
    }
};

// Non-fatal findings from the directive scanner.
struct ExtractIssue {
    DiagCode code = DiagCode::UnknownDirective;  // or MissingTarget
    md::Span span;
    std::string name;  // the directive name as written

    bool operator==(const ExtractIssue&) const = default;
};

struct Extraction {
    std::vector<DirectiveNode> directives;
    std::vector<ExtractIssue> issues;
};

// Scans for $$link_to / $$include / $$include_topic outside code regions.
// A \$$ with an active backslash never starts a directive.
Extraction extract_directives(std::string_view body);

struct ParseResult {
    ParsedDocument doc;
    std::vector<Diagnostic> diagnostics;
};

// Header format: a first line equal to "---", then "key: value" lines,
// then a line equal to "---"; everything after is the body. Sources with
// no leading "---" are all body. CRLF input is normalized to LF.
// Malformed input never aborts; problems come back as diagnostics and the
// document is filled in best-effort.
ParseResult parse_document(std::string_view source, std::string origin);

// Inverse of parse_document on canonically formatted sources:
// serialize(parse(s)) == s byte-for-byte, and parse(serialize(d)) == d.
std::string serialize_document(const ParsedDocument& doc);

struct LineCol {
    int line = 1;
    int col = 1;
};

// Source coordinates (1-based) of a byte offset into the body.
LineCol locate(const ParsedDocument& doc, std::size_t body_offset);

bool is_valid_name_ref(std::string_view ref);

}  // namespace coursegen
