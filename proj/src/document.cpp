#include "coursegen/document.hpp"

#include <algorithm>
#include <cctype>

namespace coursegen {

namespace {

bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !is_ident_start(s[0])) return false;
    return std::all_of(s.begin(), s.end(), is_ident_char);
}

bool is_name_ref_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '/' || c == '-';
}

std::string normalize_newlines(std::string_view source) {
    std::string out;
    out.reserve(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) {
        if (source[i] == '\r' && i + 1 < source.size() && source[i + 1] == '\n') continue;
        out += source[i];
    }
    return out;
}

std::string_view trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::size_t count_backslashes_before(std::string_view text, std::size_t pos) {
    std::size_t n = 0;
    while (n < pos && text[pos - 1 - n] == '\\') ++n;
    return n;
}

}  // namespace

bool is_valid_name_ref(std::string_view ref) {
    return !ref.empty() && std::all_of(ref.begin(), ref.end(), is_name_ref_char);
}

const std::string* ParsedDocument::property(std::string_view key) const {
    for (const auto& p : properties) {
        if (p.key == key) return &p.value;
    }
    return nullptr;
}

std::string ParsedDocument::title_or(std::string_view fallback) const {
    const std::string* t = property("title");
    return t ? *t : std::string(fallback);
}

Extraction extract_directives(std::string_view body) {
    Extraction out;
    md::CodeRegions regions = md::scan_code_regions(body);
    std::size_t n = body.size();
    std::size_t i = 0;
    while (i + 1 < n) {
        if (body[i] != '$' || body[i + 1] != '$') {
            ++i;
            continue;
        }
        if (regions.contains(i) || regions.contains(i + 1)) {
            i += 2;
            continue;
        }
        if (count_backslashes_before(body, i) % 2 == 1) {
            i += 2;
            continue;
        }
        std::size_t name_begin = i + 2;
        if (name_begin >= n || !is_ident_start(body[name_begin])) {
            i += 2;  // bare $$ with no name is plain text
            continue;
        }
        std::size_t name_end = name_begin;
        while (name_end < n && is_ident_char(body[name_end])) ++name_end;
        std::string name(body.substr(name_begin, name_end - name_begin));

        if (name != "link_to" && name != "include" && name != "include_topic") {
            out.issues.push_back({DiagCode::UnknownDirective, {i, name_end}, name});
            i = name_end;
            continue;
        }
        std::size_t k = name_end;
        while (k < n && (body[k] == ' ' || body[k] == '\t')) ++k;
        std::size_t target_begin = (k < n && body[k] == ':') ? k + 1 : std::string_view::npos;
        std::size_t target_end = target_begin;
        if (target_begin != std::string_view::npos) {
            while (target_end < n && is_name_ref_char(body[target_end])) ++target_end;
        }
        if (target_begin == std::string_view::npos || target_end == target_begin) {
            out.issues.push_back({DiagCode::MissingTarget, {i, name_end}, name});
            i = name_end;
            continue;
        }
        DirectiveKind kind = name == "link_to" ? DirectiveKind::LinkTo : DirectiveKind::Include;
        out.directives.push_back(
            {kind, std::string(body.substr(target_begin, target_end - target_begin)), {i, target_end}});
        i = target_end;
    }
    return out;
}

ParseResult parse_document(std::string_view source, std::string origin) {
    ParseResult res;
    ParsedDocument& doc = res.doc;
    doc.origin = std::move(origin);

    std::string text = normalize_newlines(source);

    std::size_t body_begin = 0;
    int body_first_line = 1;
    bool header_open = text == "---" || text.rfind("---\n", 0) == 0;
    if (header_open) {
        std::vector<Property> props;
        std::vector<Diagnostic> diags;
        bool terminated = false;
        std::size_t pos = std::min<std::size_t>(4, text.size());
        int line_no = 2;
        while (pos <= text.size()) {
            std::size_t eol = text.find('\n', pos);
            std::size_t end = eol == std::string::npos ? text.size() : eol;
            std::string_view line(text.data() + pos, end - pos);
            if (line == "---") {
                terminated = true;
                body_begin = eol == std::string::npos ? text.size() : eol + 1;
                body_first_line = line_no + 1;
                break;
            }
            if (pos == text.size() && eol == std::string::npos) break;
            std::size_t colon = line.find(':');
            if (colon == std::string_view::npos || !is_identifier(trim(line.substr(0, colon)))) {
                diags.push_back({Severity::Error, DiagCode::MalformedPropertyLine, doc.origin,
                                 line_no, 1,
                                 "header line is not 'key: value': '" + std::string(line) + "'"});
            } else {
                std::string key(trim(line.substr(0, colon)));
                std::string value(trim(line.substr(colon + 1)));
                bool duplicate = std::any_of(props.begin(), props.end(),
                                             [&](const Property& p) { return p.key == key; });
                if (duplicate) {
                    diags.push_back({Severity::Error, DiagCode::DuplicateKey, doc.origin, line_no, 1,
                                     "duplicate header key '" + key + "'; first value kept"});
                } else {
                    props.push_back({std::move(key), std::move(value)});
                }
            }
            if (eol == std::string::npos) break;
            pos = eol + 1;
            ++line_no;
        }
        if (terminated) {
            doc.has_header = true;
            doc.properties = std::move(props);
            res.diagnostics = std::move(diags);
        } else {
            // Unterminated header: fall back to treating everything as body.
            res.diagnostics.push_back({Severity::Error, DiagCode::UnterminatedHeader, doc.origin, 1,
                                       1, "leading '---' has no closing '---'"});
            body_begin = 0;
            body_first_line = 1;
        }
    }

    doc.body = text.substr(body_begin);
    doc.body_first_line = body_first_line;

    Extraction ex = extract_directives(doc.body);
    doc.directives = std::move(ex.directives);
    for (const auto& issue : ex.issues) {
        LineCol lc = locate(doc, issue.span.begin);
        std::string msg = issue.code == DiagCode::UnknownDirective
                              ? "unknown directive '$$" + issue.name + "'"
                              : "directive '$$" + issue.name + "' has no ':<target>'";
        res.diagnostics.push_back(
            {Severity::Warning, issue.code, doc.origin, lc.line, lc.col, std::move(msg)});
    }
    return res;
}

std::string serialize_document(const ParsedDocument& doc) {
    std::string out;
    if (doc.has_header) {
        out += "---\n";
        for (const auto& p : doc.properties) {
            out += p.key;
            out += ':';
            if (!p.value.empty()) {
                out += ' ';
                out += p.value;
            }
            out += '\n';
        }
        out += "---\n";
    }
    out += doc.body;
    return out;
}

LineCol locate(const ParsedDocument& doc, std::size_t body_offset) {
    body_offset = std::min(body_offset, doc.body.size());
    LineCol lc;
    lc.line = doc.body_first_line;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < body_offset; ++i) {
        if (doc.body[i] == '\n') {
            ++lc.line;
            line_start = i + 1;
        }
    }
    lc.col = static_cast<int>(body_offset - line_start) + 1;
    return lc;
}

}  // namespace coursegen
