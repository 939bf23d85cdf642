#include "coursegen/diagnostics.hpp"

#include <algorithm>
#include <ostream>
#include <tuple>

namespace coursegen {

const char* to_string(DiagCode code) {
    switch (code) {
        case DiagCode::UnterminatedHeader: return "UnterminatedHeader";
        case DiagCode::DuplicateKey: return "DuplicateKey";
        case DiagCode::MalformedPropertyLine: return "MalformedPropertyLine";
        case DiagCode::UnknownDirective: return "UnknownDirective";
        case DiagCode::MissingTarget: return "MissingTarget";
        case DiagCode::BrokenLink: return "BrokenLink";
        case DiagCode::BrokenInclude: return "BrokenInclude";
        case DiagCode::AmbiguousRef: return "AmbiguousRef";
        case DiagCode::IncludeCycle: return "IncludeCycle";
        case DiagCode::DepthExceeded: return "DepthExceeded";
        case DiagCode::MissingTitle: return "MissingTitle";
        case DiagCode::Orphan: return "Orphan";
        case DiagCode::MalformedConfig: return "MalformedConfig";
        case DiagCode::UnknownConfigKey: return "UnknownConfigKey";
        case DiagCode::MissingRequiredKey: return "MissingRequiredKey";
        case DiagCode::TocEntryUnresolved: return "TocEntryUnresolved";
        case DiagCode::DuplicateOutputPath: return "DuplicateOutputPath";
        case DiagCode::RootNotFound: return "RootNotFound";
        case DiagCode::IoError: return "IoError";
    }
    return "Unknown";
}

const char* to_string(Severity severity) {
    switch (severity) {
        case Severity::Info: return "info";
        case Severity::Warning: return "warning";
        case Severity::Error: return "error";
    }
    return "unknown";
}

std::string format_diagnostic(const Diagnostic& diag) {
    std::string out = to_string(diag.severity);
    out += ' ';
    out += diag.file.empty() ? "-" : diag.file;
    out += ':';
    out += std::to_string(diag.line);
    out += ':';
    out += std::to_string(diag.col);
    out += ' ';
    out += to_string(diag.code);
    out += ' ';
    out += diag.message;
    return out;
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.file, a.line, a.col) < std::tie(b.file, b.line, b.col);
    });
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

bool has_warnings(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Warning; });
}

void promote_warnings(std::vector<Diagnostic>& diags) {
    for (auto& d : diags) {
        if (d.severity == Severity::Warning) d.severity = Severity::Error;
    }
}

void print_diagnostics(const std::vector<Diagnostic>& diags, std::ostream& os) {
    for (const auto& d : diags) os << format_diagnostic(d) << '\n';
}

}  // namespace coursegen
