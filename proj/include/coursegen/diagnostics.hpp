#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace coursegen {

enum class Severity { Info, Warning, Error };

// Stable machine-readable codes, one per detectable condition.
enum class DiagCode {
    // document parsing
    UnterminatedHeader,
    DuplicateKey,
    MalformedPropertyLine,
    UnknownDirective,
    MissingTarget,
    // reference checking
    BrokenLink,
    BrokenInclude,
    AmbiguousRef,
    IncludeCycle,
    DepthExceeded,
    MissingTitle,
    Orphan,
    // configuration
    MalformedConfig,
    UnknownConfigKey,
    MissingRequiredKey,
    TocEntryUnresolved,
    // output
    DuplicateOutputPath,
    RootNotFound,
    IoError,
};

const char* to_string(DiagCode code);
const char* to_string(Severity severity);

struct Diagnostic {
    Severity severity = Severity::Warning;
    DiagCode code = DiagCode::UnknownDirective;
    std::string file;  // display path of the offending file ("" if none)
    int line = 1;      // 1-based
    int col = 1;       // 1-based byte column
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

// One line, no trailing newline: "LEVEL file:line:col CODE message".
std::string format_diagnostic(const Diagnostic& diag);

// Output order contract: by file, then line, then column.
void sort_diagnostics(std::vector<Diagnostic>& diags);

bool has_errors(const std::vector<Diagnostic>& diags);
bool has_warnings(const std::vector<Diagnostic>& diags);

// Strict mode: every warning becomes an error.
void promote_warnings(std::vector<Diagnostic>& diags);

void print_diagnostics(const std::vector<Diagnostic>& diags, std::ostream& os);

// Base class for hard failures that abort an operation outright.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coursegen
