#pragma once

#include <optional>
#include <string>

namespace edgesec {

// 1-based inclusive source range.
struct SourceSpan {
    std::string file;
    int start_line = 1;
    int start_col = 1;
    int end_line = 1;
    int end_col = 1;
};

inline std::string location_string(const SourceSpan& s) {
    return s.file + ":" + std::to_string(s.start_line) + ":" + std::to_string(s.start_col);
}

enum class Severity { Error, Warning };

inline const char* to_string(Severity s) {
    return s == Severity::Error ? "error" : "warning";
}

// Errors prevent Model construction; warnings do not.
struct ParseDiagnostic {
    Severity severity = Severity::Error;
    std::string message;
    SourceSpan span;
};

// Well-formedness finding. Codes are stable across releases; the full list
// lives in docs/diagnostics.md.
struct ValidationDiagnostic {
    std::string code;
    Severity severity = Severity::Error;
    std::string message;
    std::string subject;
    std::optional<SourceSpan> span;
};

} // namespace edgesec
