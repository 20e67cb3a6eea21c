#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwtc {

// Where a raw entry came from: the file (or synthetic origin) and the
// zero-based position of its <property> element within that file.
struct SourceRef {
    std::string path;
    std::size_t ordinal = 0;

    bool operator==(const SourceRef&) const = default;
};

// One machine-level configuration assignment, before any typing: the value
// is an uninterpreted string exactly as written.
struct RawEntry {
    std::string name;
    std::string raw_value;
    bool final_flag = false;
    SourceRef source;

    bool operator==(const RawEntry&) const = default;
};

// An ordered multiset of assignments with unique names. Order is insertion
// order, which ingest preserves from the underlying file; lookups are by
// name. Duplicate names are a caller error (merge resolves them first).
class RawConfig {
public:
    RawConfig() = default;

    void add(RawEntry entry) {
        if (find(entry.name)) throw std::invalid_argument("duplicate entry \"" + entry.name + "\"");
        entries_.push_back(std::move(entry));
    }

    // Inserts or overwrites by name, preserving position on overwrite.
    void set(RawEntry entry) {
        for (auto& e : entries_) {
            if (e.name == entry.name) {
                e = std::move(entry);
                return;
            }
        }
        entries_.push_back(std::move(entry));
    }

    const RawEntry* find(const std::string& name) const {
        for (const auto& e : entries_)
            if (e.name == name) return &e;
        return nullptr;
    }

    const std::vector<RawEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    bool operator==(const RawConfig&) const = default;

private:
    std::vector<RawEntry> entries_;
};

enum class DiagnosticKind {
    LiftFailure,         // raw string does not lift to the field's base type
    PropertyViolation,   // lifted value fails the field's own constraint
    CrossFieldViolation, // a multi-field constraint fails (or can't resolve)
    MissingField,        // required field absent from the configuration
    UnknownField,        // entry not described by the schema (warning)
    FinalOverride,       // merge kept a final value over a later one (warning)
};

inline const char* diagnostic_kind_name(DiagnosticKind k) {
    switch (k) {
        case DiagnosticKind::LiftFailure: return "lift-failure";
        case DiagnosticKind::PropertyViolation: return "property-violation";
        case DiagnosticKind::CrossFieldViolation: return "cross-field-violation";
        case DiagnosticKind::MissingField: return "missing-field";
        case DiagnosticKind::UnknownField: return "unknown-field";
        case DiagnosticKind::FinalOverride: return "final-override";
    }
    return "?";
}

// Hard diagnostics make a configuration invalid; the rest are advisory.
inline bool diagnostic_is_hard(DiagnosticKind k) {
    switch (k) {
        case DiagnosticKind::LiftFailure:
        case DiagnosticKind::PropertyViolation:
        case DiagnosticKind::CrossFieldViolation:
        case DiagnosticKind::MissingField: return true;
        case DiagnosticKind::UnknownField:
        case DiagnosticKind::FinalOverride: return false;
    }
    return true;
}

struct Diagnostic {
    DiagnosticKind kind;
    // Field name for per-field kinds; constraint id for CrossFieldViolation.
    std::string subject;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

inline Diagnostic make_diagnostic(DiagnosticKind kind, std::string subject, std::string message) {
    return Diagnostic{kind, std::move(subject), std::move(message)};
}

}  // namespace rwtc
