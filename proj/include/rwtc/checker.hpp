#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rwtc/config.hpp"
#include "rwtc/environment.hpp"
#include "rwtc/schema.hpp"

namespace rwtc {

// Why a certified field may be trusted: the property that was evaluated and
// the environment it was evaluated under. evaluated_true is true by
// construction — no certificate is ever built from a false verdict.
struct Evidence {
    std::string property_source;
    bool evaluated_true = true;
    std::string env_fingerprint;

    bool operator==(const Evidence&) const = default;
};

// A lifted value paired with the evidence that its property held.
struct CertifiedField {
    std::string field_id;
    bool final_flag = false;
    BaseValue value;
    Evidence evidence;

    bool operator==(const CertifiedField&) const = default;
};

struct CrossEvidence {
    std::string constraint_id;
    bool evaluated_true = true;

    bool operator==(const CrossEvidence&) const = default;
};

// A fully checked configuration: exists only when every required field was
// present, every present field lifted, every property held, and every
// cross-field constraint held.
struct CertifiedConfig {
    std::string schema_name;
    std::map<std::string, CertifiedField> fields;
    std::vector<CrossEvidence> cross_evidence;
    Environment environment;

    bool operator==(const CertifiedConfig&) const = default;
};

struct CheckReport {
    std::string config_id;
    // Engaged exactly when no hard diagnostic was produced.
    std::optional<CertifiedConfig> certified;
    // Warnings appear here even on a pass.
    std::vector<Diagnostic> diagnostics;
    std::map<DiagnosticKind, std::size_t> counts;
    // Monotonic-clock duration in seconds (full precision here; renderers
    // report milliseconds).
    double check_duration_s = 0.0;

    bool passed() const { return certified.has_value(); }
};

// Lifts one raw value and evaluates the field's property with `value` bound
// to the result. Returns the certificate, or the single diagnostic that
// explains the failure (LiftFailure, or PropertyViolation — including
// property evaluation errors, which surface as PropertyViolation with their
// cause).
std::variant<CertifiedField, Diagnostic> check_field(const FieldSpec& spec,
                                                     const std::string& raw, bool final_flag,
                                                     const Environment& env);

// Checks a whole configuration. Per schema field (lexicographic order): the
// raw entry if present, else the default, else MissingField when required
// (optional absent fields are skipped). Cross constraints run over the view
// of all successfully lifted values; one that touches a missing or unlifted
// field fails with an "unresolved" CrossFieldViolation rather than passing
// vacuously. Raw entries the schema does not describe become UnknownField
// warnings. Diagnostic order: carried_warnings, field diagnostics in schema
// order, cross-constraint diagnostics in declaration order, UnknownField in
// raw-entry order. All diagnostics are collected; nothing fails fast.
CheckReport check_config(const ConfigSchema& schema, const RawConfig& raw, const Environment& env,
                         std::vector<Diagnostic> carried_warnings = {},
                         std::string config_id = "");

// Renders every certified value back to raw strings (none sentinels
// included), producing a configuration that rechecks to a pass under the
// same environment.
RawConfig certified_to_raw(const CertifiedConfig& certified, const ConfigSchema& schema);

// One line per diagnostic plus a PASS/FAIL header and timing footer.
std::string report_to_text(const CheckReport& report);

// The same content as a JSON document (machine-readable form).
std::string report_to_json(const CheckReport& report);

}  // namespace rwtc
