#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rwtc/expr.hpp"
#include "rwtc/values.hpp"

namespace rwtc {

// Everything known about one configuration field: its base type, the
// property its values must satisfy, documentation strings, and the data the
// search harness needs (default, candidate variants, none sentinels).
struct FieldSpec {
    std::string name;
    std::string subsystem;
    RTipe tipe = RTipe::Str;
    // TBool over `value` and env parameters; field(...) is not allowed in a
    // per-field property.
    ExprPtr property;
    std::string unit;
    std::string interp;
    std::string advice;
    std::optional<std::string> default_raw;
    std::optional<std::vector<std::string>> grid_variants;
    // Raw spellings that mean "no value" — nonempty exactly when the tipe is
    // optpos (e.g. "-1" for an unlimited task count).
    std::vector<std::string> none_sentinels;
    bool required = false;

    // The property pretty-printed; this is the canonical source text.
    std::string property_source() const;

    bool operator==(const FieldSpec& o) const;
};

// A constraint over several fields' lifted values (no `value` reference).
struct CrossConstraint {
    std::string id;
    ExprPtr expr;
    std::string description;

    std::string expr_source() const;

    bool operator==(const CrossConstraint& o) const;
};

// A validated set of field specs plus cross-field constraints. Fields are
// kept in a name-keyed map, so schema order is lexicographic and loading is
// independent of manifest row order. Immutable after construction.
class ConfigSchema {
public:
    // Validates everything: unique nonempty names, properties type-check as
    // TBool against the field's own type, sentinels present exactly for
    // optpos fields, defaults lift and satisfy their property under the
    // reference environment, cross constraints type-check against the
    // declared fields. Throws SchemaError.
    ConfigSchema(std::string name, std::vector<FieldSpec> fields,
                 std::vector<CrossConstraint> cross_constraints);

    const std::string& name() const { return name_; }
    const std::map<std::string, FieldSpec>& fields() const { return fields_; }
    const std::vector<CrossConstraint>& cross_constraints() const { return cross_; }
    // Sorted distinct subsystem names of the declared fields.
    const std::vector<std::string>& subsystems() const { return subsystems_; }

    const FieldSpec* find_field(const std::string& name) const;
    // Throws UnknownFieldError.
    const FieldSpec& field(const std::string& name) const;

    // Expression types of the fields that have one (Float/JavaOpts fields
    // are absent, so constraints cannot reference them).
    const std::map<std::string, ExprType>& field_expr_types() const { return field_types_; }

    bool operator==(const ConfigSchema& o) const;

private:
    std::string name_;
    std::map<std::string, FieldSpec> fields_;
    std::vector<CrossConstraint> cross_;
    std::vector<std::string> subsystems_;
    std::map<std::string, ExprType> field_types_;
};

// Interprets a raw string at a field's base type. Int/Pos/NonNeg: decimal
// integers with the obvious range restrictions; Bool: exactly true/false;
// Float: decimal literal; Str: identity; JavaOpts: parse_java_opts;
// OptionPos: a none sentinel (exact match) or a positive decimal. Throws
// LiftError with the raw text, expected tipe, and reason.
BaseValue lift_value(const std::string& raw, const FieldSpec& spec);

// Renders a lifted value back to a raw string that lifts to the same value
// under the same spec. The only field-dependent case is an absent OptionPos,
// which renders as the spec's first none sentinel.
std::string render_raw_for_field(const FieldSpec& spec, const BaseValue& value);

// What explain surfaces about one field.
struct FieldExplanation {
    std::string name;
    std::string subsystem;
    RTipe tipe = RTipe::Str;
    std::string property_text;
    std::string unit;
    std::string interp;
    std::string advice;
    std::optional<std::string> default_raw;
};

FieldExplanation explain_field(const ConfigSchema& schema, const std::string& name);

// Manifest text format: a `[fields]` section with pipe-delimited rows
//   name|subsystem|tipe|property|unit|interp|advice|default|variants|sentinels|required
// and a `[cross]` section with rows `id|expr|description`. Full-line #
// comments and blank lines are skipped. Empty cells: property defaults to
// "true", default/variants to absent, required to false.
ConfigSchema parse_schema_manifest(const std::string& text, const std::string& name,
                                   const std::string& origin = "<manifest>");

// Loads a manifest; the schema takes the file's stem as its name.
ConfigSchema load_schema(const std::filesystem::path& manifest_path);

// Emits the manifest format back; parse_schema_manifest(serialize_schema(s),
// s.name()) reconstructs an equal schema.
std::string serialize_schema(const ConfigSchema& schema);

// The embedded Hadoop schema: the buffer/page-size field, the optional task
// limit, split min/max with their ordering constraint, the uber-mode
// resource constraints, JVM option fields, codec membership, thread-count
// bounds, and representative fields of every base type.
const ConfigSchema& bundled_hadoop_schema();

}  // namespace rwtc
