#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rwtc/errors.hpp"

namespace rwtc {

using BigInt = boost::multiprecision::cpp_int;

// Tags for the base types raw configuration strings are lifted into.
enum class RTipe { Int, Pos, NonNeg, Str, Bool, Float, JavaOpts, OptionPos };

const char* rtipe_name(RTipe t);

// Parses a manifest tipe tag ("int", "pos", "nonneg", "str", "bool",
// "float", "javaopts", "optpos").
std::optional<RTipe> rtipe_from_name(const std::string& name);

// JVM heap options lifted from a "-Xms... -Xmx..." string.
//
// Invariants, enforced at construction:
//   - both heap sizes are >= 1 MB and init <= max,
//   - extra_flags carries no token starting with -Xms or -Xmx.
class JavaOptsRec {
public:
    static JavaOptsRec create(BigInt init_heap_mb, BigInt max_heap_mb,
                              std::vector<std::string> extra_flags);

    const BigInt& init_heap_mb() const { return init_heap_mb_; }
    const BigInt& max_heap_mb() const { return max_heap_mb_; }
    const std::vector<std::string>& extra_flags() const { return extra_flags_; }

    bool operator==(const JavaOptsRec& other) const = default;

private:
    JavaOptsRec() = default;

    BigInt init_heap_mb_;
    BigInt max_heap_mb_;
    std::vector<std::string> extra_flags_;
};

// Fixed-precision decimal: keeps the source text for faithful rendering and a
// double for comparisons (tolerance 1e-9).
class FloatValue {
public:
    // Accepts ordinary decimal literals: [+-]digits[.digits][(e|E)[+-]digits].
    static FloatValue parse(const std::string& text);

    const std::string& text() const { return text_; }
    double value() const { return value_; }

    bool operator==(const FloatValue& other) const;

private:
    std::string text_;
    double value_ = 0.0;
};

// A lifted configuration value. The numeric refinements (Pos >= 1,
// NonNeg >= 0, OptionPos payload >= 1) are checked by the factories; a
// BaseValue violating them cannot be constructed.
class BaseValue {
public:
    static BaseValue make_int(BigInt v);
    static BaseValue make_pos(BigInt v);
    static BaseValue make_nonneg(BigInt v);
    static BaseValue make_str(std::string s);
    static BaseValue make_bool(bool b);
    static BaseValue make_float(const std::string& decimal_text);
    static BaseValue make_jvm(JavaOptsRec opts);
    static BaseValue opt_pos_none();
    static BaseValue opt_pos_some(BigInt v);

    RTipe tipe() const { return tipe_; }

    // Int, Pos and NonNeg payloads.
    const BigInt& as_int() const;
    const std::string& as_str() const;
    bool as_bool() const;
    const FloatValue& as_float() const;
    const JavaOptsRec& as_jvm() const;
    const std::optional<BigInt>& as_opt_pos() const;

    bool operator==(const BaseValue& other) const;

private:
    using Payload = std::variant<BigInt, bool, std::string, FloatValue, JavaOptsRec,
                                 std::optional<BigInt>>;

    BaseValue(RTipe t, Payload p) : tipe_(t), payload_(std::move(p)) {}

    RTipe tipe_;
    Payload payload_;
};

// Lifts a JVM options string such as "-Xms1024m -Xmx4096m". Requires exactly
// one -Xms and one -Xmx token; sizes are normalized to megabytes (k rounds
// up, g multiplies by 1024); all other tokens are kept in order as extra
// flags. Throws LiftError.
JavaOptsRec parse_java_opts(const std::string& raw);

// Canonical textual form: integers in decimal, booleans as true/false,
// OptionPos None as "none" (field sentinels live in the schema layer),
// JVM options as "-Xms<init>m -Xmx<max>m" followed by the extra flags.
std::string render_base_value(const BaseValue& v);

}  // namespace rwtc
