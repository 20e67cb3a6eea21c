#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rwtc/environment.hpp"
#include "rwtc/values.hpp"

namespace rwtc {

// Types an expression can take. Pos/NonNeg values enter evaluation widened
// to TInt; OptionPos widens to TOptInt. Float and JavaOpts fields have no
// expression type at all, so their values cannot appear in constraints.
enum class ExprType { TInt, TBool, TStr, TOptInt, TStrList };

const char* expr_type_name(ExprType t);

// TInt for the integer tipes, TStr/TBool/TOptInt for the rest; empty for
// Float and JavaOpts.
std::optional<ExprType> expr_type_of_rtipe(RTipe t);

enum class UnaryOp { Not, Neg, IsSome, IsNone, Unwrap };
enum class BinaryOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, In, And, Or, Implies };
enum class CallFn { Min, Max, Len };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Literal {
    std::variant<BigInt, bool, std::string> value;
};
// The field's own lifted value, bound while evaluating that field's property.
struct ValueRef {};
// Another field's lifted value, by dotted name; only meaningful in
// cross-field constraints.
struct FieldRef {
    std::string name;
};
// An environment descriptor parameter (env.hw_page_size, ...).
struct EnvRef {
    std::string name;
};
struct Unary {
    UnaryOp op;
    ExprPtr operand;
};
struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};
struct Call {
    CallFn fn;
    std::vector<ExprPtr> args;
};

// Immutable expression tree; subtrees are shared freely.
struct Expr {
    std::variant<Literal, ValueRef, FieldRef, EnvRef, Unary, Binary, Call> node;
};

// Structural equality (shared_ptr members make the default memberwise
// comparison meaningless).
bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

ExprPtr make_int_lit(BigInt v);
ExprPtr make_bool_lit(bool v);
ExprPtr make_str_lit(std::string v);
ExprPtr make_value_ref();
ExprPtr make_field_ref(std::string name);
ExprPtr make_env_ref(std::string name);
ExprPtr make_unary(UnaryOp op, ExprPtr operand);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_call(CallFn fn, std::vector<ExprPtr> args);

// Grammar, lowest precedence first:
//   expr    := or_expr [ "implies" expr ]          (implies is right-assoc)
//   or_expr := and_expr { "or" and_expr }
//   and_expr:= cmp { "and" cmp }
//   cmp     := add { ("<"|"<="|">"|">="|"=="|"!="|"in") add }
//   add     := mul { ("+"|"-") mul }
//   mul     := unary { ("*"|"/"|"mod") unary }
//   unary   := ("not"|"-") unary | atom
//   atom    := int | "true" | "false" | string | "value" | env-name
//            | "field(" field-name ")"
//            | ("min"|"max") "(" expr { "," expr } ")"
//            | ("len"|"is_some"|"is_none"|"unwrap") "(" expr ")"
//            | "(" expr ")"
// env-name is a dotted identifier starting "env."; field-name is scanned
// raw up to the closing paren, so it may contain dashes. String literals
// are double-quoted with \" and \\ escapes. Throws ExprParseError with the
// byte offset of the offending token.
ExprPtr parse_expr(const std::string& source);

// Renders with the fewest parentheses that re-parse to the same tree:
// parse_expr(print_expr(e)) is structurally equal to e.
std::string print_expr(const Expr& e);

// Computes the expression's type or throws. ValueRef requires self_type;
// FieldRef/EnvRef names must be present in their maps (UnknownRefError
// otherwise). min/max take two or more TInt arguments; len takes one TStr
// or TStrList; == and != compare equal types among TInt/TBool/TStr; `in`
// is TStr within TStrList.
ExprType typecheck_expr(const Expr& e, std::optional<ExprType> self_type,
                        const std::map<std::string, ExprType>& schema_types,
                        const std::map<std::string, ExprType>& env_types);

// Expression types of the environment descriptor's parameters: the seven
// numeric fields as TInt plus comp_codecs as TStrList.
const std::map<std::string, ExprType>& environment_expr_types();

// Runtime value domain, one alternative per ExprType. Wider than BaseValue
// because list-valued intermediates (env.comp_codecs) have no base tipe.
struct EvalValue {
    std::variant<BigInt, bool, std::string, std::optional<BigInt>, std::vector<std::string>> v;

    bool operator==(const EvalValue&) const = default;
};

// BaseValue widened into the evaluation domain; empty for Float/JavaOpts,
// which have no expression representation.
std::optional<EvalValue> to_eval_value(const BaseValue& v);

// Evaluates a type-checked expression. `and`/`or`/`implies` short-circuit;
// division truncates toward zero and mod takes the dividend's sign; the only
// failures on well-typed input are EvalError{DivByZero, UnwrapNone,
// UnresolvedFieldRef} (the last when config_view lacks a referenced field).
EvalValue eval_expr(const Expr& e, const std::optional<BaseValue>& self_val,
                    const std::map<std::string, BaseValue>& config_view, const Environment& env);

// Evaluates a field property (TBool, ValueRef bound to self_val, no
// FieldRefs) to its verdict.
bool eval_property(const Expr& e, const BaseValue& self_val, const Environment& env);

}  // namespace rwtc
