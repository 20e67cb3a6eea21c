#include "rwtc/expr.hpp"

#include <cctype>
#include <sstream>

#include "rwtc/errors.hpp"

namespace rwtc {

const char* expr_type_name(ExprType t) {
    switch (t) {
        case ExprType::TInt: return "int";
        case ExprType::TBool: return "bool";
        case ExprType::TStr: return "str";
        case ExprType::TOptInt: return "opt-int";
        case ExprType::TStrList: return "str-list";
    }
    return "?";
}

std::optional<ExprType> expr_type_of_rtipe(RTipe t) {
    switch (t) {
        case RTipe::Int:
        case RTipe::Pos:
        case RTipe::NonNeg: return ExprType::TInt;
        case RTipe::Str: return ExprType::TStr;
        case RTipe::Bool: return ExprType::TBool;
        case RTipe::OptionPos: return ExprType::TOptInt;
        case RTipe::Float:
        case RTipe::JavaOpts: return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- builders

ExprPtr make_int_lit(BigInt v) { return std::make_shared<Expr>(Expr{Literal{std::move(v)}}); }
ExprPtr make_bool_lit(bool v) { return std::make_shared<Expr>(Expr{Literal{v}}); }
ExprPtr make_str_lit(std::string v) { return std::make_shared<Expr>(Expr{Literal{std::move(v)}}); }
ExprPtr make_value_ref() { return std::make_shared<Expr>(Expr{ValueRef{}}); }
ExprPtr make_field_ref(std::string name) {
    return std::make_shared<Expr>(Expr{FieldRef{std::move(name)}});
}
ExprPtr make_env_ref(std::string name) {
    return std::make_shared<Expr>(Expr{EnvRef{std::move(name)}});
}
ExprPtr make_unary(UnaryOp op, ExprPtr operand) {
    return std::make_shared<Expr>(Expr{Unary{op, std::move(operand)}});
}
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}});
}
ExprPtr make_call(CallFn fn, std::vector<ExprPtr> args) {
    return std::make_shared<Expr>(Expr{Call{fn, std::move(args)}});
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&b](const auto& an) -> bool {
            using T = std::decay_t<decltype(an)>;
            const auto& bn = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, Literal>) {
                return an.value == bn.value;
            } else if constexpr (std::is_same_v<T, ValueRef>) {
                return true;
            } else if constexpr (std::is_same_v<T, FieldRef> || std::is_same_v<T, EnvRef>) {
                return an.name == bn.name;
            } else if constexpr (std::is_same_v<T, Unary>) {
                return an.op == bn.op && *an.operand == *bn.operand;
            } else if constexpr (std::is_same_v<T, Binary>) {
                return an.op == bn.op && *an.lhs == *bn.lhs && *an.rhs == *bn.rhs;
            } else {
                static_assert(std::is_same_v<T, Call>);
                if (an.fn != bn.fn || an.args.size() != bn.args.size()) return false;
                for (std::size_t i = 0; i < an.args.size(); ++i)
                    if (!(*an.args[i] == *bn.args[i])) return false;
                return true;
            }
        },
        a.node);
}

// ------------------------------------------------------------------- lexer

namespace {

enum class Tok {
    Int,
    Str,
    Ident,
    FieldName,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Lt,
    Le,
    Gt,
    Ge,
    EqEq,
    Ne,
    End,
};

struct Token {
    Tok kind;
    std::string text;  // identifier / field name / string body / digits
    std::size_t pos;
};

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_'; }

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0, n = s.size();
    while (i < n) {
        unsigned char c = s[i];
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(c)) {
            while (i < n && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Tok::Int, s.substr(start, i - start), start});
            continue;
        }
        if (ident_start(c)) {
            ++i;
            while (i < n) {
                unsigned char d = s[i];
                if (ident_char(d)) {
                    ++i;
                } else if (d == '.' && i + 1 < n &&
                           ident_char(static_cast<unsigned char>(s[i + 1]))) {
                    i += 2;
                } else {
                    break;
                }
            }
            std::string word = s.substr(start, i - start);
            if (word == "field") {
                // Field names may contain characters the identifier lexer
                // rejects (dashes), so scan the parenthesized name raw.
                std::size_t j = i;
                while (j < n && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
                if (j >= n || s[j] != '(')
                    throw ExprParseError("expected '(' after field", j < n ? j : n);
                std::size_t open = j++;
                std::size_t close = s.find(')', j);
                if (close == std::string::npos)
                    throw ExprParseError("unterminated field(...)", open);
                std::string name = s.substr(j, close - j);
                std::size_t b = 0, e = name.size();
                while (b < e && std::isspace(static_cast<unsigned char>(name[b]))) ++b;
                while (e > b && std::isspace(static_cast<unsigned char>(name[e - 1]))) --e;
                name = name.substr(b, e - b);
                if (name.empty()) throw ExprParseError("empty field name", open);
                out.push_back({Tok::Ident, "field", start});
                out.push_back({Tok::LParen, "(", open});
                out.push_back({Tok::FieldName, name, j + b});
                out.push_back({Tok::RParen, ")", close});
                i = close + 1;
            } else {
                out.push_back({Tok::Ident, word, start});
            }
            continue;
        }
        if (c == '"') {
            std::string body;
            ++i;
            while (true) {
                if (i >= n) throw ExprParseError("unterminated string literal", start);
                char d = s[i];
                if (d == '"') {
                    ++i;
                    break;
                }
                if (d == '\\') {
                    if (i + 1 >= n || (s[i + 1] != '"' && s[i + 1] != '\\'))
                        throw ExprParseError("bad escape in string literal", i);
                    body.push_back(s[i + 1]);
                    i += 2;
                } else {
                    body.push_back(d);
                    ++i;
                }
            }
            out.push_back({Tok::Str, body, start});
            continue;
        }
        auto two = [&](char a, char b) { return c == a && i + 1 < n && s[i + 1] == b; };
        if (two('<', '=')) {
            out.push_back({Tok::Le, "<=", start});
            i += 2;
        } else if (two('>', '=')) {
            out.push_back({Tok::Ge, ">=", start});
            i += 2;
        } else if (two('=', '=')) {
            out.push_back({Tok::EqEq, "==", start});
            i += 2;
        } else if (two('!', '=')) {
            out.push_back({Tok::Ne, "!=", start});
            i += 2;
        } else {
            Tok k;
            switch (c) {
                case '(': k = Tok::LParen; break;
                case ')': k = Tok::RParen; break;
                case ',': k = Tok::Comma; break;
                case '+': k = Tok::Plus; break;
                case '-': k = Tok::Minus; break;
                case '*': k = Tok::Star; break;
                case '/': k = Tok::Slash; break;
                case '<': k = Tok::Lt; break;
                case '>': k = Tok::Gt; break;
                default:
                    throw ExprParseError(std::string("unexpected character '") +
                                             static_cast<char>(c) + "'",
                                         start);
            }
            out.push_back({k, std::string(1, static_cast<char>(c)), start});
            ++i;
        }
    }
    out.push_back({Tok::End, "", n});
    return out;
}

// ------------------------------------------------------------------ parser

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    ExprPtr parse() {
        ExprPtr e = implies_expr();
        if (peek().kind != Tok::End)
            throw ExprParseError("trailing input after expression", peek().pos);
        return e;
    }

private:
    const Token& peek() const { return toks_[at_]; }
    Token take() { return toks_[at_++]; }
    bool at_ident(const char* word) const {
        return peek().kind == Tok::Ident && peek().text == word;
    }
    void expect(Tok k, const char* what) {
        if (peek().kind != k) throw ExprParseError(std::string("expected ") + what, peek().pos);
        ++at_;
    }

    ExprPtr implies_expr() {
        ExprPtr lhs = or_expr();
        if (at_ident("implies")) {
            take();
            return make_binary(BinaryOp::Implies, std::move(lhs), implies_expr());
        }
        return lhs;
    }

    ExprPtr or_expr() {
        ExprPtr lhs = and_expr();
        while (at_ident("or")) {
            take();
            lhs = make_binary(BinaryOp::Or, std::move(lhs), and_expr());
        }
        return lhs;
    }

    ExprPtr and_expr() {
        ExprPtr lhs = cmp_expr();
        while (at_ident("and")) {
            take();
            lhs = make_binary(BinaryOp::And, std::move(lhs), cmp_expr());
        }
        return lhs;
    }

    ExprPtr cmp_expr() {
        ExprPtr lhs = add_expr();
        while (true) {
            BinaryOp op;
            switch (peek().kind) {
                case Tok::Lt: op = BinaryOp::Lt; break;
                case Tok::Le: op = BinaryOp::Le; break;
                case Tok::Gt: op = BinaryOp::Gt; break;
                case Tok::Ge: op = BinaryOp::Ge; break;
                case Tok::EqEq: op = BinaryOp::Eq; break;
                case Tok::Ne: op = BinaryOp::Ne; break;
                default:
                    if (at_ident("in")) {
                        op = BinaryOp::In;
                        break;
                    }
                    return lhs;
            }
            take();
            lhs = make_binary(op, std::move(lhs), add_expr());
        }
    }

    ExprPtr add_expr() {
        ExprPtr lhs = mul_expr();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            BinaryOp op = take().kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
            lhs = make_binary(op, std::move(lhs), mul_expr());
        }
        return lhs;
    }

    ExprPtr mul_expr() {
        ExprPtr lhs = unary_expr();
        while (true) {
            BinaryOp op;
            if (peek().kind == Tok::Star)
                op = BinaryOp::Mul;
            else if (peek().kind == Tok::Slash)
                op = BinaryOp::Div;
            else if (at_ident("mod"))
                op = BinaryOp::Mod;
            else
                return lhs;
            take();
            lhs = make_binary(op, std::move(lhs), unary_expr());
        }
    }

    ExprPtr unary_expr() {
        if (at_ident("not")) {
            take();
            return make_unary(UnaryOp::Not, unary_expr());
        }
        if (peek().kind == Tok::Minus) {
            take();
            return make_unary(UnaryOp::Neg, unary_expr());
        }
        return atom();
    }

    std::vector<ExprPtr> call_args() {
        expect(Tok::LParen, "'('");
        std::vector<ExprPtr> args;
        args.push_back(implies_expr());
        while (peek().kind == Tok::Comma) {
            take();
            args.push_back(implies_expr());
        }
        expect(Tok::RParen, "')'");
        return args;
    }

    ExprPtr atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Int: {
                Token tok = take();
                return make_int_lit(BigInt(tok.text));
            }
            case Tok::Str: {
                Token tok = take();
                return make_str_lit(std::move(tok.text));
            }
            case Tok::LParen: {
                take();
                ExprPtr e = implies_expr();
                expect(Tok::RParen, "')'");
                return e;
            }
            case Tok::Ident: break;
            default: throw ExprParseError("expected expression", t.pos);
        }
        Token tok = take();
        const std::string& w = tok.text;
        if (w == "true") return make_bool_lit(true);
        if (w == "false") return make_bool_lit(false);
        if (w == "value") return make_value_ref();
        if (w.rfind("env.", 0) == 0) {
            std::string name = w.substr(4);
            if (name.empty()) throw ExprParseError("empty environment parameter name", tok.pos);
            return make_env_ref(std::move(name));
        }
        if (w == "field") {
            expect(Tok::LParen, "'('");
            if (peek().kind != Tok::FieldName)
                throw ExprParseError("expected field name", peek().pos);
            Token name = take();
            expect(Tok::RParen, "')'");
            return make_field_ref(std::move(name.text));
        }
        if (w == "min" || w == "max") {
            CallFn fn = w == "min" ? CallFn::Min : CallFn::Max;
            return make_call(fn, call_args());
        }
        if (w == "len") {
            auto args = call_args();
            if (args.size() != 1) throw ExprParseError("len takes exactly one argument", tok.pos);
            return make_call(CallFn::Len, std::move(args));
        }
        if (w == "is_some" || w == "is_none" || w == "unwrap") {
            UnaryOp op = w == "is_some"  ? UnaryOp::IsSome
                         : w == "is_none" ? UnaryOp::IsNone
                                          : UnaryOp::Unwrap;
            auto args = call_args();
            if (args.size() != 1)
                throw ExprParseError(w + " takes exactly one argument", tok.pos);
            return make_unary(op, std::move(args[0]));
        }
        throw ExprParseError("unexpected identifier '" + w + "'", tok.pos);
    }

    std::vector<Token> toks_;
    std::size_t at_ = 0;
};

}  // namespace

ExprPtr parse_expr(const std::string& source) { return Parser(lex(source)).parse(); }

// ----------------------------------------------------------------- printer

namespace {

// Precedence levels, lowest binding first; atoms and call-style operators
// sit above every infix level.
constexpr int PREC_IMPLIES = 1;
constexpr int PREC_OR = 2;
constexpr int PREC_AND = 3;
constexpr int PREC_CMP = 4;
constexpr int PREC_ADD = 5;
constexpr int PREC_MUL = 6;
constexpr int PREC_PREFIX = 7;
constexpr int PREC_ATOM = 8;

int binary_prec(BinaryOp op) {
    switch (op) {
        case BinaryOp::Implies: return PREC_IMPLIES;
        case BinaryOp::Or: return PREC_OR;
        case BinaryOp::And: return PREC_AND;
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge:
        case BinaryOp::Eq:
        case BinaryOp::Ne:
        case BinaryOp::In: return PREC_CMP;
        case BinaryOp::Add:
        case BinaryOp::Sub: return PREC_ADD;
        case BinaryOp::Mul:
        case BinaryOp::Div:
        case BinaryOp::Mod: return PREC_MUL;
    }
    return PREC_ATOM;
}

const char* binary_name(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Mod: return "mod";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::In: return "in";
        case BinaryOp::And: return "and";
        case BinaryOp::Or: return "or";
        case BinaryOp::Implies: return "implies";
    }
    return "?";
}

int node_prec(const Expr& e) {
    if (const auto* b = std::get_if<Binary>(&e.node)) return binary_prec(b->op);
    if (const auto* u = std::get_if<Unary>(&e.node))
        return (u->op == UnaryOp::Not || u->op == UnaryOp::Neg) ? PREC_PREFIX : PREC_ATOM;
    return PREC_ATOM;
}

void print_into(const Expr& e, std::string& out);

void print_child(const Expr& e, int min_prec, std::string& out) {
    bool paren = node_prec(e) < min_prec;
    if (paren) out.push_back('(');
    print_into(e, out);
    if (paren) out.push_back(')');
}

void print_into(const Expr& e, std::string& out) {
    std::visit(
        [&out](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Literal>) {
                if (const auto* i = std::get_if<BigInt>(&n.value)) {
                    out += i->str();
                } else if (const auto* b = std::get_if<bool>(&n.value)) {
                    out += *b ? "true" : "false";
                } else {
                    out.push_back('"');
                    for (char c : std::get<std::string>(n.value)) {
                        if (c == '"' || c == '\\') out.push_back('\\');
                        out.push_back(c);
                    }
                    out.push_back('"');
                }
            } else if constexpr (std::is_same_v<T, ValueRef>) {
                out += "value";
            } else if constexpr (std::is_same_v<T, FieldRef>) {
                out += "field(" + n.name + ")";
            } else if constexpr (std::is_same_v<T, EnvRef>) {
                out += "env." + n.name;
            } else if constexpr (std::is_same_v<T, Unary>) {
                switch (n.op) {
                    case UnaryOp::Not:
                        out += "not ";
                        print_child(*n.operand, PREC_PREFIX, out);
                        break;
                    case UnaryOp::Neg:
                        out.push_back('-');
                        print_child(*n.operand, PREC_PREFIX, out);
                        break;
                    case UnaryOp::IsSome:
                    case UnaryOp::IsNone:
                    case UnaryOp::Unwrap:
                        out += n.op == UnaryOp::IsSome  ? "is_some("
                               : n.op == UnaryOp::IsNone ? "is_none("
                                                         : "unwrap(";
                        print_child(*n.operand, 0, out);
                        out.push_back(')');
                        break;
                }
            } else if constexpr (std::is_same_v<T, Binary>) {
                int p = binary_prec(n.op);
                // implies nests to the right; every other operator chains to
                // the left.
                bool right_assoc = n.op == BinaryOp::Implies;
                print_child(*n.lhs, right_assoc ? p + 1 : p, out);
                out.push_back(' ');
                out += binary_name(n.op);
                out.push_back(' ');
                print_child(*n.rhs, right_assoc ? p : p + 1, out);
            } else {
                static_assert(std::is_same_v<T, Call>);
                out += n.fn == CallFn::Min ? "min(" : n.fn == CallFn::Max ? "max(" : "len(";
                for (std::size_t i = 0; i < n.args.size(); ++i) {
                    if (i) out += ", ";
                    print_child(*n.args[i], 0, out);
                }
                out.push_back(')');
            }
        },
        e.node);
}

}  // namespace

std::string print_expr(const Expr& e) {
    std::string out;
    print_child(e, 0, out);
    return out;
}

// ------------------------------------------------------------- typechecker

namespace {

[[noreturn]] void type_fail(const std::string& what, const Expr& at) {
    throw ExprTypeError(what + " in `" + print_expr(at) + "`");
}

}  // namespace

ExprType typecheck_expr(const Expr& e, std::optional<ExprType> self_type,
                        const std::map<std::string, ExprType>& schema_types,
                        const std::map<std::string, ExprType>& env_types) {
    auto check = [&](const Expr& sub) {
        return typecheck_expr(sub, self_type, schema_types, env_types);
    };
    return std::visit(
        [&](const auto& n) -> ExprType {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Literal>) {
                if (std::holds_alternative<BigInt>(n.value)) return ExprType::TInt;
                if (std::holds_alternative<bool>(n.value)) return ExprType::TBool;
                return ExprType::TStr;
            } else if constexpr (std::is_same_v<T, ValueRef>) {
                if (!self_type)
                    throw ExprTypeError("`value` is not available in this context");
                return *self_type;
            } else if constexpr (std::is_same_v<T, FieldRef>) {
                auto it = schema_types.find(n.name);
                if (it == schema_types.end())
                    throw UnknownRefError("reference to unknown field " + n.name);
                return it->second;
            } else if constexpr (std::is_same_v<T, EnvRef>) {
                auto it = env_types.find(n.name);
                if (it == env_types.end())
                    throw UnknownRefError("reference to unknown environment parameter env." +
                                          n.name);
                return it->second;
            } else if constexpr (std::is_same_v<T, Unary>) {
                ExprType t = check(*n.operand);
                switch (n.op) {
                    case UnaryOp::Not:
                        if (t != ExprType::TBool) type_fail("not requires a bool operand", e);
                        return ExprType::TBool;
                    case UnaryOp::Neg:
                        if (t != ExprType::TInt) type_fail("negation requires an int operand", e);
                        return ExprType::TInt;
                    case UnaryOp::IsSome:
                    case UnaryOp::IsNone:
                        if (t != ExprType::TOptInt)
                            type_fail("is_some/is_none require an optional operand", e);
                        return ExprType::TBool;
                    case UnaryOp::Unwrap:
                        if (t != ExprType::TOptInt)
                            type_fail("unwrap requires an optional operand", e);
                        return ExprType::TInt;
                }
                type_fail("bad unary operator", e);
            } else if constexpr (std::is_same_v<T, Binary>) {
                ExprType lt = check(*n.lhs);
                ExprType rt = check(*n.rhs);
                auto both_int = [&] {
                    if (lt != ExprType::TInt || rt != ExprType::TInt)
                        type_fail(std::string("operator ") + binary_name(n.op) +
                                      " requires int operands",
                                  e);
                };
                switch (n.op) {
                    case BinaryOp::Add:
                    case BinaryOp::Sub:
                    case BinaryOp::Mul:
                    case BinaryOp::Div:
                    case BinaryOp::Mod: both_int(); return ExprType::TInt;
                    case BinaryOp::Lt:
                    case BinaryOp::Le:
                    case BinaryOp::Gt:
                    case BinaryOp::Ge: both_int(); return ExprType::TBool;
                    case BinaryOp::Eq:
                    case BinaryOp::Ne:
                        if (lt != rt ||
                            (lt != ExprType::TInt && lt != ExprType::TBool &&
                             lt != ExprType::TStr))
                            type_fail("== and != compare two ints, bools, or strings", e);
                        return ExprType::TBool;
                    case BinaryOp::In:
                        if (lt != ExprType::TStr || rt != ExprType::TStrList)
                            type_fail("in requires a string and a string list", e);
                        return ExprType::TBool;
                    case BinaryOp::And:
                    case BinaryOp::Or:
                    case BinaryOp::Implies:
                        if (lt != ExprType::TBool || rt != ExprType::TBool)
                            type_fail(std::string("operator ") + binary_name(n.op) +
                                          " requires bool operands",
                                      e);
                        return ExprType::TBool;
                }
                type_fail("bad binary operator", e);
            } else {
                static_assert(std::is_same_v<T, Call>);
                if (n.fn == CallFn::Len) {
                    if (n.args.size() != 1) type_fail("len takes exactly one argument", e);
                    ExprType t = check(*n.args[0]);
                    if (t != ExprType::TStr && t != ExprType::TStrList)
                        type_fail("len requires a string or string list", e);
                    return ExprType::TInt;
                }
                if (n.args.size() < 2) type_fail("min/max take at least two arguments", e);
                for (const auto& a : n.args)
                    if (check(*a) != ExprType::TInt)
                        type_fail("min/max require int arguments", e);
                return ExprType::TInt;
            }
        },
        e.node);
}

const std::map<std::string, ExprType>& environment_expr_types() {
    static const std::map<std::string, ExprType> types = {
        {"phys_cpu_cores", ExprType::TInt}, {"virt_cpu_cores", ExprType::TInt},
        {"phys_mem_mb", ExprType::TInt},    {"virt_mem_mb", ExprType::TInt},
        {"hw_page_size", ExprType::TInt},   {"max_file_desc", ExprType::TInt},
        {"max_threads", ExprType::TInt},    {"comp_codecs", ExprType::TStrList},
    };
    return types;
}

// --------------------------------------------------------------- evaluator

std::optional<EvalValue> to_eval_value(const BaseValue& v) {
    switch (v.tipe()) {
        case RTipe::Int:
        case RTipe::Pos:
        case RTipe::NonNeg: return EvalValue{v.as_int()};
        case RTipe::Str: return EvalValue{v.as_str()};
        case RTipe::Bool: return EvalValue{v.as_bool()};
        case RTipe::OptionPos: return EvalValue{v.as_opt_pos()};
        case RTipe::Float:
        case RTipe::JavaOpts: return std::nullopt;
    }
    return std::nullopt;
}

namespace {

[[noreturn]] void bad_operand(const std::string& what) {
    throw EvalError(EvalError::Kind::BadOperand, what);
}

const BigInt& as_int(const EvalValue& v) {
    if (const auto* p = std::get_if<BigInt>(&v.v)) return *p;
    bad_operand("expected an int value");
}

bool as_bool(const EvalValue& v) {
    if (const auto* p = std::get_if<bool>(&v.v)) return *p;
    bad_operand("expected a bool value");
}

const std::string& as_str(const EvalValue& v) {
    if (const auto* p = std::get_if<std::string>(&v.v)) return *p;
    bad_operand("expected a string value");
}

const std::optional<BigInt>& as_opt(const EvalValue& v) {
    if (const auto* p = std::get_if<std::optional<BigInt>>(&v.v)) return *p;
    bad_operand("expected an optional value");
}

const std::vector<std::string>& as_list(const EvalValue& v) {
    if (const auto* p = std::get_if<std::vector<std::string>>(&v.v)) return *p;
    bad_operand("expected a string-list value");
}

}  // namespace

EvalValue eval_expr(const Expr& e, const std::optional<BaseValue>& self_val,
                    const std::map<std::string, BaseValue>& config_view, const Environment& env) {
    auto eval = [&](const Expr& sub) { return eval_expr(sub, self_val, config_view, env); };
    return std::visit(
        [&](const auto& n) -> EvalValue {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Literal>) {
                if (const auto* i = std::get_if<BigInt>(&n.value)) return EvalValue{*i};
                if (const auto* b = std::get_if<bool>(&n.value)) return EvalValue{*b};
                return EvalValue{std::get<std::string>(n.value)};
            } else if constexpr (std::is_same_v<T, ValueRef>) {
                if (!self_val) bad_operand("`value` is unbound");
                auto ev = to_eval_value(*self_val);
                if (!ev) bad_operand("`value` has no expression representation");
                return *ev;
            } else if constexpr (std::is_same_v<T, FieldRef>) {
                auto it = config_view.find(n.name);
                if (it == config_view.end())
                    throw EvalError(EvalError::Kind::UnresolvedFieldRef,
                                    "field " + n.name + " has no certified value");
                auto ev = to_eval_value(it->second);
                if (!ev) bad_operand("field " + n.name + " has no expression representation");
                return *ev;
            } else if constexpr (std::is_same_v<T, EnvRef>) {
                if (n.name == "comp_codecs") return EvalValue{env.comp_codecs()};
                if (const BigInt* p = env.numeric_field(n.name)) return EvalValue{*p};
                bad_operand("unknown environment parameter env." + n.name);
            } else if constexpr (std::is_same_v<T, Unary>) {
                switch (n.op) {
                    case UnaryOp::Not: return EvalValue{!as_bool(eval(*n.operand))};
                    case UnaryOp::Neg: return EvalValue{BigInt(-as_int(eval(*n.operand)))};
                    case UnaryOp::IsSome:
                        return EvalValue{as_opt(eval(*n.operand)).has_value()};
                    case UnaryOp::IsNone:
                        return EvalValue{!as_opt(eval(*n.operand)).has_value()};
                    case UnaryOp::Unwrap: {
                        EvalValue operand = eval(*n.operand);
                        const std::optional<BigInt>& opt = as_opt(operand);
                        if (!opt)
                            throw EvalError(EvalError::Kind::UnwrapNone,
                                            "unwrap applied to a none value");
                        return EvalValue{*opt};
                    }
                }
                bad_operand("bad unary operator");
            } else if constexpr (std::is_same_v<T, Binary>) {
                switch (n.op) {
                    case BinaryOp::And:
                        return EvalValue{as_bool(eval(*n.lhs)) && as_bool(eval(*n.rhs))};
                    case BinaryOp::Or:
                        return EvalValue{as_bool(eval(*n.lhs)) || as_bool(eval(*n.rhs))};
                    case BinaryOp::Implies:
                        return EvalValue{!as_bool(eval(*n.lhs)) || as_bool(eval(*n.rhs))};
                    default: break;
                }
                EvalValue lv = eval(*n.lhs);
                EvalValue rv = eval(*n.rhs);
                switch (n.op) {
                    case BinaryOp::Add: return EvalValue{BigInt(as_int(lv) + as_int(rv))};
                    case BinaryOp::Sub: return EvalValue{BigInt(as_int(lv) - as_int(rv))};
                    case BinaryOp::Mul: return EvalValue{BigInt(as_int(lv) * as_int(rv))};
                    case BinaryOp::Div:
                    case BinaryOp::Mod: {
                        const BigInt& d = as_int(rv);
                        if (d == 0)
                            throw EvalError(EvalError::Kind::DivByZero, "division by zero");
                        // cpp_int already truncates toward zero with the
                        // dividend's sign on mod, matching the documented
                        // semantics.
                        return EvalValue{n.op == BinaryOp::Div ? BigInt(as_int(lv) / d)
                                                               : BigInt(as_int(lv) % d)};
                    }
                    case BinaryOp::Lt: return EvalValue{as_int(lv) < as_int(rv)};
                    case BinaryOp::Le: return EvalValue{as_int(lv) <= as_int(rv)};
                    case BinaryOp::Gt: return EvalValue{as_int(lv) > as_int(rv)};
                    case BinaryOp::Ge: return EvalValue{as_int(lv) >= as_int(rv)};
                    case BinaryOp::Eq:
                    case BinaryOp::Ne: {
                        if (lv.v.index() != rv.v.index()) bad_operand("== on mixed types");
                        bool eq = lv == rv;
                        return EvalValue{n.op == BinaryOp::Eq ? eq : !eq};
                    }
                    case BinaryOp::In: {
                        const auto& needle = as_str(lv);
                        const auto& hay = as_list(rv);
                        for (const auto& s : hay)
                            if (s == needle) return EvalValue{true};
                        return EvalValue{false};
                    }
                    default: bad_operand("bad binary operator");
                }
            } else {
                static_assert(std::is_same_v<T, Call>);
                if (n.fn == CallFn::Len) {
                    EvalValue a = eval(*n.args[0]);
                    if (const auto* s = std::get_if<std::string>(&a.v))
                        return EvalValue{BigInt(s->size())};
                    return EvalValue{BigInt(as_list(a).size())};
                }
                BigInt best = as_int(eval(*n.args[0]));
                for (std::size_t i = 1; i < n.args.size(); ++i) {
                    BigInt x = as_int(eval(*n.args[i]));
                    if (n.fn == CallFn::Min ? x < best : x > best) best = std::move(x);
                }
                return EvalValue{std::move(best)};
            }
        },
        e.node);
}

bool eval_property(const Expr& e, const BaseValue& self_val, const Environment& env) {
    static const std::map<std::string, BaseValue> empty_view;
    return as_bool(eval_expr(e, self_val, empty_view, env));
}

}  // namespace rwtc
