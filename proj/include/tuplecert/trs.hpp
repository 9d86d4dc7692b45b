#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tuplecert {

using SortId = std::uint32_t;
using SymbolId = std::uint32_t;
using VarId = std::uint32_t;

/// First-order simple type: arg sorts in order, then a result sort.
struct SimpleType {
    std::vector<SortId> args;
    SortId result = 0;

    std::size_t arity() const { return args.size(); }
    bool operator==(const SimpleType&) const = default;

    /// Type after consuming the first n arguments.
    SimpleType drop(std::size_t n) const {
        SimpleType t;
        t.args.assign(args.begin() + static_cast<std::ptrdiff_t>(n), args.end());
        t.result = result;
        return t;
    }
};

struct Symbol {
    std::string name;
    SimpleType type;
};

struct VarDecl {
    std::string name;
    SortId sort = 0;
};

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& msg, int line_, int column_)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

struct TypeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RuleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Trs;

/// Applicative term in flattened form: a head (symbol or variable) applied
/// to zero or more argument terms. Variables always have sort type, so only
/// symbol heads carry arguments. A symbol head may be partially applied.
class Term {
public:
    static Term var(VarId v) {
        Term t;
        t.is_var_ = true;
        t.id_ = v;
        return t;
    }

    /// Type-checked construction; throws TypeError on arity overflow or a
    /// sort mismatch in any argument position.
    static Term app(const Trs& trs, SymbolId f, std::vector<Term> args);

    /// Unchecked construction for internal use on already-validated pieces.
    static Term app_unchecked(SymbolId f, std::vector<Term> args) {
        Term t;
        t.is_var_ = false;
        t.id_ = f;
        t.args_ = std::move(args);
        return t;
    }

    bool is_var() const { return is_var_; }
    VarId var_id() const { return id_; }
    SymbolId symbol() const { return id_; }
    const std::vector<Term>& args() const { return args_; }

    /// Number of symbol and variable occurrences.
    std::size_t size() const {
        std::size_t n = 1;
        for (const Term& a : args_) n += a.size();
        return n;
    }

    bool operator==(const Term& o) const {
        return is_var_ == o.is_var_ && id_ == o.id_ && args_ == o.args_;
    }

    std::size_t hash() const {
        std::size_t h = is_var_ ? 0x9e3779b97f4a7c15ull : 0x517cc1b727220a95ull;
        h ^= id_ + 0x9e3779b9ull + (h << 6) + (h >> 2);
        for (const Term& a : args_) h ^= a.hash() + 0x9e3779b9ull + (h << 6) + (h >> 2);
        return h;
    }

private:
    bool is_var_ = false;
    std::uint32_t id_ = 0;
    std::vector<Term> args_;
};

struct TermHash {
    std::size_t operator()(const Term& t) const { return t.hash(); }
};

struct Rule {
    Term lhs;
    Term rhs;
};

/// A validated term rewriting system: sorts, signature, declared variables,
/// rules, and the constructor/defined partition.
class Trs {
public:
    SortId add_sort(const std::string& name);
    SymbolId add_symbol(const std::string& name, SimpleType type);
    VarId add_var(const std::string& name, SortId sort);

    /// Validates both sides, checks the rule shape, and updates the
    /// defined-symbol set.
    void add_rule(Term lhs, Term rhs);

    const std::vector<std::string>& sorts() const { return sorts_; }
    const std::vector<Symbol>& symbols() const { return symbols_; }
    const std::vector<VarDecl>& vars() const { return vars_; }
    const std::vector<Rule>& rules() const { return rules_; }

    const std::string& sort_name(SortId s) const { return sorts_[s]; }
    const Symbol& symbol(SymbolId f) const { return symbols_[f]; }
    const VarDecl& var(VarId v) const { return vars_[v]; }

    bool is_defined(SymbolId f) const { return defined_[f]; }
    bool is_constructor(SymbolId f) const { return !defined_[f]; }
    std::vector<SymbolId> defined_symbols() const;
    std::vector<SymbolId> constructors() const;

    std::optional<SortId> find_sort(const std::string& name) const;
    std::optional<SymbolId> find_symbol(const std::string& name) const;
    std::optional<VarId> find_var(const std::string& name) const;

private:
    std::vector<std::string> sorts_;
    std::vector<Symbol> symbols_;
    std::vector<VarDecl> vars_;
    std::vector<Rule> rules_;
    std::vector<bool> defined_;
    std::map<std::string, SortId> sort_by_name_;
    std::map<std::string, SymbolId> symbol_by_name_;
    std::map<std::string, VarId> var_by_name_;
};

/// The unique type of a well-formed term; cheap (no traversal of shared
/// structure beyond the spine).
SimpleType type_of(const Trs& trs, const Term& t);

/// Sort of a term known to be fully applied.
SortId sort_of(const Trs& trs, const Term& t);

bool is_data(const Trs& trs, const Term& t);
bool is_basic(const Trs& trs, const Term& t);

using Substitution = std::map<VarId, Term>;

/// Homomorphic replacement of variables; throws TypeError if the
/// substitution is not sort-preserving.
Term apply_subst(const Trs& trs, const Term& t, const Substitution& subst);

/// Applies extra arguments to a term of function type, flattening the spine.
Term apply_args(const Trs& trs, Term head, std::vector<Term> extra);

std::vector<VarId> free_vars(const Term& t);

std::string to_string(const Trs& trs, const Term& t);
std::string to_string(const Trs& trs, const SimpleType& ty);
std::string to_string(const Trs& trs, const Rule& r);

/// Parses the line-oriented TRS format (SORTS/SIG/VARS/RULES sections).
Trs parse_trs(const std::string& text);

} // namespace tuplecert
