#include "tuplecert/trs.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace tuplecert {

Term Term::app(const Trs& trs, SymbolId f, std::vector<Term> args) {
    const SimpleType& ty = trs.symbol(f).type;
    if (args.size() > ty.arity())
        throw TypeError("symbol " + trs.symbol(f).name + " applied to " +
                        std::to_string(args.size()) + " arguments but has arity " +
                        std::to_string(ty.arity()));
    for (std::size_t i = 0; i < args.size(); ++i) {
        SimpleType at = type_of(trs, args[i]);
        if (!at.args.empty() || at.result != ty.args[i])
            throw TypeError("argument " + std::to_string(i + 1) + " of " + trs.symbol(f).name +
                            " has type " + to_string(trs, at) + ", expected sort " +
                            trs.sort_name(ty.args[i]));
    }
    return app_unchecked(f, std::move(args));
}

SortId Trs::add_sort(const std::string& name) {
    auto it = sort_by_name_.find(name);
    if (it != sort_by_name_.end()) return it->second;
    SortId id = static_cast<SortId>(sorts_.size());
    sorts_.push_back(name);
    sort_by_name_.emplace(name, id);
    return id;
}

SymbolId Trs::add_symbol(const std::string& name, SimpleType type) {
    if (symbol_by_name_.count(name))
        throw TypeError("duplicate symbol declaration: " + name);
    if (var_by_name_.count(name))
        throw TypeError("name used both as symbol and variable: " + name);
    SymbolId id = static_cast<SymbolId>(symbols_.size());
    symbols_.push_back(Symbol{name, std::move(type)});
    defined_.push_back(false);
    symbol_by_name_.emplace(name, id);
    return id;
}

VarId Trs::add_var(const std::string& name, SortId sort) {
    if (var_by_name_.count(name))
        throw TypeError("duplicate variable declaration: " + name);
    if (symbol_by_name_.count(name))
        throw TypeError("name used both as symbol and variable: " + name);
    VarId id = static_cast<VarId>(vars_.size());
    vars_.push_back(VarDecl{name, sort});
    var_by_name_.emplace(name, id);
    return id;
}

void Trs::add_rule(Term lhs, Term rhs) {
    if (lhs.is_var())
        throw RuleError("rule left-hand side is a variable");
    SimpleType lt = type_of(*this, lhs);
    SimpleType rt = type_of(*this, rhs);
    if (lt != rt)
        throw RuleError("rule sides have different types: " + to_string(*this, lt) + " vs " +
                        to_string(*this, rt));
    std::vector<VarId> lv = free_vars(lhs);
    std::set<VarId> lset(lv.begin(), lv.end());
    for (VarId v : free_vars(rhs))
        if (!lset.count(v))
            throw RuleError("variable " + var(v).name +
                            " occurs on the right-hand side but not on the left");
    defined_[lhs.symbol()] = true;
    rules_.push_back(Rule{std::move(lhs), std::move(rhs)});
}

std::vector<SymbolId> Trs::defined_symbols() const {
    std::vector<SymbolId> out;
    for (SymbolId f = 0; f < symbols_.size(); ++f)
        if (defined_[f]) out.push_back(f);
    return out;
}

std::vector<SymbolId> Trs::constructors() const {
    std::vector<SymbolId> out;
    for (SymbolId f = 0; f < symbols_.size(); ++f)
        if (!defined_[f]) out.push_back(f);
    return out;
}

std::optional<SortId> Trs::find_sort(const std::string& name) const {
    auto it = sort_by_name_.find(name);
    if (it == sort_by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<SymbolId> Trs::find_symbol(const std::string& name) const {
    auto it = symbol_by_name_.find(name);
    if (it == symbol_by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<VarId> Trs::find_var(const std::string& name) const {
    auto it = var_by_name_.find(name);
    if (it == var_by_name_.end()) return std::nullopt;
    return it->second;
}

SimpleType type_of(const Trs& trs, const Term& t) {
    if (t.is_var()) return SimpleType{{}, trs.var(t.var_id()).sort};
    return trs.symbol(t.symbol()).type.drop(t.args().size());
}

SortId sort_of(const Trs& trs, const Term& t) {
    SimpleType ty = type_of(trs, t);
    if (!ty.args.empty())
        throw TypeError("term " + to_string(trs, t) + " is not fully applied");
    return ty.result;
}

bool is_data(const Trs& trs, const Term& t) {
    if (t.is_var()) return false;
    if (trs.is_defined(t.symbol())) return false;
    if (t.args().size() != trs.symbol(t.symbol()).type.arity()) return false;
    return std::all_of(t.args().begin(), t.args().end(),
                       [&](const Term& a) { return is_data(trs, a); });
}

bool is_basic(const Trs& trs, const Term& t) {
    if (t.is_var() || !trs.is_defined(t.symbol())) return false;
    if (t.args().size() != trs.symbol(t.symbol()).type.arity()) return false;
    return std::all_of(t.args().begin(), t.args().end(),
                       [&](const Term& a) { return is_data(trs, a); });
}

Term apply_args(const Trs& trs, Term head, std::vector<Term> extra) {
    if (extra.empty()) return head;
    if (head.is_var())
        throw TypeError("variable " + trs.var(head.var_id()).name + " used as a function");
    std::vector<Term> args = head.args();
    for (Term& e : extra) args.push_back(std::move(e));
    return Term::app(trs, head.symbol(), std::move(args));
}

Term apply_subst(const Trs& trs, const Term& t, const Substitution& subst) {
    if (t.is_var()) {
        auto it = subst.find(t.var_id());
        if (it == subst.end()) return t;
        SimpleType ty = type_of(trs, it->second);
        if (!ty.args.empty() || ty.result != trs.var(t.var_id()).sort)
            throw TypeError("substitution maps " + trs.var(t.var_id()).name +
                            " to a term of a different sort");
        return it->second;
    }
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(apply_subst(trs, a, subst));
    return Term::app_unchecked(t.symbol(), std::move(args));
}

static void collect_vars(const Term& t, std::vector<VarId>& out, std::set<VarId>& seen) {
    if (t.is_var()) {
        if (seen.insert(t.var_id()).second) out.push_back(t.var_id());
        return;
    }
    for (const Term& a : t.args()) collect_vars(a, out, seen);
}

std::vector<VarId> free_vars(const Term& t) {
    std::vector<VarId> out;
    std::set<VarId> seen;
    collect_vars(t, out, seen);
    return out;
}

std::string to_string(const Trs& trs, const Term& t) {
    if (t.is_var()) return trs.var(t.var_id()).name;
    if (t.args().empty()) return trs.symbol(t.symbol()).name;
    std::string out = trs.symbol(t.symbol()).name;
    for (const Term& a : t.args()) {
        out += ' ';
        bool atomic = a.is_var() || a.args().empty();
        if (atomic)
            out += to_string(trs, a);
        else
            out += "(" + to_string(trs, a) + ")";
    }
    return out;
}

std::string to_string(const Trs& trs, const SimpleType& ty) {
    std::string out;
    for (SortId s : ty.args) out += trs.sort_name(s) + " => ";
    out += trs.sort_name(ty.result);
    return out;
}

std::string to_string(const Trs& trs, const Rule& r) {
    return to_string(trs, r.lhs) + " -> " + to_string(trs, r.rhs);
}

// --- TRS file parsing ---------------------------------------------------

namespace {

struct Token {
    std::string text;
    int line, column;
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

// Splits one logical line into identifier / punctuation tokens.
std::vector<Token> tokenize_line(const std::string& line, int lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        int col = static_cast<int>(i) + 1;
        if (ident_char(c)) {
            std::size_t j = i;
            while (j < line.size() && ident_char(line[j])) ++j;
            out.push_back(Token{line.substr(i, j - i), lineno, col});
            i = j;
        } else if (c == '(' || c == ')' || c == ':' || c == ',') {
            out.push_back(Token{std::string(1, c), lineno, col});
            ++i;
        } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
            out.push_back(Token{"->", lineno, col});
            i += 2;
        } else if (c == '=' && i + 1 < line.size() && line[i + 1] == '>') {
            out.push_back(Token{"=>", lineno, col});
            i += 2;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", lineno, col);
        }
    }
    return out;
}

bool valid_sort_or_var_name(const std::string& s) {
    return !s.empty() && std::isalpha(static_cast<unsigned char>(s[0]));
}

bool valid_symbol_name(const std::string& s) {
    // Symbols may be purely numeric (0, 1, ...) when declared in SIG.
    if (s.empty()) return false;
    char c = s[0];
    return std::isalpha(static_cast<unsigned char>(c)) ||
           std::isdigit(static_cast<unsigned char>(c));
}

class TermParser {
public:
    TermParser(const Trs& trs, const std::vector<Token>& toks, std::size_t start)
        : trs_(trs), toks_(toks), pos_(start) {}

    // term := atom+   (juxtaposition); atom := ident | '(' term ')'
    Term parse(const char* stop = nullptr) {
        Term head = atom(stop);
        std::vector<Term> extra;
        while (pos_ < toks_.size() && toks_[pos_].text != ")" &&
               (!stop || toks_[pos_].text != stop))
            extra.push_back(atom(stop));
        if (extra.empty()) return head;
        if (head.is_var())
            throw ParseError("variable " + trs_.var(head.var_id()).name + " used as a function",
                             toks_[pos_ - 1].line, toks_[pos_ - 1].column);
        std::vector<Term> args = head.args();
        for (Term& e : extra) args.push_back(std::move(e));
        return Term::app(trs_, head.symbol(), std::move(args));
    }

    std::size_t pos() const { return pos_; }

private:
    Term atom(const char* stop) {
        const Token& tk = need("term");
        if (tk.text == "(") {
            ++pos_;
            Term t = parse(stop);
            const Token& close = need("')'");
            if (close.text != ")") throw ParseError("expected ')'", close.line, close.column);
            ++pos_;
            return t;
        }
        ++pos_;
        if (auto f = trs_.find_symbol(tk.text)) return Term::app_unchecked(*f, {});
        if (auto v = trs_.find_var(tk.text)) return Term::var(*v);
        throw ParseError("undeclared identifier '" + tk.text + "'", tk.line, tk.column);
    }

    const Token& need(const char* what) {
        if (pos_ >= toks_.size())
            throw ParseError(std::string("expected ") + what + " but line ended",
                             toks_.empty() ? 0 : toks_.back().line,
                             toks_.empty() ? 0 : toks_.back().column + 1);
        return toks_[pos_];
    }

    const Trs& trs_;
    const std::vector<Token>& toks_;
    std::size_t pos_;
};

} // namespace

Trs parse_trs(const std::string& text) {
    Trs trs;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool in_rules = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::vector<Token> toks = tokenize_line(raw, lineno);
        if (toks.empty()) continue;
        const std::string& kw = toks[0].text;

        if (!in_rules && kw == "SORTS") {
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (!valid_sort_or_var_name(toks[i].text))
                    throw ParseError("invalid sort name '" + toks[i].text + "'", toks[i].line,
                                     toks[i].column);
                trs.add_sort(toks[i].text);
            }
            continue;
        }
        if (!in_rules && kw == "SIG") {
            // SIG name : sort => ... => sort
            if (toks.size() < 4 || toks[2].text != ":")
                throw ParseError("expected 'SIG name : type'", toks[0].line, toks[0].column);
            if (!valid_symbol_name(toks[1].text))
                throw ParseError("invalid symbol name '" + toks[1].text + "'", toks[1].line,
                                 toks[1].column);
            std::vector<SortId> parts;
            for (std::size_t i = 3; i < toks.size(); ++i) {
                if (i % 2 == 1) {
                    auto s = trs.find_sort(toks[i].text);
                    if (!s)
                        throw ParseError("undeclared sort '" + toks[i].text + "'", toks[i].line,
                                         toks[i].column);
                    parts.push_back(*s);
                } else if (toks[i].text != "=>") {
                    throw ParseError("expected '=>'", toks[i].line, toks[i].column);
                }
            }
            if (toks.size() % 2 == 1)
                throw ParseError("type ends with '=>'", toks.back().line, toks.back().column);
            SimpleType ty;
            ty.result = parts.back();
            parts.pop_back();
            ty.args = std::move(parts);
            try {
                trs.add_symbol(toks[1].text, std::move(ty));
            } catch (const TypeError& e) {
                throw ParseError(e.what(), toks[1].line, toks[1].column);
            }
            continue;
        }
        if (!in_rules && kw == "VARS") {
            // VARS x y : sort
            std::size_t colon = 0;
            for (std::size_t i = 1; i < toks.size(); ++i)
                if (toks[i].text == ":") colon = i;
            if (colon == 0 || colon + 1 != toks.size() - 1)
                throw ParseError("expected 'VARS names... : sort'", toks[0].line, toks[0].column);
            auto s = trs.find_sort(toks[colon + 1].text);
            if (!s)
                throw ParseError("undeclared sort '" + toks[colon + 1].text + "'",
                                 toks[colon + 1].line, toks[colon + 1].column);
            for (std::size_t i = 1; i < colon; ++i) {
                if (!valid_sort_or_var_name(toks[i].text))
                    throw ParseError("invalid variable name '" + toks[i].text + "'", toks[i].line,
                                     toks[i].column);
                try {
                    trs.add_var(toks[i].text, *s);
                } catch (const TypeError& e) {
                    throw ParseError(e.what(), toks[i].line, toks[i].column);
                }
            }
            continue;
        }
        if (kw == "RULES") {
            in_rules = true;
            if (toks.size() > 1)
                throw ParseError("unexpected token after RULES", toks[1].line, toks[1].column);
            continue;
        }
        if (!in_rules)
            throw ParseError("expected SORTS, SIG, VARS or RULES", toks[0].line, toks[0].column);

        // rule line: term -> term
        TermParser lp(trs, toks, 0);
        Term lhs = lp.parse("->");
        if (lp.pos() >= toks.size() || toks[lp.pos()].text != "->")
            throw ParseError("expected '->'", toks.back().line, toks.back().column + 1);
        TermParser rp(trs, toks, lp.pos() + 1);
        Term rhs = rp.parse();
        if (rp.pos() != toks.size())
            throw ParseError("trailing tokens after rule", toks[rp.pos()].line,
                             toks[rp.pos()].column);
        trs.add_rule(std::move(lhs), std::move(rhs));
    }
    return trs;
}

} // namespace tuplecert
