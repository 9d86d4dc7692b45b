#include "tuplecert/interpretation.hpp"

#include <algorithm>
#include <sstream>

namespace tuplecert {

const SymbolEntry& Interpretation::entry(SymbolId f) const {
    auto it = entries_.find(f);
    if (it == entries_.end())
        throw InterpError("no interpretation for symbol id " + std::to_string(f));
    return it->second;
}

bool Interpretation::parameter_free() const {
    for (const auto& [f, e] : entries_) {
        for (const MaxPoly& p : e.cost_steps)
            if (!p.parameter_free()) return false;
        for (const MaxPoly& p : e.size_comps)
            if (!p.parameter_free()) return false;
    }
    return true;
}

std::vector<std::string> canonical_arg_names(const Interpretation& interp, const Trs& trs,
                                             const SimpleType& ty) {
    static const char* scalar_pool[] = {"x", "y", "z", "w", "u", "v"};
    static const char* vector_pool[] = {"q", "l", "r", "p"};
    std::vector<std::string> names;
    int scalar_used = 0, vector_used = 0;
    for (SortId s : ty.args) {
        if (interp.k(s) == 1) {
            names.push_back(scalar_used < 6 ? scalar_pool[scalar_used]
                                            : "x" + std::to_string(scalar_used - 5));
            ++scalar_used;
        } else {
            names.push_back(vector_used < 4 ? vector_pool[vector_used]
                                            : "q" + std::to_string(vector_used - 3));
            ++vector_used;
        }
    }
    return names;
}

// --- Symbolic interpretation ---------------------------------------------------

SymbolicValue symbolic_value(const Interpretation& interp, const Trs& trs, SymbolId f) {
    const SymbolEntry& e = interp.entry(f);
    const SimpleType& ty = trs.symbol(f).type;
    SymbolicValue v;
    v.cost = e.cost_steps.at(0); // e_0, a constant
    v.formal_names = e.arg_names;
    v.remaining = ty.args;
    v.pending_cost.assign(e.cost_steps.begin() + 1, e.cost_steps.end());
    v.pending_size = e.size_comps;
    if (ty.args.empty()) {
        v.sizes = e.size_comps;
        v.pending_size.clear();
    }
    return v;
}

SymbolicValue symbolic_var(const Interpretation& interp, const Trs& trs, VarId var) {
    const VarDecl& decl = trs.var(var);
    SymbolicValue v;
    v.cost = MaxPoly::constant(Rational(0));
    int k = interp.k(decl.sort);
    for (int j = 1; j <= k; ++j) v.sizes.push_back(MaxPoly::atom(Atom{decl.name, j}));
    return v;
}

SymbolicValue symbolic_apply(const Interpretation& interp, const Trs& trs, SymbolicValue fun,
                             const SymbolicValue& arg) {
    if (!fun.is_function()) throw InterpError("semantic application of a fully applied value");
    if (arg.is_function())
        throw InterpError("semantic application to a value of function shape");
    SortId arg_sort = fun.remaining.front();
    int k = interp.k(arg_sort);
    if (static_cast<int>(arg.sizes.size()) != k)
        throw InterpError("argument size vector has " + std::to_string(arg.sizes.size()) +
                          " components, expected " + std::to_string(k));
    const std::string& formal = fun.formal_names.at(fun.applied);
    for (int j = 1; j <= k; ++j) fun.env[Atom{formal, j}] = arg.sizes[static_cast<std::size_t>(j - 1)];

    // cost := cost + cost(arg) + e_{applied+1}[sizes]
    fun.cost = fun.cost + arg.cost + fun.pending_cost.at(fun.applied).substitute(fun.env);
    fun.applied += 1;
    fun.remaining.erase(fun.remaining.begin());
    if (fun.remaining.empty()) {
        for (const MaxPoly& comp : fun.pending_size) fun.sizes.push_back(comp.substitute(fun.env));
        fun.pending_size.clear();
        fun.pending_cost.clear();
        fun.env.clear();
        fun.formal_names.clear();
    }
    return fun;
}

SymbolicValue interpret_symbolic(const Interpretation& interp, const Trs& trs, const Term& t) {
    if (t.is_var()) return symbolic_var(interp, trs, t.var_id());
    SymbolicValue v = symbolic_value(interp, trs, t.symbol());
    for (const Term& a : t.args())
        v = symbolic_apply(interp, trs, std::move(v), interpret_symbolic(interp, trs, a));
    return v;
}

void eta_expand_pair(const Interpretation& interp, const Trs& trs, SymbolicValue& lhs,
                     SymbolicValue& rhs, const SimpleType& ty, std::set<std::string> used) {
    int counter = 1;
    for (SortId s : ty.args) {
        std::string name = "e" + std::to_string(counter++);
        while (used.count(name)) name += "'";
        used.insert(name);
        SymbolicValue arg;
        arg.cost = MaxPoly::constant(Rational(0));
        for (int j = 1; j <= interp.k(s); ++j) arg.sizes.push_back(MaxPoly::atom(Atom{name, j}));
        lhs = symbolic_apply(interp, trs, std::move(lhs), arg);
        rhs = symbolic_apply(interp, trs, std::move(rhs), arg);
    }
}

// --- File format -----------------------------------------------------------------

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError(msg, line, 1);
}

// Atoms of e_i may only mention the first `limit` arguments, within their
// component arity.
void validate_atoms(const MaxPoly& p, const std::vector<std::string>& names,
                    const std::vector<SortId>& arg_sorts, const Interpretation& interp,
                    std::size_t limit, int line, const std::string& where) {
    for (const Atom& a : p.atoms()) {
        auto it = std::find(names.begin(), names.end(), a.var);
        if (it == names.end()) {
            std::string valid;
            for (const std::string& n : names) valid += (valid.empty() ? "" : ", ") + n;
            fail(line, where + ": unknown argument name '" + a.var + "' (valid: " +
                           (valid.empty() ? "none" : valid) + ")");
        }
        std::size_t pos = static_cast<std::size_t>(it - names.begin());
        if (pos >= limit)
            fail(line, where + ": argument '" + a.var + "' is not yet bound at this cost step");
        int k = interp.k(arg_sorts[pos]);
        if (a.component < 1 || a.component > k)
            fail(line, where + ": component " + a.var + "." + std::to_string(a.component) +
                           " out of range (k = " + std::to_string(k) + ")");
    }
}

} // namespace

Interpretation parse_interpretation(const std::string& text, const Trs& trs) {
    Interpretation interp(trs);
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    // K lines first so argument pools and component arities are known.
    std::vector<std::pair<int, std::string>> j_lines;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(raw);
        if (std::size_t h = line.find('#'); h != std::string::npos) line = strip(line.substr(0, h));
        if (line.empty()) continue;
        if (line.rfind("K ", 0) == 0) {
            std::istringstream ls(line.substr(2));
            std::string sort_name, eq;
            int value = 0;
            if (!(ls >> sort_name >> eq >> value) || eq != "=" || value < 1)
                fail(lineno, "expected 'K <sort> = <n>' with n >= 1");
            auto s = trs.find_sort(sort_name);
            if (!s) fail(lineno, "undeclared sort '" + sort_name + "'");
            interp.set_k(*s, value);
        } else if (line.rfind("J ", 0) == 0) {
            j_lines.emplace_back(lineno, line.substr(2));
        } else {
            fail(lineno, "expected 'K ...' or 'J ...'");
        }
    }

    for (const auto& [line, body] : j_lines) {
        std::size_t colon = body.find(':');
        if (colon == std::string::npos) fail(line, "expected 'J <symbol> : cost = ... ; size = ...'");
        std::string name = strip(body.substr(0, colon));
        auto f = trs.find_symbol(name);
        if (!f) fail(line, "undeclared symbol '" + name + "'");
        const SimpleType& ty = trs.symbol(*f).type;
        std::size_t m = ty.arity();

        std::string cost_text, size_text;
        std::string rest = body.substr(colon + 1);
        std::size_t semi = rest.find(';');
        if (semi == std::string::npos) fail(line, "expected ';' between cost and size");
        for (const std::string& part : {rest.substr(0, semi), rest.substr(semi + 1)}) {
            std::size_t eq = part.find('=');
            if (eq == std::string::npos) fail(line, "expected 'cost = ...' and 'size = ...'");
            std::string key = strip(part.substr(0, eq));
            std::string value = strip(part.substr(eq + 1));
            if (key == "cost")
                cost_text = value;
            else if (key == "size")
                size_text = value;
            else
                fail(line, "unknown key '" + key + "'");
        }
        if (cost_text.empty() || size_text.empty()) fail(line, "both cost and size are required");

        SymbolEntry entry;
        entry.arg_names = canonical_arg_names(interp, trs, ty);

        std::vector<ExprPtr> cost_exprs;
        std::vector<ExprPtr> size_exprs;
        try {
            cost_exprs = parse_expr_tuple(cost_text);
            size_exprs = parse_expr_tuple(size_text);
        } catch (const std::exception& e) {
            fail(line, std::string("in entry for ") + name + ": " + e.what());
        }

        // cost: single expression e_m (shorthand with e_0..e_{m-1} = 0), or
        // the full tuple (e_0, ..., e_m).
        if (cost_exprs.size() == 1 && m > 0) {
            entry.cost_steps.assign(m + 1, MaxPoly::constant(Rational(0)));
            entry.cost_steps[m] = normalize(*cost_exprs[0]);
        } else if (cost_exprs.size() == m + 1) {
            for (const ExprPtr& e : cost_exprs) entry.cost_steps.push_back(normalize(*e));
        } else {
            fail(line, "cost for " + name + " must be one expression or a tuple of " +
                           std::to_string(m + 1));
        }
        for (std::size_t i = 0; i <= m; ++i)
            validate_atoms(entry.cost_steps[i], entry.arg_names, ty.args, interp, i, line,
                           "cost of " + name);

        int k_res = interp.k(ty.result);
        if (static_cast<int>(size_exprs.size()) != k_res)
            fail(line, "size for " + name + " must have " + std::to_string(k_res) +
                           " component(s)");
        for (const ExprPtr& e : size_exprs) entry.size_comps.push_back(normalize(*e));
        for (const MaxPoly& comp : entry.size_comps)
            validate_atoms(comp, entry.arg_names, ty.args, interp, m, line, "size of " + name);

        interp.set(*f, std::move(entry));
    }

    for (SymbolId f = 0; f < trs.symbols().size(); ++f)
        if (!interp.has(f))
            throw InterpError("missing interpretation for symbol " + trs.symbol(f).name);
    return interp;
}

std::string print_interpretation(const Interpretation& interp, const Trs& trs) {
    std::string out;
    for (SortId s = 0; s < trs.sorts().size(); ++s)
        out += "K " + trs.sort_name(s) + " = " + std::to_string(interp.k(s)) + "\n";
    for (SymbolId f = 0; f < trs.symbols().size(); ++f) {
        if (!interp.has(f)) continue;
        const SymbolEntry& e = interp.entry(f);
        std::size_t m = trs.symbol(f).type.arity();
        bool shorthand = true;
        for (std::size_t i = 0; i < m; ++i) shorthand = shorthand && e.cost_steps[i].is_zero();
        std::string cost;
        if (shorthand || m == 0) {
            cost = e.cost_steps[m].str();
        } else {
            cost = "(";
            for (std::size_t i = 0; i <= m; ++i)
                cost += (i ? ", " : "") + e.cost_steps[i].str();
            cost += ")";
        }
        std::string size;
        if (e.size_comps.size() == 1) {
            size = e.size_comps[0].str();
        } else {
            size = "(";
            for (std::size_t i = 0; i < e.size_comps.size(); ++i)
                size += (i ? ", " : "") + e.size_comps[i].str();
            size += ")";
        }
        out += "J " + trs.symbol(f).name + " : cost = " + cost + " ; size = " + size + "\n";
    }
    return out;
}

} // namespace tuplecert
