#include "tuplecert/search.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>

namespace tuplecert {

std::string to_string(ShapeClass c) {
    switch (c) {
    case ShapeClass::Additive: return "additive";
    case ShapeClass::Linear: return "linear";
    case ShapeClass::Simple: return "simple";
    case ShapeClass::Quadratic: return "quadratic";
    case ShapeClass::SimpleQuadratic: return "simple-quadratic";
    }
    return "";
}

// --- Stratification -------------------------------------------------------------

namespace {

void collect_symbols(const Term& t, std::set<SymbolId>& out) {
    if (t.is_var()) return;
    out.insert(t.symbol());
    for (const Term& a : t.args()) collect_symbols(a, out);
}

} // namespace

std::vector<std::vector<SymbolId>> stratify(const Trs& trs) {
    std::vector<SymbolId> defined = trs.defined_symbols();
    std::map<SymbolId, std::set<SymbolId>> deps; // f -> defined symbols in rules of f
    for (SymbolId f : defined) deps[f] = {};
    for (const Rule& r : trs.rules()) {
        std::set<SymbolId> used;
        collect_symbols(r.lhs, used);
        collect_symbols(r.rhs, used);
        SymbolId head = r.lhs.symbol();
        for (SymbolId g : used)
            if (trs.is_defined(g) && g != head) deps[head].insert(g);
    }

    // Tarjan; SCCs are emitted with dependencies first because children are
    // completed before their callers.
    std::map<SymbolId, int> index, low;
    std::vector<SymbolId> stack;
    std::set<SymbolId> on_stack;
    std::vector<std::vector<SymbolId>> sccs;
    int counter = 0;

    std::function<void(SymbolId)> visit = [&](SymbolId f) {
        index[f] = low[f] = counter++;
        stack.push_back(f);
        on_stack.insert(f);
        for (SymbolId g : deps[f]) {
            if (!index.count(g)) {
                visit(g);
                low[f] = std::min(low[f], low[g]);
            } else if (on_stack.count(g)) {
                low[f] = std::min(low[f], index[g]);
            }
        }
        if (low[f] == index[f]) {
            std::vector<SymbolId> scc;
            while (true) {
                SymbolId g = stack.back();
                stack.pop_back();
                on_stack.erase(g);
                scc.push_back(g);
                if (g == f) break;
            }
            std::sort(scc.begin(), scc.end());
            sccs.push_back(std::move(scc));
        }
    };
    for (SymbolId f : defined)
        if (!index.count(f)) visit(f);
    return sccs;
}

// --- Templates --------------------------------------------------------------------

namespace {

struct TemplateAtoms {
    std::vector<std::string> arg_names;
    std::vector<Atom> atoms;
};

TemplateAtoms template_atoms(const Interpretation& interp, const Trs& trs, SymbolId f) {
    TemplateAtoms out;
    const SimpleType& ty = trs.symbol(f).type;
    out.arg_names = canonical_arg_names(interp, trs, ty);
    for (std::size_t i = 0; i < ty.args.size(); ++i)
        for (int j = 1; j <= interp.k(ty.args[i]); ++j)
            out.atoms.push_back(Atom{out.arg_names[i], j});
    return out;
}

// Menu of additively bounded multipliers: one atom, or a max of two.
struct MenuChoice {
    int a = 0, b = -1; ///< indices into the atom list; b < 0 means single atom
};

std::vector<MenuChoice> menu_choices(std::size_t atom_count) {
    std::vector<MenuChoice> out;
    for (std::size_t i = 0; i < atom_count; ++i) out.push_back({static_cast<int>(i), -1});
    for (std::size_t i = 0; i < atom_count; ++i)
        for (std::size_t j = i + 1; j < atom_count; ++j)
            out.push_back({static_cast<int>(i), static_cast<int>(j)});
    return out;
}

struct Proposal {
    ShapeClass cls = ShapeClass::Additive;
    int menu = -1;              ///< menu index for Linear/Simple/SimpleQuadratic
    bool constant_cost = false; ///< literal cost 1 (projection-only strata)

    std::string str() const {
        std::string s = to_string(cls);
        if (constant_cost) s = "constant-cost " + s;
        if (menu >= 0) s += " multiplier#" + std::to_string(menu);
        return s;
    }
};

// One parametric component over the proposal's monomial support. `namer`
// assigns the coefficient parameters (c0_f, c1_f, ... in support order).
MaxPoly component_template(const Proposal& prop, const TemplateAtoms& ta,
                           const std::function<std::string(int)>& namer) {
    int counter = 0;
    auto fresh = [&]() { return MaxPoly::constant(ParamPoly::parameter(namer(counter++))); };
    MaxPoly out = fresh();
    for (const Atom& a : ta.atoms) out = out + fresh() * MaxPoly::atom(a);
    if (prop.cls == ShapeClass::Quadratic || prop.cls == ShapeClass::SimpleQuadratic)
        for (std::size_t i = 0; i < ta.atoms.size(); ++i)
            for (std::size_t j = i; j < ta.atoms.size(); ++j)
                out = out + fresh() * MaxPoly::atom(ta.atoms[i]) * MaxPoly::atom(ta.atoms[j]);
    bool wants_menu = prop.cls == ShapeClass::Linear || prop.cls == ShapeClass::Simple ||
                      prop.cls == ShapeClass::SimpleQuadratic;
    if (wants_menu && prop.menu >= 0) {
        std::vector<MenuChoice> menu = menu_choices(ta.atoms.size());
        if (static_cast<std::size_t>(prop.menu) < menu.size()) {
            MenuChoice mc = menu[static_cast<std::size_t>(prop.menu)];
            MaxPoly mult = MaxPoly::atom(ta.atoms[static_cast<std::size_t>(mc.a)]);
            if (mc.b >= 0)
                mult = MaxPoly::max_of(mult,
                                       MaxPoly::atom(ta.atoms[static_cast<std::size_t>(mc.b)]));
            for (const Atom& a : ta.atoms) out = out + fresh() * MaxPoly::atom(a) * mult;
            if (prop.cls == ShapeClass::Simple || prop.cls == ShapeClass::SimpleQuadratic)
                out = out + fresh() * mult;
        }
    }
    return out;
}

SymbolEntry defined_template(const Proposal& prop, const Interpretation& interp, const Trs& trs,
                             SymbolId f) {
    TemplateAtoms ta = template_atoms(interp, trs, f);
    const SimpleType& ty = trs.symbol(f).type;
    const std::string& name = trs.symbol(f).name;
    SymbolEntry e;
    e.arg_names = ta.arg_names;
    e.cost_steps.assign(ty.arity(), MaxPoly::constant(Rational(0))); // shorthand form
    if (prop.constant_cost)
        e.cost_steps.push_back(MaxPoly::constant(Rational(1)));
    else
        e.cost_steps.push_back(component_template(
            prop, ta, [&](int i) { return "c" + std::to_string(i) + "_" + name; }));
    int k_res = interp.k(ty.result);
    for (int l = 1; l <= k_res; ++l) {
        std::string suffix = k_res == 1 ? "_" + name : "_" + name + "_" + std::to_string(l);
        e.size_comps.push_back(component_template(
            prop, ta, [&, suffix](int i) { return "d" + std::to_string(i) + suffix; }));
    }
    return e;
}

// Constructors: zero cost, size additive with unit atom coefficients and one
// fresh constant per component. Atoms keep their component index for
// same-sort arguments and are clamped to the result arity otherwise.
SymbolEntry constructor_template(const Interpretation& interp, const Trs& trs, SymbolId c) {
    const SimpleType& ty = trs.symbol(c).type;
    const std::string& name = trs.symbol(c).name;
    SymbolEntry e;
    e.arg_names = canonical_arg_names(interp, trs, ty);
    e.cost_steps.assign(ty.arity() + 1, MaxPoly::constant(Rational(0)));
    int k_res = interp.k(ty.result);
    for (int l = 1; l <= k_res; ++l) {
        std::string pname = k_res == 1 ? "a_" + name : "a_" + name + "_" + std::to_string(l);
        MaxPoly comp = MaxPoly::constant(ParamPoly::parameter(pname));
        for (std::size_t i = 0; i < ty.args.size(); ++i) {
            for (int j = 1; j <= interp.k(ty.args[i]); ++j) {
                int target = ty.args[i] == ty.result ? j : std::min(j, k_res);
                if (target == l) comp = comp + MaxPoly::atom(Atom{e.arg_names[i], j});
            }
        }
        e.size_comps.push_back(std::move(comp));
    }
    return e;
}

// --- Strategy ---------------------------------------------------------------------

std::size_t stratum_menu_size(const Interpretation& interp, const Trs& trs,
                              const std::vector<SymbolId>& stratum) {
    std::size_t most = 0;
    for (SymbolId f : stratum)
        most = std::max(most, menu_choices(template_atoms(interp, trs, f).atoms.size()).size());
    return most;
}

bool all_projections(const Trs& trs, const std::vector<SymbolId>& stratum) {
    bool any = false;
    for (const Rule& r : trs.rules()) {
        if (std::find(stratum.begin(), stratum.end(), r.lhs.symbol()) == stratum.end()) continue;
        any = true;
        if (!r.rhs.is_var()) return false;
    }
    return any;
}

bool duplicates_variable(const Trs& trs, const std::vector<SymbolId>& stratum) {
    std::function<void(const Term&, std::map<VarId, int>&)> count = [&](const Term& t,
                                                                        std::map<VarId, int>& m) {
        if (t.is_var()) {
            m[t.var_id()] += 1;
            return;
        }
        for (const Term& a : t.args()) count(a, m);
    };
    for (const Rule& r : trs.rules()) {
        if (std::find(stratum.begin(), stratum.end(), r.lhs.symbol()) == stratum.end()) continue;
        std::map<VarId, int> m;
        count(r.rhs, m);
        for (const auto& [v, n] : m)
            if (n > 1) return true;
    }
    return false;
}

std::vector<Proposal> proposal_order(const Interpretation& interp, const Trs& trs,
                                     const std::vector<SymbolId>& stratum,
                                     const SearchConfig& cfg, int k_round,
                                     std::size_t stratum_index) {
    std::size_t menu = stratum_menu_size(interp, trs, stratum);
    std::vector<Proposal> base;
    base.push_back({ShapeClass::Additive, -1, false});
    for (std::size_t m = 0; m < menu; ++m)
        base.push_back({ShapeClass::Linear, static_cast<int>(m), false});
    for (std::size_t m = 0; m < menu; ++m)
        base.push_back({ShapeClass::Simple, static_cast<int>(m), false});
    base.push_back({ShapeClass::Quadratic, -1, false});
    for (std::size_t m = 0; m < menu; ++m)
        base.push_back({ShapeClass::SimpleQuadratic, static_cast<int>(m), false});

    switch (cfg.strategy) {
    case StrategyKind::Progressive: return base;
    case StrategyKind::Blind: {
        std::mt19937_64 rng(cfg.seed * 1000003u + stratum_index * 101u +
                            static_cast<unsigned>(k_round));
        std::shuffle(base.begin(), base.end(), rng);
        return base;
    }
    case StrategyKind::Pattern: {
        if (all_projections(trs, stratum)) {
            std::vector<Proposal> out;
            out.push_back({ShapeClass::Additive, -1, true});
            out.insert(out.end(), base.begin(), base.end());
            return out;
        }
        if (duplicates_variable(trs, stratum)) {
            // At least quadratic: rotate the quadratic families to the front.
            std::stable_partition(base.begin(), base.end(), [](const Proposal& p) {
                return p.cls == ShapeClass::Quadratic || p.cls == ShapeClass::SimpleQuadratic;
            });
            return base;
        }
        return base;
    }
    }
    return base;
}

// --- Constraint generation -----------------------------------------------------------

std::optional<Constraint> generate_stratum_constraints(const Trs& trs,
                                                       const Interpretation& interp,
                                                       const std::vector<SymbolId>& stratum,
                                                       const CompareOptions& opts) {
    std::vector<Constraint> parts;
    for (const Rule& rule : trs.rules()) {
        if (std::find(stratum.begin(), stratum.end(), rule.lhs.symbol()) == stratum.end())
            continue;
        SymbolicValue lhs = interpret_symbolic(interp, trs, rule.lhs);
        SymbolicValue rhs = interpret_symbolic(interp, trs, rule.rhs);
        if (lhs.is_function()) {
            std::set<std::string> used;
            for (VarId v : free_vars(rule.lhs)) used.insert(trs.var(v).name);
            eta_expand_pair(interp, trs, lhs, rhs, type_of(trs, rule.lhs), std::move(used));
        }
        std::optional<Constraint> cost =
            compare_constraints(lhs.cost, rhs.cost, CompareMode::StrictCost, opts);
        if (!cost) return std::nullopt;
        parts.push_back(std::move(*cost));
        for (std::size_t j = 0; j < lhs.sizes.size(); ++j) {
            std::optional<Constraint> sz =
                compare_constraints(lhs.sizes[j], rhs.sizes[j], CompareMode::WeakSize, opts);
            if (!sz) return std::nullopt;
            parts.push_back(std::move(*sz));
        }
    }
    return Constraint::all_of(std::move(parts));
}

void freeze_model(Interpretation& interp, const Trs& trs, const Model& model) {
    for (SymbolId f = 0; f < trs.symbols().size(); ++f) {
        if (!interp.has(f)) continue;
        SymbolEntry e = interp.entry(f);
        for (MaxPoly& p : e.cost_steps) p = p.substitute_params(model.values);
        for (MaxPoly& p : e.size_comps) p = p.substitute_params(model.values);
        interp.set(f, std::move(e));
    }
}

std::set<std::string> interpretation_params(const Interpretation& interp, const Trs& trs) {
    std::set<std::string> params;
    for (SymbolId f = 0; f < trs.symbols().size(); ++f) {
        if (!interp.has(f)) continue;
        const SymbolEntry& e = interp.entry(f);
        for (const MaxPoly& p : e.cost_steps) {
            std::set<std::string> s = p.params();
            params.insert(s.begin(), s.end());
        }
        for (const MaxPoly& p : e.size_comps) {
            std::set<std::string> s = p.params();
            params.insert(s.begin(), s.end());
        }
    }
    return params;
}

} // namespace

// --- Main procedure --------------------------------------------------------------------

SearchOutcome search(const Trs& trs, const SearchConfig& cfg) {
    SearchOutcome outcome;
    auto start = std::chrono::steady_clock::now();
    auto out_of_time = [&]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() >
               cfg.time_budget_seconds;
    };
    std::vector<std::vector<SymbolId>> strata = stratify(trs);
    CompareOptions opts;

    for (int k_round = 1; k_round <= cfg.k_max; ++k_round) {
        Interpretation interp(trs);
        for (SortId s = 0; s < trs.sorts().size(); ++s) interp.set_k(s, k_round);
        for (SymbolId c : trs.constructors()) interp.set(c, constructor_template(interp, trs, c));

        bool round_failed = false;
        std::vector<StratumRecord> records;
        for (std::size_t i = 0; i < strata.size() && !round_failed; ++i) {
            std::vector<Proposal> proposals =
                proposal_order(interp, trs, strata[i], cfg, k_round, i);
            bool solved = false;
            for (const Proposal& prop : proposals) {
                if (out_of_time()) {
                    outcome.timed_out = true;
                    outcome.note = "time budget exhausted";
                    return outcome;
                }
                for (SymbolId f : strata[i])
                    interp.set(f, defined_template(prop, interp, trs, f));
                std::optional<Constraint> c =
                    generate_stratum_constraints(trs, interp, strata[i], opts);
                if (!c) continue; // simplification failed: next shape
                SolveResult sr = solve(*c, cfg.coeff_bound);
                if (!sr.sat) continue;
                StratumRecord rec;
                rec.index = i;
                rec.symbols = strata[i];
                rec.shape = prop.str();
                rec.constraints = *c;
                rec.model = sr.model;
                rec.smt = export_smtlib(*c);
                records.push_back(std::move(rec));
                freeze_model(interp, trs, sr.model);
                solved = true;
                break;
            }
            round_failed = !solved;
        }
        if (round_failed) continue; // escalate every sort's component count

        // Constructor constants never constrained default to zero.
        std::map<std::string, long long> defaults;
        for (const std::string& p : interpretation_params(interp, trs)) defaults[p] = 0;
        if (!defaults.empty()) freeze_model(interp, trs, Model{defaults});

        Verdict verdict = check(trs, interp, opts);
        if (verdict.overall == Compatibility::Compatible) {
            outcome.yes = true;
            outcome.interpretation = std::move(interp);
            outcome.strata = std::move(records);
            return outcome;
        }
        outcome.note = "candidate failed post-verification";
    }
    return outcome;
}

} // namespace tuplecert
