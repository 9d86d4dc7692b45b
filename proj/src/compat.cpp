#include "tuplecert/compat.hpp"

#include <algorithm>
#include <set>

namespace tuplecert {

Verdict check(const Trs& trs, const Interpretation& interp, const CompareOptions& opts) {
    if (!interp.parameter_free())
        throw InterpError("compatibility check requires a parameter-free interpretation");
    Verdict verdict;
    bool any_unknown = false, any_counter = false;

    for (const Rule& rule : trs.rules()) {
        RuleVerdict rv;
        SymbolicValue lhs = interpret_symbolic(interp, trs, rule.lhs);
        SymbolicValue rhs = interpret_symbolic(interp, trs, rule.rhs);
        if (lhs.is_function()) {
            std::set<std::string> used;
            for (VarId v : free_vars(rule.lhs)) used.insert(trs.var(v).name);
            eta_expand_pair(interp, trs, lhs, rhs, type_of(trs, rule.lhs), std::move(used));
        }
        rv.lhs_cost = lhs.cost;
        rv.rhs_cost = rhs.cost;
        for (std::size_t j = 0; j < lhs.sizes.size(); ++j)
            rv.sizes.emplace_back(lhs.sizes[j], rhs.sizes[j]);

        rv.status = RuleStatus::Oriented;
        CompareOutcome cost = compare(lhs.cost, rhs.cost, CompareMode::StrictCost, opts);
        rv.split_atoms = cost.split_atoms;
        if (cost.kind == CompareOutcome::Kind::Disproved) {
            rv.status = RuleStatus::CounterExample;
            rv.witness = cost.witness;
            rv.detail = "cost " + lhs.cost.str() + " > " + rhs.cost.str() + " fails";
        } else if (cost.kind == CompareOutcome::Kind::Unknown) {
            rv.status = RuleStatus::Unknown;
            rv.detail = "cost " + lhs.cost.str() + " > " + rhs.cost.str() + " undecided";
        }

        for (std::size_t j = 0; rv.status != RuleStatus::CounterExample && j < lhs.sizes.size();
             ++j) {
            CompareOutcome sz = compare(lhs.sizes[j], rhs.sizes[j], CompareMode::WeakSize, opts);
            rv.split_atoms.insert(rv.split_atoms.end(), sz.split_atoms.begin(),
                                  sz.split_atoms.end());
            if (sz.kind == CompareOutcome::Kind::Disproved) {
                rv.status = RuleStatus::CounterExample;
                rv.witness = sz.witness;
                rv.detail = "size component " + std::to_string(j + 1) + ": " +
                            lhs.sizes[j].str() + " >= " + rhs.sizes[j].str() + " fails";
            } else if (sz.kind == CompareOutcome::Kind::Unknown &&
                       rv.status == RuleStatus::Oriented) {
                rv.status = RuleStatus::Unknown;
                rv.detail = "size component " + std::to_string(j + 1) + ": " +
                            lhs.sizes[j].str() + " >= " + rhs.sizes[j].str() + " undecided";
            }
        }

        any_unknown = any_unknown || rv.status == RuleStatus::Unknown;
        any_counter = any_counter || rv.status == RuleStatus::CounterExample;
        verdict.rules.push_back(std::move(rv));
    }

    verdict.overall = any_counter   ? Compatibility::Incompatible
                      : any_unknown ? Compatibility::Unknown
                                    : Compatibility::Compatible;
    return verdict;
}

std::string explain(const Verdict& v, const Trs& trs) {
    std::string out;
    for (std::size_t i = 0; i < v.rules.size(); ++i) {
        const RuleVerdict& rv = v.rules[i];
        out += "rule " + std::to_string(i + 1) + ": " + to_string(trs, trs.rules()[i]) + "\n";
        out += "  cost: " + rv.lhs_cost.str() + " > " + rv.rhs_cost.str() + "\n";
        for (const auto& [l, r] : rv.sizes) out += "  size: " + l.str() + " >= " + r.str() + "\n";
        if (!rv.split_atoms.empty()) {
            out += "  case split on:";
            for (const Atom& a : rv.split_atoms) out += " " + a.str();
            out += "\n";
        }
        switch (rv.status) {
        case RuleStatus::Oriented: out += "  status: oriented\n"; break;
        case RuleStatus::Unknown: out += "  status: unknown (" + rv.detail + ")\n"; break;
        case RuleStatus::CounterExample: {
            out += "  status: counterexample (" + rv.detail + ") at {";
            bool first = true;
            for (const auto& [atom, val] : rv.witness) {
                out += (first ? "" : ", ") + atom.str() + " = " + std::to_string(val);
                first = false;
            }
            out += "}\n";
            break;
        }
        }
    }
    return out;
}

} // namespace tuplecert
