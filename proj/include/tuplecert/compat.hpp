#pragma once

#include "tuplecert/interpretation.hpp"

#include <string>
#include <vector>

namespace tuplecert {

enum class RuleStatus { Oriented, CounterExample, Unknown };

struct RuleVerdict {
    RuleStatus status = RuleStatus::Unknown;
    std::map<Atom, long long> witness; ///< violating size assignment (CounterExample)
    MaxPoly lhs_cost, rhs_cost;
    std::vector<std::pair<MaxPoly, MaxPoly>> sizes; ///< lhs/rhs per component
    std::string detail;                             ///< failed or undecided comparison
    std::vector<Atom> split_atoms;
};

enum class Compatibility { Compatible, Incompatible, Unknown };

struct Verdict {
    Compatibility overall = Compatibility::Unknown;
    std::vector<RuleVerdict> rules;
};

/// Orients every rule in the product order: strict decrease on cost,
/// componentwise weak decrease on size. Incompatible is only reported with a
/// concrete witness valuation.
Verdict check(const Trs& trs, const Interpretation& interp, const CompareOptions& opts = {});

/// Per-rule report: symbolic cost/size of both sides, the comparison result,
/// case splits taken, and counterexample valuations.
std::string explain(const Verdict& v, const Trs& trs);

} // namespace tuplecert
