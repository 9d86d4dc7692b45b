#pragma once

#include "tuplecert/maxpoly.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tuplecert {

/// Variable-free comparison between parameter polynomials with nonnegative
/// coefficients; parameters range over the naturals.
struct AtomicConstraint {
    ParamPoly lhs, rhs;
    bool strict = false;

    bool operator==(const AtomicConstraint&) const = default;
    std::string str() const { return lhs.str() + (strict ? " > " : " >= ") + rhs.str(); }
};

/// Boolean combination of atomic comparisons. Construction folds literal
/// truth values, so a parameter-free build collapses to True or False.
class Constraint {
public:
    enum class Kind { True, False, Atomic, And, Or };

    Constraint() : kind_(Kind::True) {}
    static Constraint truth(bool b);
    /// Cancels the shared part of both sides, then folds if decidable.
    static Constraint atomic(ParamPoly lhs, ParamPoly rhs, bool strict);
    static Constraint all_of(std::vector<Constraint> cs);
    static Constraint any_of(std::vector<Constraint> cs);

    Kind kind() const { return kind_; }
    bool is_true() const { return kind_ == Kind::True; }
    bool is_false() const { return kind_ == Kind::False; }
    const AtomicConstraint& atom() const { return atom_; }
    const std::vector<Constraint>& children() const { return children_; }

    bool eval(const std::map<std::string, long long>& model) const;
    void collect_params(std::set<std::string>& out) const;
    void collect_atomics(std::vector<AtomicConstraint>& out) const;

    /// Three-valued check over the box [0,hi] per unassigned parameter:
    /// 1 = holds for every completion, -1 = fails for every completion,
    /// 0 = undecided.
    int decide(const std::map<std::string, long long>& fixed, long long hi) const;

    std::string str() const;

private:
    Kind kind_;
    AtomicConstraint atom_;
    std::vector<Constraint> children_;
};

struct Model {
    std::map<std::string, long long> values;
};

struct SolveResult {
    bool sat = false;
    Model model;
    long long bound = 0;
};

/// Bounded enumeration over [0,bound]^params in lexicographic parameter-name
/// order with interval pruning; deterministic, returns the lexicographically
/// least model. Unsat only means "no model inside the box".
SolveResult solve(const Constraint& c, long long bound);

/// QF_NIA SMT-LIB2 script: Int constants, nonnegativity, one assertion per
/// clause, check-sat/get-model. Rational coefficients are scaled away.
std::string export_smtlib(const Constraint& c);

/// The comparison procedure of maxpoly::compare with parametric
/// coefficients: the returned constraint (on parameters only) implies
/// p >= q for all natural atom assignments (with the strict-cost margin of
/// one added to the constant when mode is StrictCost). nullopt when the
/// case-split cap is exceeded.
std::optional<Constraint> compare_constraints(const MaxPoly& p, const MaxPoly& q,
                                              CompareMode mode,
                                              const CompareOptions& opts = {});

} // namespace tuplecert
