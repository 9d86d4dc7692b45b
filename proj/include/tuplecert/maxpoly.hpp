#pragma once

#include "tuplecert/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tuplecert {

/// Size atom: one component of a named variable's size vector. `x` in the
/// surface syntax is shorthand for component 1.
struct Atom {
    std::string var;
    int component = 1;

    auto operator<=>(const Atom&) const = default;
    std::string str() const {
        return component == 1 ? var : var + "." + std::to_string(component);
    }
};

struct UnboundAtom : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UninstantiatedParameter : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NegativeCoefficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Polynomial over parameter symbols with nonnegative rational coefficients.
/// Literal coefficients are the constant case. Kept in a sorted, merged
/// normal form so equality is structural.
class ParamPoly {
public:
    using Powers = std::map<std::string, int>;
    struct Mono {
        Rational coeff;
        Powers powers;
        bool operator==(const Mono&) const = default;
    };

    ParamPoly() = default;
    static ParamPoly constant(const Rational& c);
    static ParamPoly parameter(const std::string& name);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].powers.empty()); }
    Rational constant_value() const;
    const std::vector<Mono>& terms() const { return terms_; }

    friend ParamPoly operator+(const ParamPoly& a, const ParamPoly& b);
    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b);
    bool operator==(const ParamPoly&) const = default;

    Rational eval(const std::map<std::string, long long>& params) const;
    /// Substitutes the given parameters, keeping the others symbolic.
    ParamPoly substitute(const std::map<std::string, long long>& params) const;
    void collect_params(std::set<std::string>& out) const;

    /// Removes the shared part of two polynomials (min coefficient per
    /// monomial); used to present constraints in cancelled form.
    static void cancel_common(ParamPoly& a, ParamPoly& b);

    /// Value bounds over the box [0, hi] per parameter, using monotonicity
    /// in every parameter. Partially assigned parameters are substituted.
    Rational lower_bound(const std::map<std::string, long long>& fixed) const;
    Rational upper_bound(const std::map<std::string, long long>& fixed, long long hi) const;

    std::string str() const;

private:
    void push(Mono m);
    std::vector<Mono> terms_; // sorted by powers, no zero coefficients
};

/// Monomial over size atoms; the coefficient may mention parameters.
struct Monomial {
    ParamPoly coeff;
    std::map<Atom, int> powers;

    int degree() const {
        int d = 0;
        for (auto& [a, e] : powers) d += e;
        return d;
    }
    bool operator==(const Monomial&) const = default;
};

/// Max-free polynomial over size atoms, sorted and merged.
class Poly {
public:
    Poly() = default;
    static Poly constant(const Rational& c);
    static Poly constant(const ParamPoly& c);
    static Poly atom(const Atom& a);
    static Poly from_monomial(Monomial m);

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Monomial>& terms() const { return terms_; }
    ParamPoly coeff_of(const std::map<Atom, int>& powers) const;
    int degree() const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    bool operator==(const Poly&) const = default;

    Rational eval(const std::map<Atom, Rational>& env,
                  const std::map<std::string, long long>& params) const;
    Poly substitute_atoms(const std::map<Atom, Atom>& renaming) const;
    void collect_atoms(std::set<Atom>& out) const;
    void collect_params(std::set<std::string>& out) const;

    std::string str() const;

private:
    void push(Monomial m);
    std::vector<Monomial> terms_;
};

bool operator<(const Poly& a, const Poly& b);

/// Normal form `max(P1, ..., Pn)` with the max outermost; a singleton list
/// is a max-free polynomial. Branches that are coefficientwise dominated by
/// another branch are pruned.
class MaxPoly {
public:
    MaxPoly() : branches_{Poly{}} {}
    explicit MaxPoly(Poly p) : branches_{std::move(p)} {}

    static MaxPoly constant(const Rational& c) { return MaxPoly(Poly::constant(c)); }
    static MaxPoly constant(const ParamPoly& c) { return MaxPoly(Poly::constant(c)); }
    static MaxPoly atom(const Atom& a) { return MaxPoly(Poly::atom(a)); }
    static MaxPoly max_of(const MaxPoly& a, const MaxPoly& b);

    const std::vector<Poly>& branches() const { return branches_; }
    bool is_single() const { return branches_.size() == 1; }
    bool is_zero() const { return branches_.size() == 1 && branches_[0].is_zero(); }
    int degree() const;

    friend MaxPoly operator+(const MaxPoly& a, const MaxPoly& b);
    friend MaxPoly operator*(const MaxPoly& a, const MaxPoly& b);
    bool operator==(const MaxPoly&) const = default;

    Rational eval(const std::map<Atom, Rational>& env,
                  const std::map<std::string, long long>& params = {}) const;

    /// Composition: replaces every atom by a max-polynomial and renormalizes.
    /// All coefficients are nonnegative, so the result is again weakly
    /// monotonic and the max distributes soundly.
    MaxPoly substitute(const std::map<Atom, MaxPoly>& subst) const;

    /// Substitutes parameters by literal naturals; all parameters must be
    /// covered.
    MaxPoly instantiate(const std::map<std::string, long long>& params) const;

    /// Substitutes the given parameters, keeping the others symbolic.
    MaxPoly substitute_params(const std::map<std::string, long long>& params) const;

    std::set<Atom> atoms() const;
    std::set<std::string> params() const;
    bool parameter_free() const { return params().empty(); }

    std::string str() const;

private:
    void normalize();
    std::vector<Poly> branches_;
};

// --- Surface expressions --------------------------------------------------

/// Parsed expression tree for the interpretation-file grammar:
/// naturals, rationals p/q, atoms, +, *, max(a,b), parentheses.
struct Expr {
    enum class Kind { Literal, AtomRef, Add, Mul, Max };
    Kind kind = Kind::Literal;
    Rational literal;
    Atom atom;
    std::shared_ptr<const Expr> lhs, rhs;
};
using ExprPtr = std::shared_ptr<const Expr>;

/// Parses a single expression; `param_names`, when given, makes those
/// identifiers parse as parameters (atoms otherwise).
ExprPtr parse_expr(const std::string& text);

/// Parses a value that may be a tuple `(e1, ..., ek)`; a bare expression
/// yields a one-element vector.
std::vector<ExprPtr> parse_expr_tuple(const std::string& text);

/// Direct tree evaluation, independent of normalization (test oracle).
Rational eval_expr(const Expr& e, const std::map<Atom, Rational>& env);

/// Rewrites an expression into max-outermost normal form. Evaluation is
/// preserved at every point.
MaxPoly normalize(const Expr& e);

// --- Comparison ------------------------------------------------------------

enum class CompareMode { StrictCost, WeakSize };

struct CompareOutcome {
    enum class Kind { Proved, Disproved, Unknown } kind = Kind::Unknown;
    std::map<Atom, long long> witness; // populated for Disproved
    std::vector<Atom> split_atoms;     // atoms the proof case-split on
};

struct CompareOptions {
    int case_split_cap = 4; ///< max distinct max-origin atoms to case split on
    long long grid_hi = 4;  ///< disproof grid [0, grid_hi]^atoms
};

/// Sound sufficient comparison of parameter-free max-polynomials over all
/// natural atom assignments: StrictCost demands p >= q + 1, WeakSize p >= q.
/// Disproved always carries a concrete counterexample.
CompareOutcome compare(const MaxPoly& p, const MaxPoly& q, CompareMode mode,
                       const CompareOptions& opts = {});

// Constraint-producing reduction lives in constraint.hpp (the same
// procedure, with undecidable coefficient comparisons emitted as parameter
// constraints instead of being evaluated).

} // namespace tuplecert
