#pragma once

#include "tuplecert/maxpoly.hpp"
#include "tuplecert/trs.hpp"

#include <map>
#include <string>
#include <vector>

namespace tuplecert {

struct InterpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Interpretation of one symbol f : i1 => ... => im => k as a cost-size
/// tuple over max-polynomials:
///   cost_steps = e_0, ..., e_m where e_i may mention the first i arguments
///   (e_0 is a constant); applying the value to arguments adds the argument
///   costs plus each e_i evaluated at the argument sizes.
///   size_comps  = one max-polynomial per component of the result sort.
struct SymbolEntry {
    std::vector<std::string> arg_names;
    std::vector<MaxPoly> cost_steps;
    std::vector<MaxPoly> size_comps;
};

/// Map from every signature symbol to its cost-size value, plus the number
/// of size components per sort. Coefficients may mention parameters during
/// search; files on disk are always parameter-free.
class Interpretation {
public:
    explicit Interpretation(const Trs& trs) : ks_(trs.sorts().size(), 1) {}

    int k(SortId s) const { return ks_[s]; }
    void set_k(SortId s, int k) { ks_[s] = k; }

    bool has(SymbolId f) const { return entries_.count(f) != 0; }
    const SymbolEntry& entry(SymbolId f) const;
    void set(SymbolId f, SymbolEntry e) { entries_[f] = std::move(e); }

    bool parameter_free() const;

private:
    std::vector<int> ks_;
    std::map<SymbolId, SymbolEntry> entries_;
};

/// Positional argument names used in interpretation files: arguments of
/// single-component sorts draw from x, y, z, w, u, v; arguments of
/// multi-component sorts from q, l, r, p (then x1, x2, ... / q1, q2, ...).
std::vector<std::string> canonical_arg_names(const Interpretation& interp, const Trs& trs,
                                             const SimpleType& ty);

/// Interpretation of a term with variables read as zero-cost size atoms
/// (v, or v.1 ... v.k for multi-component sorts).
struct SymbolicValue {
    MaxPoly cost;                          ///< accumulated numeric cost part
    std::vector<MaxPoly> sizes;            ///< set once fully applied
    std::vector<SortId> remaining;         ///< unconsumed argument sorts
    std::vector<MaxPoly> pending_cost;     ///< e_{applied+1} .. e_m over formals
    std::vector<MaxPoly> pending_size;     ///< size components over formals
    std::vector<std::string> formal_names; ///< all formals of the source entry
    std::map<Atom, MaxPoly> env;           ///< formal -> actual size substitution
    std::size_t applied = 0;

    bool is_function() const { return !remaining.empty(); }
};

SymbolicValue symbolic_value(const Interpretation& interp, const Trs& trs, SymbolId f);
SymbolicValue symbolic_var(const Interpretation& interp, const Trs& trs, VarId v);
SymbolicValue symbolic_apply(const Interpretation& interp, const Trs& trs, SymbolicValue fun,
                             const SymbolicValue& arg);
SymbolicValue interpret_symbolic(const Interpretation& interp, const Trs& trs, const Term& t);

/// Applies both sides of a function-typed comparison to the same fresh
/// zero-cost size atoms (avoiding `used` names), so the comparison happens
/// at a sort. Realizes the pointwise order on function shapes.
void eta_expand_pair(const Interpretation& interp, const Trs& trs, SymbolicValue& lhs,
                     SymbolicValue& rhs, const SimpleType& ty, std::set<std::string> used);

Interpretation parse_interpretation(const std::string& text, const Trs& trs);
std::string print_interpretation(const Interpretation& interp, const Trs& trs);

} // namespace tuplecert
