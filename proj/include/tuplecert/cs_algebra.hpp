#pragma once

#include "tuplecert/interpretation.hpp"

#include <map>
#include <vector>

namespace tuplecert {

/// Element of N^k, the size of a fully evaluated value of some sort.
struct SizeVec {
    std::vector<long long> comps;

    bool operator==(const SizeVec&) const = default;

    /// Componentwise order.
    bool geq(const SizeVec& o) const {
        if (comps.size() != o.comps.size()) return false;
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (comps[i] < o.comps[i]) return false;
        return true;
    }

    std::string str() const {
        if (comps.size() == 1) return std::to_string(comps[0]);
        std::string out = "(";
        for (std::size_t i = 0; i < comps.size(); ++i)
            out += (i ? ", " : "") + std::to_string(comps[i]);
        return out + ")";
    }
};

/// Numeric cost-size tuple. At a sort it is (cost_n, size); at a function
/// type the functional cost and size parts are evaluable closures: pending
/// max-polynomials over the entry's formal argument names plus the
/// already-applied argument sizes.
struct CsValue {
    long long cost_n = 0;
    SizeVec size;                          ///< valid once fully applied
    std::vector<SortId> remaining;
    std::vector<MaxPoly> pending_cost;
    std::vector<MaxPoly> pending_size;
    std::vector<std::string> formal_names;
    std::map<Atom, Rational> env;
    std::size_t applied = 0;

    bool is_function() const { return !remaining.empty(); }

    static CsValue scalar(long long cost, SizeVec sz) {
        CsValue v;
        v.cost_n = cost;
        v.size = std::move(sz);
        return v;
    }
};

struct ShapeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Zero-cost assignment of values to variables.
class Valuation {
public:
    void set(VarId v, SizeVec size) { values_[v] = std::move(size); }
    const SizeVec& get(VarId v) const;
    bool has(VarId v) const { return values_.count(v) != 0; }

private:
    std::map<VarId, SizeVec> values_;
};

/// The interpretation of a symbol as a numeric value (parameter-free
/// interpretations only).
CsValue lift_symbol(const Interpretation& interp, const Trs& trs, SymbolId f);

/// Semantic application: consumes the first remaining argument, adding the
/// argument's numeric cost plus the next cost step evaluated at its size.
/// Evaluations must land on integers; a fractional value is an error.
CsValue sem_apply(const Interpretation& interp, const Trs& trs, CsValue fun, const CsValue& arg);

/// Compositional interpretation of a term under a zero-cost valuation.
CsValue interpret_term(const Interpretation& interp, const Trs& trs, const Term& t,
                       const Valuation& alpha);

enum class Relation { Greater, GreaterEq, Incomparable };

struct CompareValueResult {
    Relation rel = Relation::Incomparable;
    bool sampled = false; ///< function shapes are compared on a finite grid
};

/// Product order: Greater means the numeric cost part strictly decreases,
/// functional parts and sizes compare pointwise (on a sampled grid for
/// function shapes, exact at sorts).
CompareValueResult product_compare(const Interpretation& interp, const Trs& trs, const CsValue& a,
                                   const CsValue& b, long long grid_hi = 4);

/// True iff every constructor's cost is identically zero at every
/// application depth (decidable syntactically: nonnegative coefficients).
bool check_zero_cost_data(const Interpretation& interp, const Trs& trs);

} // namespace tuplecert
