#include "tuplecert/cs_algebra.hpp"

#include <algorithm>

namespace tuplecert {

const SizeVec& Valuation::get(VarId v) const {
    auto it = values_.find(v);
    if (it == values_.end())
        throw InterpError("valuation does not cover variable id " + std::to_string(v));
    return it->second;
}

namespace {

long long to_natural(const Rational& r, const char* what) {
    if (!r.is_integer())
        throw InterpError(std::string(what) + " evaluates to the non-integer " + r.str());
    long long v = r.as_integer();
    if (v < 0) throw InterpError(std::string(what) + " evaluates to the negative " + r.str());
    return v;
}

} // namespace

CsValue lift_symbol(const Interpretation& interp, const Trs& trs, SymbolId f) {
    const SymbolEntry& e = interp.entry(f);
    const SimpleType& ty = trs.symbol(f).type;
    CsValue v;
    v.cost_n = to_natural(e.cost_steps.at(0).eval({}), "cost step");
    v.remaining = ty.args;
    v.formal_names = e.arg_names;
    v.pending_cost.assign(e.cost_steps.begin() + 1, e.cost_steps.end());
    v.pending_size = e.size_comps;
    if (ty.args.empty()) {
        for (const MaxPoly& comp : e.size_comps)
            v.size.comps.push_back(to_natural(comp.eval({}), "size component"));
        v.pending_size.clear();
    }
    return v;
}

CsValue sem_apply(const Interpretation& interp, const Trs& trs, CsValue fun, const CsValue& arg) {
    (void)trs;
    if (!fun.is_function()) throw ShapeMismatch("application of a fully applied value");
    if (arg.is_function()) throw ShapeMismatch("application to a value of function shape");
    SortId arg_sort = fun.remaining.front();
    int k = interp.k(arg_sort);
    if (static_cast<int>(arg.size.comps.size()) != k)
        throw ShapeMismatch("argument size has " + std::to_string(arg.size.comps.size()) +
                            " components, expected " + std::to_string(k));
    const std::string& formal = fun.formal_names.at(fun.applied);
    for (int j = 1; j <= k; ++j)
        fun.env[Atom{formal, j}] = Rational(arg.size.comps[static_cast<std::size_t>(j - 1)]);

    fun.cost_n += arg.cost_n +
                  to_natural(fun.pending_cost.at(fun.applied).eval(fun.env), "cost step");
    fun.applied += 1;
    fun.remaining.erase(fun.remaining.begin());
    if (fun.remaining.empty()) {
        for (const MaxPoly& comp : fun.pending_size)
            fun.size.comps.push_back(to_natural(comp.eval(fun.env), "size component"));
        fun.pending_size.clear();
        fun.pending_cost.clear();
        fun.env.clear();
        fun.formal_names.clear();
    }
    return fun;
}

CsValue interpret_term(const Interpretation& interp, const Trs& trs, const Term& t,
                       const Valuation& alpha) {
    if (t.is_var()) return CsValue::scalar(0, alpha.get(t.var_id()));
    CsValue v = lift_symbol(interp, trs, t.symbol());
    for (const Term& a : t.args())
        v = sem_apply(interp, trs, std::move(v), interpret_term(interp, trs, a, alpha));
    return v;
}

namespace {

// Enumerates grid points for the remaining arguments of a function value:
// one natural per size component, all in [0, hi].
bool next_point(std::vector<long long>& point, long long hi) {
    std::size_t i = 0;
    while (i < point.size() && point[i] == hi) point[i++] = 0;
    if (i == point.size()) return false;
    ++point[i];
    return true;
}

} // namespace

CompareValueResult product_compare(const Interpretation& interp, const Trs& trs, const CsValue& a,
                                   const CsValue& b, long long grid_hi) {
    CompareValueResult out;
    if (a.remaining != b.remaining)
        throw ShapeMismatch("compared values have different type shapes");
    if (!a.is_function()) {
        if (a.size.comps.size() != b.size.comps.size())
            throw ShapeMismatch("compared values have different size arities");
        if (!a.size.geq(b.size)) return out;
        out.rel = a.cost_n > b.cost_n  ? Relation::Greater
                  : a.cost_n >= b.cost_n ? Relation::GreaterEq
                                         : Relation::Incomparable;
        return out;
    }

    // Function shape: numeric heads exactly, functional parts pointwise on a
    // grid of argument sizes.
    out.sampled = true;
    std::size_t total_comps = 0;
    for (SortId s : a.remaining) total_comps += static_cast<std::size_t>(interp.k(s));
    std::vector<long long> point(total_comps, 0);

    bool cost_fn_geq = true;
    bool size_geq = true;
    do {
        CsValue fa = a, fb = b;
        std::size_t idx = 0;
        for (SortId s : a.remaining) {
            SizeVec sz;
            for (int j = 0; j < interp.k(s); ++j) sz.comps.push_back(point[idx++]);
            long long ca = fa.cost_n, cb = fb.cost_n;
            fa = sem_apply(interp, trs, std::move(fa), CsValue::scalar(0, sz));
            fb = sem_apply(interp, trs, std::move(fb), CsValue::scalar(0, sz));
            // Pointwise comparison of this cost step.
            if (fa.cost_n - ca < fb.cost_n - cb) cost_fn_geq = false;
        }
        if (!fa.size.geq(fb.size)) size_geq = false;
    } while (cost_fn_geq && size_geq && next_point(point, grid_hi));

    if (!size_geq || !cost_fn_geq) return out;
    out.rel = a.cost_n > b.cost_n  ? Relation::Greater
              : a.cost_n >= b.cost_n ? Relation::GreaterEq
                                     : Relation::Incomparable;
    return out;
}

bool check_zero_cost_data(const Interpretation& interp, const Trs& trs) {
    for (SymbolId f : trs.constructors()) {
        const SymbolEntry& e = interp.entry(f);
        for (const MaxPoly& step : e.cost_steps)
            if (!step.is_zero()) return false;
    }
    return true;
}

} // namespace tuplecert
