#include "tuplecert/bounds.hpp"

#include <algorithm>

namespace tuplecert {

namespace {

// Sum of components: additive iff every branch has degree <= 1 and each
// atom's coefficient is at most 1 (constants are unconstrained).
bool sum_additive(const std::vector<MaxPoly>& comps) {
    MaxPoly sum = MaxPoly::constant(Rational(0));
    for (const MaxPoly& c : comps) sum = sum + c;
    for (const Poly& branch : sum.branches()) {
        for (const Monomial& m : branch.terms()) {
            if (m.degree() > 1) return false;
            if (m.degree() == 1 && m.coeff.constant_value() > Rational(1)) return false;
        }
    }
    return true;
}

int max_degree(const std::vector<MaxPoly>& comps) {
    int d = 0;
    for (const MaxPoly& c : comps) d = std::max(d, c.degree());
    return d;
}

} // namespace

BoundClass classify_size(const std::vector<MaxPoly>& comps) {
    BoundClass out;
    out.degree = max_degree(comps);
    if (out.degree <= 1 && sum_additive(comps)) {
        out.kind = BoundClass::Kind::Additive;
        out.degree = 1;
    } else if (out.degree <= 1) {
        out.kind = BoundClass::Kind::Linear;
        out.degree = 1;
    } else {
        out.kind = BoundClass::Kind::Polynomial;
    }
    return out;
}

std::vector<SymbolBounds> classify_interpretation(const Interpretation& interp, const Trs& trs) {
    std::vector<SymbolBounds> out;
    for (SymbolId f = 0; f < trs.symbols().size(); ++f) {
        if (!interp.has(f)) continue;
        const SymbolEntry& e = interp.entry(f);
        SymbolBounds sb;
        sb.symbol = f;
        sb.size = classify_size(e.size_comps);
        // Each cost step is classified like a one-component size function;
        // the weakest step decides.
        sb.cost = BoundClass{};
        for (const MaxPoly& step : e.cost_steps) {
            BoundClass c = classify_size({step});
            if (c.degree > sb.cost.degree || (!c.additive() && sb.cost.additive()) ||
                (!c.linear() && sb.cost.linear()))
                sb.cost = c;
        }
        out.push_back(sb);
    }
    return out;
}

IrcVerdict irc_bound(const Trs& trs, const Interpretation& interp, const Verdict& compat) {
    if (compat.overall != Compatibility::Compatible)
        throw PreconditionViolated("runtime bound requires a compatible interpretation");
    IrcVerdict out;
    std::vector<SymbolBounds> classes = classify_interpretation(interp, trs);

    bool constructors_additive = true;
    bool all_additive = true;
    int max_cost_degree = 0;
    int max_defined_size_degree = 0;
    for (const SymbolBounds& sb : classes) {
        bool is_cons = trs.is_constructor(sb.symbol);
        if (is_cons && !sb.size.additive()) constructors_additive = false;
        if (!sb.size.additive() || !sb.cost.additive()) all_additive = false;
        if (!is_cons) {
            max_cost_degree = std::max(max_cost_degree, sb.cost.degree);
            max_defined_size_degree = std::max(max_defined_size_degree, sb.size.degree);
        }
    }

    if (!constructors_additive) {
        out.kind = IrcVerdict::Kind::Inconclusive;
        out.note = "a constructor size is not additive; data sizes may grow exponentially";
        return out;
    }
    if (all_additive) {
        out.kind = IrcVerdict::Kind::LinearBound;
        out.degree = 1;
        return out;
    }
    out.kind = IrcVerdict::Kind::PolyBound;
    out.degree = std::max(1, max_cost_degree);
    if (max_defined_size_degree > 1) {
        out.estimate = true;
        out.note = "cost-degree exponent; nested (non-basic) calls may exceed it because a "
                   "defined size has degree > 1";
    }
    return out;
}

long long linear_irc_constant(const Trs& trs, const Interpretation& interp) {
    // Data sizes: component sum of a data term d is at most b*|d| when every
    // constructor is additive, with b one more than the largest additive
    // constant. Basic-term costs then stay within gamma + (m+1)*b*n.
    auto const_of = [](const std::vector<MaxPoly>& comps) {
        Rational c(0);
        for (const MaxPoly& p : comps)
            for (const Poly& b : p.branches()) c = std::max(c, b.coeff_of({}).constant_value());
        return c;
    };
    Rational b(1);
    std::size_t max_arity = 0;
    for (SymbolId f = 0; f < trs.symbols().size(); ++f) {
        max_arity = std::max(max_arity, trs.symbol(f).type.arity());
        if (trs.is_constructor(f)) b = std::max(b, const_of(interp.entry(f).size_comps) + Rational(1));
    }
    Rational gamma(0);
    for (SymbolId f : trs.defined_symbols()) {
        Rational g(0);
        for (const MaxPoly& step : interp.entry(f).cost_steps)
            g += const_of({step});
        gamma = std::max(gamma, g);
    }
    Rational c = gamma + Rational(static_cast<long long>(max_arity + 1)) * b;
    long long v = c.num() / c.den();
    return v + 1;
}

} // namespace tuplecert
