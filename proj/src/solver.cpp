#include "tuplecert/constraint.hpp"

#include <numeric>

namespace tuplecert {

namespace {

bool dfs(const Constraint& c, const std::vector<std::string>& params, std::size_t next,
         long long bound, std::map<std::string, long long>& assignment) {
    int verdict = c.decide(assignment, bound);
    if (verdict == -1) return false;
    if (next == params.size()) return verdict == 1 || c.eval(assignment);
    if (verdict == 1) {
        // Every completion works; extend with zeros for the least model.
        for (std::size_t i = next; i < params.size(); ++i) assignment[params[i]] = 0;
        return true;
    }
    for (long long v = 0; v <= bound; ++v) {
        assignment[params[next]] = v;
        if (dfs(c, params, next + 1, bound, assignment)) return true;
        assignment.erase(params[next]);
    }
    return false;
}

} // namespace

SolveResult solve(const Constraint& c, long long bound) {
    SolveResult res;
    res.bound = bound;
    std::set<std::string> param_set;
    c.collect_params(param_set);
    std::vector<std::string> params(param_set.begin(), param_set.end());
    std::map<std::string, long long> assignment;
    if (!dfs(c, params, 0, bound, assignment)) return res;
    res.sat = true;
    res.model.values = std::move(assignment);
    for (const std::string& p : params)
        if (!res.model.values.count(p)) res.model.values[p] = 0;
    if (!c.eval(res.model.values))
        throw std::logic_error("solver produced a model that does not satisfy the constraints");
    return res;
}

// --- SMT-LIB2 export ----------------------------------------------------------

namespace {

long long denominator_lcm(const ParamPoly& p) {
    long long l = 1;
    for (const auto& m : p.terms()) l = std::lcm(l, m.coeff.den());
    return l;
}

std::string smt_mono(const ParamPoly::Mono& m, long long scale) {
    Rational c = m.coeff * Rational(scale);
    std::vector<std::string> factors;
    if (c != Rational(1) || m.powers.empty()) factors.push_back(c.as_integer() >= 0
                                                                    ? std::to_string(c.as_integer())
                                                                    : ("(- " + std::to_string(-c.as_integer()) + ")"));
    for (auto it = m.powers.rbegin(); it != m.powers.rend(); ++it)
        for (int e = 0; e < it->second; ++e) factors.push_back(it->first);
    if (factors.size() == 1) return factors[0];
    std::string out = "(*";
    for (const std::string& f : factors) out += " " + f;
    return out + ")";
}

std::string smt_poly(const ParamPoly& p, long long scale) {
    if (p.is_zero()) return "0";
    if (p.terms().size() == 1) return smt_mono(p.terms()[0], scale);
    std::string out = "(+";
    for (const auto& m : p.terms()) out += " " + smt_mono(m, scale);
    return out + ")";
}

std::string smt_constraint(const Constraint& c) {
    switch (c.kind()) {
    case Constraint::Kind::True: return "true";
    case Constraint::Kind::False: return "false";
    case Constraint::Kind::Atomic: {
        const AtomicConstraint& a = c.atom();
        long long scale = std::lcm(denominator_lcm(a.lhs), denominator_lcm(a.rhs));
        return std::string("(") + (a.strict ? ">" : ">=") + " " + smt_poly(a.lhs, scale) + " " +
               smt_poly(a.rhs, scale) + ")";
    }
    case Constraint::Kind::And:
    case Constraint::Kind::Or: {
        std::string out = c.kind() == Constraint::Kind::And ? "(and" : "(or";
        for (const Constraint& g : c.children()) out += " " + smt_constraint(g);
        return out + ")";
    }
    }
    return "true";
}

} // namespace

std::string export_smtlib(const Constraint& c) {
    std::set<std::string> params;
    c.collect_params(params);
    std::string out = "(set-logic QF_NIA)\n";
    for (const std::string& p : params) {
        out += "(declare-const " + p + " Int)\n";
        out += "(assert (>= " + p + " 0))\n";
    }
    if (c.kind() == Constraint::Kind::And) {
        for (const Constraint& g : c.children()) out += "(assert " + smt_constraint(g) + ")\n";
    } else {
        out += "(assert " + smt_constraint(c) + ")\n";
    }
    out += "(check-sat)\n(get-model)\n";
    return out;
}

} // namespace tuplecert
