#include "tuplecert/constraint.hpp"
#include "tuplecert/maxpoly.hpp"

#include <algorithm>

namespace tuplecert {

// --- Constraint construction and folding -----------------------------------

Constraint Constraint::truth(bool b) {
    Constraint c;
    c.kind_ = b ? Kind::True : Kind::False;
    return c;
}

Constraint Constraint::atomic(ParamPoly lhs, ParamPoly rhs, bool strict) {
    ParamPoly::cancel_common(lhs, rhs);
    std::set<std::string> params;
    lhs.collect_params(params);
    rhs.collect_params(params);
    if (params.empty()) {
        Rational l = lhs.constant_value(), r = rhs.constant_value();
        return truth(strict ? l > r : l >= r);
    }
    // Parameters are naturals and coefficients nonnegative, so a zero side
    // settles some cases outright.
    if (!strict && rhs.is_zero()) return truth(true);
    if (strict && lhs.is_zero()) return truth(false);
    Constraint c;
    c.kind_ = Kind::Atomic;
    c.atom_ = AtomicConstraint{std::move(lhs), std::move(rhs), strict};
    return c;
}

Constraint Constraint::all_of(std::vector<Constraint> cs) {
    std::vector<Constraint> kept;
    for (Constraint& c : cs) {
        if (c.is_false()) return truth(false);
        if (c.is_true()) continue;
        if (c.kind_ == Kind::And) {
            for (Constraint& g : c.children_) kept.push_back(std::move(g));
        } else {
            kept.push_back(std::move(c));
        }
    }
    if (kept.empty()) return truth(true);
    if (kept.size() == 1) return kept[0];
    Constraint c;
    c.kind_ = Kind::And;
    c.children_ = std::move(kept);
    return c;
}

Constraint Constraint::any_of(std::vector<Constraint> cs) {
    std::vector<Constraint> kept;
    for (Constraint& c : cs) {
        if (c.is_true()) return truth(true);
        if (c.is_false()) continue;
        if (c.kind_ == Kind::Or) {
            for (Constraint& g : c.children_) kept.push_back(std::move(g));
        } else {
            kept.push_back(std::move(c));
        }
    }
    if (kept.empty()) return truth(false);
    if (kept.size() == 1) return kept[0];
    Constraint c;
    c.kind_ = Kind::Or;
    c.children_ = std::move(kept);
    return c;
}

bool Constraint::eval(const std::map<std::string, long long>& model) const {
    switch (kind_) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atomic: {
        Rational l = atom_.lhs.eval(model), r = atom_.rhs.eval(model);
        return atom_.strict ? l > r : l >= r;
    }
    case Kind::And:
        return std::all_of(children_.begin(), children_.end(),
                           [&](const Constraint& c) { return c.eval(model); });
    case Kind::Or:
        return std::any_of(children_.begin(), children_.end(),
                           [&](const Constraint& c) { return c.eval(model); });
    }
    return false;
}

void Constraint::collect_params(std::set<std::string>& out) const {
    if (kind_ == Kind::Atomic) {
        atom_.lhs.collect_params(out);
        atom_.rhs.collect_params(out);
    }
    for (const Constraint& c : children_) c.collect_params(out);
}

void Constraint::collect_atomics(std::vector<AtomicConstraint>& out) const {
    if (kind_ == Kind::Atomic) out.push_back(atom_);
    for (const Constraint& c : children_) c.collect_atomics(out);
}

int Constraint::decide(const std::map<std::string, long long>& fixed, long long hi) const {
    switch (kind_) {
    case Kind::True: return 1;
    case Kind::False: return -1;
    case Kind::Atomic: {
        // Both polynomials are monotone in every parameter.
        Rational lhs_min = atom_.lhs.lower_bound(fixed);
        Rational lhs_max = atom_.lhs.upper_bound(fixed, hi);
        Rational rhs_min = atom_.rhs.lower_bound(fixed);
        Rational rhs_max = atom_.rhs.upper_bound(fixed, hi);
        if (atom_.strict ? lhs_min > rhs_max : lhs_min >= rhs_max) return 1;
        if (atom_.strict ? lhs_max <= rhs_min : lhs_max < rhs_min) return -1;
        return 0;
    }
    case Kind::And: {
        int result = 1;
        for (const Constraint& c : children_) {
            int d = c.decide(fixed, hi);
            if (d == -1) return -1;
            if (d == 0) result = 0;
        }
        return result;
    }
    case Kind::Or: {
        int result = -1;
        for (const Constraint& c : children_) {
            int d = c.decide(fixed, hi);
            if (d == 1) return 1;
            if (d == 0) result = 0;
        }
        return result;
    }
    }
    return 0;
}

std::string Constraint::str() const {
    switch (kind_) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Atomic: return atom_.str();
    case Kind::And: {
        std::string out;
        for (std::size_t i = 0; i < children_.size(); ++i) {
            if (i) out += " and ";
            bool paren = children_[i].kind_ == Kind::Or;
            out += paren ? "(" + children_[i].str() + ")" : children_[i].str();
        }
        return out;
    }
    case Kind::Or: {
        std::string out;
        for (std::size_t i = 0; i < children_.size(); ++i) {
            if (i) out += " or ";
            bool paren = children_[i].kind_ == Kind::And;
            out += paren ? "(" + children_[i].str() + ")" : children_[i].str();
        }
        return out;
    }
    }
    return "";
}

// --- Comparison engine -------------------------------------------------------

namespace {

// Atoms whose monomials are not shared by all branches of one side; only
// their relative order can change which branch realizes the max.
std::set<Atom> max_origin_atoms(const MaxPoly& side) {
    std::set<Atom> out;
    if (side.branches().size() <= 1) return out;
    for (const Poly& b : side.branches()) {
        for (const Monomial& m : b.terms()) {
            bool everywhere = true;
            for (const Poly& other : side.branches())
                if (!(other.coeff_of(m.powers) == m.coeff)) {
                    everywhere = false;
                    break;
                }
            if (!everywhere)
                for (const auto& [atom, e] : m.powers) out.insert(atom);
        }
    }
    return out;
}

// One case of the split: an orientation bit per unordered pair. Every atom
// that sits strictly below another in the chosen order is mapped to a
// maximal dominator; mutually related atoms collapse to their
// lexicographically least representative.
std::map<Atom, Atom> upward_substitution(const std::vector<Atom>& atoms,
                                         const std::vector<std::pair<int, int>>& pairs,
                                         unsigned mask) {
    std::size_t n = atoms.size();
    std::vector<std::vector<bool>> ge(n, std::vector<bool>(n, false)); // ge[i][j]: ai >= aj
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        auto [i, j] = pairs[p];
        if (mask & (1u << p))
            ge[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
        else
            ge[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (ge[i][k] && ge[k][j]) ge[i][j] = true;

    auto rep = [&](std::size_t u) {
        // Least member of u's equality class (mutual ge).
        std::size_t r = u;
        for (std::size_t v = 0; v < n; ++v)
            if (ge[u][v] && ge[v][u] && atoms[v] < atoms[r]) r = v;
        return r;
    };

    std::map<Atom, Atom> subst;
    for (std::size_t u = 0; u < n; ++u) {
        std::size_t target = u;
        // Climb to a maximal element strictly above u, if any.
        bool moved = true;
        while (moved) {
            moved = false;
            for (std::size_t v = 0; v < n; ++v)
                if (ge[v][target] && !ge[target][v]) {
                    target = v;
                    moved = true;
                    break;
                }
        }
        target = rep(target);
        if (target != u) subst.emplace(atoms[u], atoms[target]);
    }
    return subst;
}

bool integer_coefficients(const ParamPoly& p) {
    return std::all_of(p.terms().begin(), p.terms().end(),
                       [](const ParamPoly::Mono& m) { return m.coeff.is_integer(); });
}

// P >= Q + 1 (strict) resp. P >= Q, by coefficient comparison after exact
// cancellation. The strict margin lands on the constant coefficient; when
// both constants are integer-valued the equivalent form "lhs > rhs" is
// emitted, which reads better in reports and SMT scripts.
Constraint coefficientwise(const Poly& p, const Poly& q, bool strict) {
    std::vector<Constraint> parts;
    bool constant_seen = false;
    auto constant_part = [&](const ParamPoly& pc, const ParamPoly& qc) {
        if (integer_coefficients(pc) && integer_coefficients(qc))
            return Constraint::atomic(pc, qc, true);
        return Constraint::atomic(pc, qc + ParamPoly::constant(Rational(1)), false);
    };
    for (const Monomial& mq : q.terms()) {
        if (mq.powers.empty()) {
            constant_seen = true;
            if (strict) {
                parts.push_back(constant_part(p.coeff_of({}), mq.coeff));
                continue;
            }
        }
        parts.push_back(Constraint::atomic(p.coeff_of(mq.powers), mq.coeff, false));
    }
    if (strict && !constant_seen) parts.push_back(constant_part(p.coeff_of({}), ParamPoly{}));
    return Constraint::all_of(std::move(parts));
}

} // namespace

std::optional<Constraint> compare_constraints(const MaxPoly& p, const MaxPoly& q,
                                              CompareMode mode, const CompareOptions& opts) {
    bool strict = mode == CompareMode::StrictCost;
    std::set<Atom> origin = max_origin_atoms(p);
    std::set<Atom> origin_q = max_origin_atoms(q);
    origin.insert(origin_q.begin(), origin_q.end());
    if (static_cast<int>(origin.size()) > opts.case_split_cap) return std::nullopt;

    std::vector<Atom> atoms(origin.begin(), origin.end());
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = i + 1; j < atoms.size(); ++j)
            pairs.push_back({static_cast<int>(i), static_cast<int>(j)});

    std::vector<Constraint> cases;
    unsigned case_count = 1u << pairs.size();
    for (unsigned mask = 0; mask < case_count; ++mask) {
        std::map<Atom, Atom> subst =
            pairs.empty() ? std::map<Atom, Atom>{} : upward_substitution(atoms, pairs, mask);
        std::vector<Constraint> per_branch;
        for (const Poly& qb : q.branches()) {
            Poly q_up = qb.substitute_atoms(subst);
            std::vector<Constraint> alts;
            for (const Poly& pb : p.branches()) alts.push_back(coefficientwise(pb, q_up, strict));
            per_branch.push_back(Constraint::any_of(std::move(alts)));
        }
        cases.push_back(Constraint::all_of(std::move(per_branch)));
    }
    return Constraint::all_of(std::move(cases));
}

CompareOutcome compare(const MaxPoly& p, const MaxPoly& q, CompareMode mode,
                       const CompareOptions& opts) {
    if (!p.parameter_free() || !q.parameter_free())
        throw std::invalid_argument(
            "compare requires parameter-free max-polynomials; use compare_constraints");
    CompareOutcome out;
    std::optional<Constraint> c = compare_constraints(p, q, mode, opts);
    if (c && c->is_true()) {
        out.kind = CompareOutcome::Kind::Proved;
        std::set<Atom> origin = max_origin_atoms(p);
        std::set<Atom> oq = max_origin_atoms(q);
        origin.insert(oq.begin(), oq.end());
        if (origin.size() > 1) out.split_atoms.assign(origin.begin(), origin.end());
        return out;
    }

    // Search the grid for a genuine counterexample; fractional evaluation
    // points cannot witness a violation over the naturals and are skipped.
    std::vector<Atom> atoms;
    {
        std::set<Atom> all = p.atoms();
        std::set<Atom> qa = q.atoms();
        all.insert(qa.begin(), qa.end());
        atoms.assign(all.begin(), all.end());
    }
    if (atoms.size() <= 8) {
        std::map<Atom, Rational> env;
        std::vector<long long> point(atoms.size(), 0);
        while (true) {
            for (std::size_t i = 0; i < atoms.size(); ++i) env[atoms[i]] = Rational(point[i]);
            Rational pv = p.eval(env), qv = q.eval(env);
            if (pv.is_integer() && qv.is_integer() &&
                (mode == CompareMode::StrictCost ? pv < qv + Rational(1) : pv < qv)) {
                out.kind = CompareOutcome::Kind::Disproved;
                for (std::size_t i = 0; i < atoms.size(); ++i) out.witness[atoms[i]] = point[i];
                return out;
            }
            std::size_t k = 0;
            while (k < atoms.size() && point[k] == opts.grid_hi) point[k++] = 0;
            if (k == atoms.size()) break;
            ++point[k];
        }
    }
    out.kind = CompareOutcome::Kind::Unknown;
    return out;
}

} // namespace tuplecert
