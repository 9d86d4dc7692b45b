#include "tuplecert/maxpoly.hpp"

#include <algorithm>
#include <cctype>

namespace tuplecert {

// --- ParamPoly -------------------------------------------------------------

ParamPoly ParamPoly::constant(const Rational& c) {
    ParamPoly p;
    if (!c.is_zero()) p.terms_.push_back(Mono{c, {}});
    return p;
}

ParamPoly ParamPoly::parameter(const std::string& name) {
    ParamPoly p;
    p.terms_.push_back(Mono{Rational(1), {{name, 1}}});
    return p;
}

Rational ParamPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_[0].powers.empty()) return terms_[0].coeff;
    throw UninstantiatedParameter("parameter polynomial " + str() + " is not constant");
}

void ParamPoly::push(Mono m) {
    if (m.coeff.is_zero()) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m.powers,
                               [](const Mono& a, const Powers& p) { return a.powers < p; });
    if (it != terms_.end() && it->powers == m.powers) {
        it->coeff += m.coeff;
        if (it->coeff.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, std::move(m));
    }
}

ParamPoly operator+(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly out = a;
    for (const auto& m : b.terms_) out.push(m);
    return out;
}

ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly out;
    for (const auto& ma : a.terms_) {
        for (const auto& mb : b.terms_) {
            ParamPoly::Mono m;
            m.coeff = ma.coeff * mb.coeff;
            m.powers = ma.powers;
            for (const auto& [p, e] : mb.powers) m.powers[p] += e;
            out.push(std::move(m));
        }
    }
    return out;
}

Rational ParamPoly::eval(const std::map<std::string, long long>& params) const {
    Rational total(0);
    for (const auto& m : terms_) {
        Rational v = m.coeff;
        for (const auto& [p, e] : m.powers) {
            auto it = params.find(p);
            if (it == params.end()) throw UninstantiatedParameter("parameter " + p + " not set");
            for (int i = 0; i < e; ++i) v *= Rational(it->second);
        }
        total += v;
    }
    return total;
}

ParamPoly ParamPoly::substitute(const std::map<std::string, long long>& params) const {
    ParamPoly out;
    for (const auto& m : terms_) {
        Mono nm;
        nm.coeff = m.coeff;
        for (const auto& [p, e] : m.powers) {
            auto it = params.find(p);
            if (it == params.end()) {
                nm.powers.emplace(p, e);
            } else {
                for (int i = 0; i < e; ++i) nm.coeff *= Rational(it->second);
            }
        }
        out.push(std::move(nm));
    }
    return out;
}

void ParamPoly::collect_params(std::set<std::string>& out) const {
    for (const auto& m : terms_)
        for (const auto& [p, e] : m.powers) out.insert(p);
}

void ParamPoly::cancel_common(ParamPoly& a, ParamPoly& b) {
    ParamPoly na, nb;
    auto ia = a.terms_.begin();
    for (const auto& mb : b.terms_) {
        while (ia != a.terms_.end() && ia->powers < mb.powers) na.push(*ia++);
        if (ia != a.terms_.end() && ia->powers == mb.powers) {
            Rational common = std::min(ia->coeff, mb.coeff);
            if (ia->coeff - common != Rational(0)) na.push(Mono{ia->coeff - common, ia->powers});
            if (mb.coeff - common != Rational(0)) nb.push(Mono{mb.coeff - common, mb.powers});
            ++ia;
        } else {
            nb.push(mb);
        }
    }
    while (ia != a.terms_.end()) na.push(*ia++);
    a = std::move(na);
    b = std::move(nb);
}

Rational ParamPoly::lower_bound(const std::map<std::string, long long>& fixed) const {
    Rational total(0);
    for (const auto& m : terms_) {
        Rational v = m.coeff;
        bool free = false;
        for (const auto& [p, e] : m.powers) {
            auto it = fixed.find(p);
            if (it == fixed.end()) {
                free = true; // unassigned parameter contributes >= 0
                break;
            }
            for (int i = 0; i < e; ++i) v *= Rational(it->second);
        }
        if (!free) total += v;
    }
    return total;
}

Rational ParamPoly::upper_bound(const std::map<std::string, long long>& fixed,
                                long long hi) const {
    Rational total(0);
    for (const auto& m : terms_) {
        Rational v = m.coeff;
        for (const auto& [p, e] : m.powers) {
            auto it = fixed.find(p);
            long long val = it == fixed.end() ? hi : it->second;
            for (int i = 0; i < e; ++i) v *= Rational(val);
        }
        total += v;
    }
    return total;
}

std::string ParamPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) out += " + ";
        const Mono& m = terms_[i];
        bool printed = false;
        if (m.powers.empty() || m.coeff != Rational(1)) {
            out += m.coeff.str();
            printed = true;
        }
        for (auto it = m.powers.rbegin(); it != m.powers.rend(); ++it)
            for (int e = 0; e < it->second; ++e) {
                if (printed) out += "*";
                out += it->first;
                printed = true;
            }
    }
    return out;
}

// --- Poly -------------------------------------------------------------------

Poly Poly::constant(const Rational& c) {
    Poly p;
    if (!c.is_zero()) p.terms_.push_back(Monomial{ParamPoly::constant(c), {}});
    return p;
}

Poly Poly::constant(const ParamPoly& c) {
    Poly p;
    if (!c.is_zero()) p.terms_.push_back(Monomial{c, {}});
    return p;
}

Poly Poly::atom(const Atom& a) {
    Poly p;
    p.terms_.push_back(Monomial{ParamPoly::constant(Rational(1)), {{a, 1}}});
    return p;
}

Poly Poly::from_monomial(Monomial m) {
    Poly p;
    p.push(std::move(m));
    return p;
}

ParamPoly Poly::coeff_of(const std::map<Atom, int>& powers) const {
    for (const auto& m : terms_)
        if (m.powers == powers) return m.coeff;
    return ParamPoly{};
}

int Poly::degree() const {
    int d = 0;
    for (const auto& m : terms_) d = std::max(d, m.degree());
    return d;
}

void Poly::push(Monomial m) {
    if (m.coeff.is_zero()) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m.powers,
                               [](const Monomial& a, const std::map<Atom, int>& p) {
                                   return a.powers < p;
                               });
    if (it != terms_.end() && it->powers == m.powers) {
        it->coeff = it->coeff + m.coeff;
        if (it->coeff.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, std::move(m));
    }
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& m : b.terms_) out.push(m);
    return out;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& ma : a.terms_) {
        for (const auto& mb : b.terms_) {
            Monomial m;
            m.coeff = ma.coeff * mb.coeff;
            m.powers = ma.powers;
            for (const auto& [atom, e] : mb.powers) m.powers[atom] += e;
            out.push(std::move(m));
        }
    }
    return out;
}

bool operator<(const Poly& a, const Poly& b) {
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
        if (ta[i].powers != tb[i].powers) return ta[i].powers < tb[i].powers;
        if (!(ta[i].coeff == tb[i].coeff)) return ta[i].coeff.str() < tb[i].coeff.str();
    }
    return ta.size() < tb.size();
}

Rational Poly::eval(const std::map<Atom, Rational>& env,
                    const std::map<std::string, long long>& params) const {
    Rational total(0);
    for (const auto& m : terms_) {
        Rational v = m.coeff.eval(params);
        for (const auto& [atom, e] : m.powers) {
            auto it = env.find(atom);
            if (it == env.end()) throw UnboundAtom("atom " + atom.str() + " not bound");
            for (int i = 0; i < e; ++i) v *= it->second;
        }
        total += v;
    }
    return total;
}

Poly Poly::substitute_atoms(const std::map<Atom, Atom>& renaming) const {
    Poly out;
    for (const auto& m : terms_) {
        Monomial nm;
        nm.coeff = m.coeff;
        for (const auto& [atom, e] : m.powers) {
            auto it = renaming.find(atom);
            nm.powers[it == renaming.end() ? atom : it->second] += e;
        }
        out.push(std::move(nm));
    }
    return out;
}

void Poly::collect_atoms(std::set<Atom>& out) const {
    for (const auto& m : terms_)
        for (const auto& [atom, e] : m.powers) out.insert(atom);
}

void Poly::collect_params(std::set<std::string>& out) const {
    for (const auto& m : terms_) m.coeff.collect_params(out);
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) out += " + ";
        const Monomial& m = terms_[i];
        std::string coeff;
        bool constant_coeff = m.coeff.is_constant();
        if (constant_coeff)
            coeff = m.coeff.constant_value().str();
        else if (m.coeff.terms().size() == 1)
            coeff = m.coeff.str();
        else
            coeff = "(" + m.coeff.str() + ")";
        bool printed = false;
        if (m.powers.empty() || !constant_coeff || m.coeff.constant_value() != Rational(1)) {
            out += coeff;
            printed = true;
        }
        for (const auto& [atom, e] : m.powers)
            for (int k = 0; k < e; ++k) {
                if (printed) out += "*";
                out += atom.str();
                printed = true;
            }
    }
    return out;
}

// --- MaxPoly -----------------------------------------------------------------

namespace {

// Coefficientwise a <= b; sound for all natural atom/parameter values since
// every coefficient is nonnegative.
bool param_leq(const ParamPoly& a, const ParamPoly& b) {
    for (const auto& m : a.terms()) {
        ParamPoly rest;
        bool found = false;
        for (const auto& mb : b.terms())
            if (mb.powers == m.powers) {
                if (m.coeff > mb.coeff) return false;
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

bool poly_dominated(const Poly& a, const Poly& b) {
    for (const auto& m : a.terms())
        if (!param_leq(m.coeff, b.coeff_of(m.powers))) return false;
    return true;
}

} // namespace

void MaxPoly::normalize() {
    if (branches_.empty()) branches_.push_back(Poly{});
    std::sort(branches_.begin(), branches_.end());
    branches_.erase(std::unique(branches_.begin(), branches_.end()), branches_.end());
    if (branches_.size() == 1) return;
    // Distinct branches cannot dominate each other in both directions, so
    // dropping every dominated branch is well-defined.
    std::vector<Poly> kept;
    for (std::size_t i = 0; i < branches_.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < branches_.size() && !dominated; ++j)
            dominated = i != j && poly_dominated(branches_[i], branches_[j]);
        if (!dominated) kept.push_back(branches_[i]);
    }
    branches_ = std::move(kept);
}

MaxPoly MaxPoly::max_of(const MaxPoly& a, const MaxPoly& b) {
    MaxPoly out;
    out.branches_ = a.branches_;
    out.branches_.insert(out.branches_.end(), b.branches_.begin(), b.branches_.end());
    out.normalize();
    return out;
}

int MaxPoly::degree() const {
    int d = 0;
    for (const auto& b : branches_) d = std::max(d, b.degree());
    return d;
}

MaxPoly operator+(const MaxPoly& a, const MaxPoly& b) {
    MaxPoly out;
    out.branches_.clear();
    for (const auto& pa : a.branches_)
        for (const auto& pb : b.branches_) out.branches_.push_back(pa + pb);
    out.normalize();
    return out;
}

MaxPoly operator*(const MaxPoly& a, const MaxPoly& b) {
    MaxPoly out;
    out.branches_.clear();
    for (const auto& pa : a.branches_)
        for (const auto& pb : b.branches_) out.branches_.push_back(pa * pb);
    out.normalize();
    return out;
}

Rational MaxPoly::eval(const std::map<Atom, Rational>& env,
                       const std::map<std::string, long long>& params) const {
    Rational best = branches_[0].eval(env, params);
    for (std::size_t i = 1; i < branches_.size(); ++i)
        best = std::max(best, branches_[i].eval(env, params));
    return best;
}

MaxPoly MaxPoly::substitute(const std::map<Atom, MaxPoly>& subst) const {
    std::vector<Poly> acc;
    for (const Poly& branch : branches_) {
        MaxPoly sum = MaxPoly(Poly{});
        for (const Monomial& m : branch.terms()) {
            MaxPoly prod = MaxPoly(Poly::constant(m.coeff));
            for (const auto& [atom, e] : m.powers) {
                auto it = subst.find(atom);
                MaxPoly repl = it == subst.end() ? MaxPoly::atom(atom) : it->second;
                for (int k = 0; k < e; ++k) prod = prod * repl;
            }
            sum = sum + prod;
        }
        acc.insert(acc.end(), sum.branches_.begin(), sum.branches_.end());
    }
    MaxPoly out;
    out.branches_ = std::move(acc);
    out.normalize();
    return out;
}

MaxPoly MaxPoly::instantiate(const std::map<std::string, long long>& params) const {
    MaxPoly out;
    out.branches_.clear();
    for (const Poly& branch : branches_) {
        Poly nb;
        for (const Monomial& m : branch.terms())
            nb = nb + Poly::from_monomial(
                           Monomial{ParamPoly::constant(m.coeff.eval(params)), m.powers});
        out.branches_.push_back(std::move(nb));
    }
    out.normalize();
    return out;
}

MaxPoly MaxPoly::substitute_params(const std::map<std::string, long long>& params) const {
    MaxPoly out;
    out.branches_.clear();
    for (const Poly& branch : branches_) {
        Poly nb;
        for (const Monomial& m : branch.terms())
            nb = nb + Poly::from_monomial(Monomial{m.coeff.substitute(params), m.powers});
        out.branches_.push_back(std::move(nb));
    }
    out.normalize();
    return out;
}

std::set<Atom> MaxPoly::atoms() const {
    std::set<Atom> out;
    for (const auto& b : branches_) b.collect_atoms(out);
    return out;
}

std::set<std::string> MaxPoly::params() const {
    std::set<std::string> out;
    for (const auto& b : branches_) b.collect_params(out);
    return out;
}

std::string MaxPoly::str() const {
    if (branches_.size() == 1) return branches_[0].str();
    std::string out = branches_[0].str();
    for (std::size_t i = 1; i < branches_.size(); ++i) out = "max(" + out + ", " + branches_[i].str() + ")";
    return out;
}

// --- Expression parsing -------------------------------------------------------

namespace {

struct ExprToken {
    enum class Kind { Number, Ident, Punct, End } kind = Kind::End;
    std::string text;
    std::size_t offset = 0;
};

class ExprLexer {
public:
    explicit ExprLexer(const std::string& text) : text_(text) { advance(); }

    const ExprToken& peek() const { return cur_; }

    ExprToken take() {
        ExprToken t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        cur_.offset = pos_;
        if (pos_ >= text_.size()) {
            cur_.kind = ExprToken::Kind::End;
            cur_.text.clear();
            return;
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = pos_;
            while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
            cur_ = ExprToken{ExprToken::Kind::Number, text_.substr(pos_, j - pos_), pos_};
            pos_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = pos_;
            while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) ||
                                        text_[j] == '_' || text_[j] == '\''))
                ++j;
            cur_ = ExprToken{ExprToken::Kind::Ident, text_.substr(pos_, j - pos_), pos_};
            pos_ = j;
            return;
        }
        cur_ = ExprToken{ExprToken::Kind::Punct, std::string(1, c), pos_};
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    ExprToken cur_;
};

[[noreturn]] void expr_fail(const std::string& msg, const ExprToken& at) {
    throw std::runtime_error("expression error at offset " + std::to_string(at.offset) + ": " +
                             msg);
}

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : lex_(text) {}

    ExprPtr parse_full() {
        ExprPtr e = sum();
        if (lex_.peek().kind != ExprToken::Kind::End)
            expr_fail("trailing input '" + lex_.peek().text + "'", lex_.peek());
        return e;
    }

    ExprPtr sum() {
        ExprPtr e = product();
        while (lex_.peek().kind == ExprToken::Kind::Punct && lex_.peek().text == "+") {
            lex_.take();
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::Add;
            node->lhs = e;
            node->rhs = product();
            e = node;
        }
        return e;
    }

    ExprPtr product() {
        ExprPtr e = factor();
        while (lex_.peek().kind == ExprToken::Kind::Punct && lex_.peek().text == "*") {
            lex_.take();
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::Mul;
            node->lhs = e;
            node->rhs = factor();
            e = node;
        }
        return e;
    }

    ExprPtr factor() {
        ExprToken t = lex_.peek();
        if (t.kind == ExprToken::Kind::Number) {
            lex_.take();
            long long num = std::stoll(t.text);
            long long den = 1;
            if (lex_.peek().kind == ExprToken::Kind::Punct && lex_.peek().text == "/") {
                lex_.take();
                ExprToken d = lex_.take();
                if (d.kind != ExprToken::Kind::Number) expr_fail("expected denominator", d);
                den = std::stoll(d.text);
                if (den == 0) expr_fail("zero denominator", d);
            }
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::Literal;
            node->literal = Rational(num, den);
            return node;
        }
        if (t.kind == ExprToken::Kind::Ident) {
            lex_.take();
            if (t.text == "max") {
                expect("(");
                ExprPtr a = sum();
                expect(",");
                ExprPtr b = sum();
                expect(")");
                auto node = std::make_shared<Expr>();
                node->kind = Expr::Kind::Max;
                node->lhs = a;
                node->rhs = b;
                return node;
            }
            Atom a{t.text, 1};
            if (lex_.peek().kind == ExprToken::Kind::Punct && lex_.peek().text == ".") {
                lex_.take();
                ExprToken idx = lex_.take();
                if (idx.kind != ExprToken::Kind::Number) expr_fail("expected component index", idx);
                a.component = std::stoi(idx.text);
                if (a.component < 1) expr_fail("component index must be >= 1", idx);
            }
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::AtomRef;
            node->atom = std::move(a);
            return node;
        }
        if (t.kind == ExprToken::Kind::Punct && t.text == "(") {
            lex_.take();
            ExprPtr e = sum();
            expect(")");
            return e;
        }
        expr_fail("expected number, atom, max(...) or '('", t);
    }

private:
    void expect(const char* p) {
        ExprToken t = lex_.take();
        if (t.kind == ExprToken::Kind::End || t.text != p)
            expr_fail(std::string("expected '") + p + "'", t);
    }

    ExprLexer lex_;
};

} // namespace

ExprPtr parse_expr(const std::string& text) { return ExprParser(text).parse_full(); }

std::vector<ExprPtr> parse_expr_tuple(const std::string& text) {
    // A tuple is a parenthesized, comma-separated list at nesting depth 1.
    std::size_t first = text.find_first_not_of(" \t");
    std::size_t last = text.find_last_not_of(" \t");
    if (first == std::string::npos || text[first] != '(' || text[last] != ')')
        return {parse_expr(text)};
    int depth = 0;
    std::vector<std::size_t> cuts;
    for (std::size_t i = first; i <= last; ++i) {
        if (text[i] == '(') ++depth;
        else if (text[i] == ')') --depth;
        else if (text[i] == ',' && depth == 1) cuts.push_back(i);
        if (depth == 0 && i != last) return {parse_expr(text)}; // '(expr)...' not a tuple
    }
    if (cuts.empty()) return {parse_expr(text)};
    std::vector<ExprPtr> out;
    std::size_t begin = first + 1;
    for (std::size_t cut : cuts) {
        out.push_back(parse_expr(text.substr(begin, cut - begin)));
        begin = cut + 1;
    }
    out.push_back(parse_expr(text.substr(begin, last - begin)));
    return out;
}

Rational eval_expr(const Expr& e, const std::map<Atom, Rational>& env) {
    switch (e.kind) {
    case Expr::Kind::Literal: return e.literal;
    case Expr::Kind::AtomRef: {
        auto it = env.find(e.atom);
        if (it == env.end()) throw UnboundAtom("atom " + e.atom.str() + " not bound");
        return it->second;
    }
    case Expr::Kind::Add: return eval_expr(*e.lhs, env) + eval_expr(*e.rhs, env);
    case Expr::Kind::Mul: return eval_expr(*e.lhs, env) * eval_expr(*e.rhs, env);
    case Expr::Kind::Max: return std::max(eval_expr(*e.lhs, env), eval_expr(*e.rhs, env));
    }
    throw std::logic_error("unreachable expression kind");
}

MaxPoly normalize(const Expr& e) {
    switch (e.kind) {
    case Expr::Kind::Literal:
        if (e.literal.is_negative())
            throw NegativeCoefficient("negative literal " + e.literal.str());
        return MaxPoly::constant(e.literal);
    case Expr::Kind::AtomRef: return MaxPoly::atom(e.atom);
    case Expr::Kind::Add: return normalize(*e.lhs) + normalize(*e.rhs);
    case Expr::Kind::Mul: return normalize(*e.lhs) * normalize(*e.rhs);
    case Expr::Kind::Max: return MaxPoly::max_of(normalize(*e.lhs), normalize(*e.rhs));
    }
    throw std::logic_error("unreachable expression kind");
}

} // namespace tuplecert
