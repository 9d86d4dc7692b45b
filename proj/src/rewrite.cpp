#include "tuplecert/rewrite.hpp"

#include <algorithm>
#include <functional>

namespace tuplecert {

bool match(const Term& pattern, const Term& subject, Substitution& out) {
    if (pattern.is_var()) {
        auto it = out.find(pattern.var_id());
        if (it != out.end()) return it->second == subject;
        out.emplace(pattern.var_id(), subject);
        return true;
    }
    if (subject.is_var()) return false;
    if (pattern.symbol() != subject.symbol() || pattern.args().size() != subject.args().size())
        return false;
    for (std::size_t i = 0; i < pattern.args().size(); ++i)
        if (!match(pattern.args()[i], subject.args()[i], out)) return false;
    return true;
}

namespace {

// A rule lhs f l1..lk applies to the spine prefix f a1..ak of a node with
// j >= k arguments; trailing arguments are carried over to the reduct.
bool match_prefix(const Term& lhs, const Term& node, Substitution& out) {
    std::size_t k = lhs.args().size();
    if (node.is_var() || lhs.symbol() != node.symbol() || node.args().size() < k) return false;
    for (std::size_t i = 0; i < k; ++i) {
        Substitution trial = out;
        if (!match(lhs.args()[i], node.args()[i], trial)) return false;
        out = std::move(trial);
    }
    return true;
}

bool has_redex(const Trs& trs, const Term& t) {
    if (t.is_var()) return false;
    for (std::size_t r = 0; r < trs.rules().size(); ++r) {
        Substitution subst;
        if (match_prefix(trs.rules()[r].lhs, t, subst)) return true;
    }
    return std::any_of(t.args().begin(), t.args().end(),
                       [&](const Term& a) { return has_redex(trs, a); });
}

Term contract(const Trs& trs, const Term& node, const Rule& rule, const Substitution& subst) {
    Term reduct = apply_subst(trs, rule.rhs, subst);
    std::size_t k = rule.lhs.args().size();
    if (k < node.args().size()) {
        std::vector<Term> extra(node.args().begin() + static_cast<std::ptrdiff_t>(k),
                                node.args().end());
        reduct = apply_args(trs, std::move(reduct), std::move(extra));
    }
    return reduct;
}

void collect_steps(const Trs& trs, const Term& t, StepKind kind, Position& here,
                   std::vector<Step>& out) {
    if (t.is_var()) return;
    for (std::size_t r = 0; r < trs.rules().size(); ++r) {
        const Rule& rule = trs.rules()[r];
        std::size_t k = rule.lhs.args().size();
        Substitution subst;
        if (!match_prefix(rule.lhs, t, subst)) continue;
        if (kind == StepKind::Innermost) {
            bool args_normal = true;
            for (std::size_t i = 0; i < k && args_normal; ++i)
                args_normal = !has_redex(trs, t.args()[i]);
            if (!args_normal) continue;
        }
        Position pos = here;
        pos.prefix_len = static_cast<std::uint32_t>(k);
        out.push_back(Step{contract(trs, t, rule, subst), std::move(pos), r});
    }
    for (std::size_t i = 0; i < t.args().size(); ++i) {
        here.path.push_back(static_cast<std::uint32_t>(i));
        std::vector<Step> inner;
        collect_steps(trs, t.args()[i], kind, here, inner);
        here.path.pop_back();
        for (Step& s : inner) {
            std::vector<Term> args = t.args();
            args[i] = std::move(s.result);
            out.push_back(
                Step{Term::app_unchecked(t.symbol(), std::move(args)), std::move(s.pos),
                     s.rule_index});
        }
    }
}

} // namespace

std::vector<Step> successors(const Trs& trs, const Term& t, StepKind kind) {
    std::vector<Step> out;
    Position here;
    collect_steps(trs, t, kind, here, out);
    return out;
}

bool is_normal_form(const Trs& trs, const Term& t) { return !has_redex(trs, t); }

DhResult DhCache::height(const Term& t, std::uint64_t budget) {
    bool capped = false;
    Entry e = compute(t, 0, budget, capped);
    DhResult res;
    res.diverged = e.diverged;
    res.height = e.diverged ? budget : e.height;
    if (!e.diverged) {
        res.trace.push_back(t);
        Term cur = t;
        while (true) {
            auto it = memo_.find(cur);
            if (it == memo_.end() || it->second.best.empty()) break;
            cur = it->second.best.front();
            res.trace.push_back(cur);
        }
    }
    return res;
}

DhCache::Entry DhCache::compute(const Term& t, std::uint64_t depth, std::uint64_t budget,
                                bool& capped) {
    if (auto it = memo_.find(t); it != memo_.end()) return it->second;
    if (on_path_.count(t)) {
        // t reaches itself: genuine divergence, safe to memoize.
        Entry e;
        e.diverged = true;
        memo_.emplace(t, e);
        return e;
    }
    if (depth >= budget) {
        capped = true;
        Entry e;
        e.diverged = true;
        return e; // budget artifact, never memoized
    }

    on_path_.emplace(t, 1);
    Entry e;
    bool sub_capped = false;
    for (Step& s : successors(trs_, t, kind_)) {
        Entry sub = compute(s.result, depth + 1, budget, sub_capped);
        if (sub.diverged) {
            e.diverged = true;
            e.best.clear();
            break;
        }
        if (sub.height + 1 > e.height || e.best.empty()) {
            e.height = sub.height + 1;
            e.best.assign(1, s.result);
        }
    }
    on_path_.erase(t);
    if (sub_capped) {
        capped = true;
        if (!e.diverged) {
            // Some branch was cut short; the exact height is unknown.
            e.diverged = true;
            e.best.clear();
        }
        return e;
    }
    memo_.emplace(t, e);
    return e;
}

DhResult derivation_height(const Trs& trs, const Term& t, StepKind kind, std::uint64_t budget) {
    DhCache cache(trs, kind);
    return cache.height(t, budget);
}

// --- Term enumeration ----------------------------------------------------

namespace {

// terms[sort][s] = all terms of exactly size s, built by increasing size.
using SizeTable = std::vector<std::vector<std::vector<Term>>>;

void fill_products(const SizeTable& table, SymbolId f, const std::vector<SortId>& arg_sorts,
                   std::size_t budget, std::vector<Term>& partial, std::vector<Term>& out) {
    std::size_t i = partial.size();
    if (i == arg_sorts.size()) {
        if (budget == 0) out.push_back(Term::app_unchecked(f, partial));
        return;
    }
    std::size_t remaining_min = arg_sorts.size() - i - 1; // later args need >= 1 each
    for (std::size_t s = 1; s + remaining_min <= budget; ++s) {
        for (const Term& cand : table[arg_sorts[i]][s]) {
            partial.push_back(cand);
            fill_products(table, f, arg_sorts, budget - s, partial, out);
            partial.pop_back();
        }
    }
}

SizeTable build_data_table(const Trs& trs, std::size_t max_size) {
    SizeTable table(trs.sorts().size());
    for (auto& per_sort : table) per_sort.resize(max_size + 1);
    for (std::size_t s = 1; s <= max_size; ++s) {
        for (SymbolId f = 0; f < trs.symbols().size(); ++f) {
            if (trs.is_defined(f)) continue;
            const SimpleType& ty = trs.symbol(f).type;
            if (ty.arity() == 0) {
                if (s == 1) table[ty.result][1].push_back(Term::app_unchecked(f, {}));
                continue;
            }
            std::vector<Term> partial;
            fill_products(table, f, ty.args, s - 1, partial, table[ty.result][s]);
        }
    }
    return table;
}

} // namespace

std::vector<Term> enumerate_data_terms(const Trs& trs, SortId sort, std::size_t max_size) {
    SizeTable table = build_data_table(trs, max_size);
    std::vector<Term> out;
    for (std::size_t s = 1; s <= max_size; ++s)
        out.insert(out.end(), table[sort][s].begin(), table[sort][s].end());
    return out;
}

std::vector<Term> enumerate_basic_terms(const Trs& trs, std::size_t max_size) {
    if (max_size < 1) return {};
    SizeTable data = build_data_table(trs, max_size);
    std::vector<Term> out;
    for (SymbolId f = 0; f < trs.symbols().size(); ++f) {
        if (!trs.is_defined(f)) continue;
        const SimpleType& ty = trs.symbol(f).type;
        for (std::size_t total = ty.arity() + 1; total <= max_size; ++total) {
            std::vector<Term> partial;
            if (ty.arity() == 0) {
                if (total == 1) out.push_back(Term::app_unchecked(f, {}));
                continue;
            }
            fill_products(data, f, ty.args, total - 1, partial, out);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Term& a, const Term& b) { return a.size() < b.size(); });
    return out;
}

std::vector<Term> enumerate_ground_terms(const Trs& trs, std::size_t max_size) {
    SizeTable table(trs.sorts().size());
    for (auto& per_sort : table) per_sort.resize(max_size + 1);
    for (std::size_t s = 1; s <= max_size; ++s) {
        for (SymbolId f = 0; f < trs.symbols().size(); ++f) {
            const SimpleType& ty = trs.symbol(f).type;
            if (ty.arity() == 0) {
                if (s == 1) table[ty.result][1].push_back(Term::app_unchecked(f, {}));
                continue;
            }
            std::vector<Term> partial;
            fill_products(table, f, ty.args, s - 1, partial, table[ty.result][s]);
        }
    }
    std::vector<Term> out;
    for (std::size_t s = 1; s <= max_size; ++s)
        for (const auto& per_sort : table)
            out.insert(out.end(), per_sort[s].begin(), per_sort[s].end());
    std::sort(out.begin(), out.end(),
              [](const Term& a, const Term& b) { return a.size() < b.size(); });
    return out;
}

std::vector<IrcRow> irc_oracle(const Trs& trs, std::size_t n_max, std::uint64_t budget,
                               StepKind kind, bool ground) {
    std::vector<Term> starts =
        ground ? enumerate_ground_terms(trs, n_max) : enumerate_basic_terms(trs, n_max);
    DhCache cache(trs, kind);
    std::vector<IrcRow> rows(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) rows[n].n = n;
    for (const Term& t : starts) {
        DhResult r = cache.height(t, budget);
        std::size_t n = t.size();
        if (r.diverged)
            rows[n].diverged = true;
        else
            rows[n].value = std::max(rows[n].value, r.height);
    }
    // comp is monotone in n: fold the per-size maxima upward.
    for (std::size_t n = 1; n <= n_max; ++n) {
        rows[n].value = std::max(rows[n].value, rows[n - 1].value);
        rows[n].diverged = rows[n].diverged || rows[n - 1].diverged;
    }
    return rows;
}

} // namespace tuplecert
