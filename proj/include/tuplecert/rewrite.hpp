#pragma once

#include "tuplecert/trs.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace tuplecert {

enum class StepKind { Innermost, Full };

/// Path of argument indices from the root; prefix_len identifies the spine
/// prefix that forms the redex when a rule is applied below full arity.
struct Position {
    std::vector<std::uint32_t> path;
    std::uint32_t prefix_len = 0;

    bool operator==(const Position&) const = default;
};

struct Step {
    Term result;
    Position pos;
    std::size_t rule_index = 0;
};

/// All one-step reducts of t under the chosen relation, one entry per
/// (position, rule). An empty result means t is a normal form.
std::vector<Step> successors(const Trs& trs, const Term& t, StepKind kind);

bool is_normal_form(const Trs& trs, const Term& t);

/// First-order syntactic matching of a rule side against a term; variables
/// in the subject are rigid.
bool match(const Term& pattern, const Term& subject, Substitution& out);

struct DhResult {
    bool diverged = false;
    std::uint64_t height = 0; ///< exact height, or the budget when diverged
    std::vector<Term> trace;  ///< a maximal reduction witnessing the height
};

inline constexpr std::uint64_t kDefaultBudget = 10'000;

/// Length of the longest reduction from t. Divergence is reported when a
/// term reappears on its own reduction path or a branch exceeds the budget.
DhResult derivation_height(const Trs& trs, const Term& t, StepKind kind,
                           std::uint64_t budget = kDefaultBudget);

/// Shared memo table for repeated derivation-height queries over one TRS.
class DhCache {
public:
    explicit DhCache(const Trs& trs, StepKind kind) : trs_(trs), kind_(kind) {}

    DhResult height(const Term& t, std::uint64_t budget = kDefaultBudget);

private:
    struct Entry {
        bool diverged = false;
        std::uint64_t height = 0;
        std::vector<Term> best; // successor chain heads for trace reconstruction
    };

    struct Frame;
    Entry compute(const Term& t, std::uint64_t depth, std::uint64_t budget, bool& capped);

    const Trs& trs_;
    StepKind kind_;
    std::unordered_map<Term, Entry, TermHash> memo_;
    std::unordered_map<Term, int, TermHash> on_path_;
};

/// All data terms of the given sort with size <= max_size.
std::vector<Term> enumerate_data_terms(const Trs& trs, SortId sort, std::size_t max_size);

/// All basic terms (defined head fully applied to data) with size <= max_size.
std::vector<Term> enumerate_basic_terms(const Trs& trs, std::size_t max_size);

/// All fully applied ground terms with size <= max_size.
std::vector<Term> enumerate_ground_terms(const Trs& trs, std::size_t max_size);

struct IrcRow {
    std::size_t n = 0;
    std::uint64_t value = 0;
    bool diverged = false;
};

/// Runtime-complexity table by brute force: for each n <= n_max the maximum
/// derivation height over start terms of size <= n. Start terms are basic
/// terms, or every ground term when `ground` is set.
std::vector<IrcRow> irc_oracle(const Trs& trs, std::size_t n_max,
                               std::uint64_t budget = kDefaultBudget,
                               StepKind kind = StepKind::Innermost, bool ground = false);

} // namespace tuplecert
