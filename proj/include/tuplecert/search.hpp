#pragma once

#include "tuplecert/compat.hpp"
#include "tuplecert/constraint.hpp"
#include "tuplecert/interpretation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tuplecert {

/// Parametric template families for defined symbols, from plain affine up
/// to full degree-2 support; Linear/Simple/SimpleQuadratic additionally
/// multiply atoms by one menu functional (a single atom or a max of two).
enum class ShapeClass { Additive, Linear, Simple, Quadratic, SimpleQuadratic };

std::string to_string(ShapeClass c);

enum class StrategyKind { Blind, Progressive, Pattern };

struct SearchConfig {
    int k_max = 2;
    long long coeff_bound = 3;
    StrategyKind strategy = StrategyKind::Progressive;
    std::uint64_t seed = 0;
    double time_budget_seconds = 60.0;
};

/// Call-graph strata of defined symbols: strongly connected components in
/// topological order, so the rules of each stratum mention only constructors
/// and symbols of the same or earlier strata.
std::vector<std::vector<SymbolId>> stratify(const Trs& trs);

struct StratumRecord {
    std::size_t index = 0;
    std::vector<SymbolId> symbols;
    std::string shape;      ///< accepted proposal description
    Constraint constraints; ///< the solved constraint set
    Model model;
    std::string smt; ///< SMT-LIB2 export of the constraint set
};

struct SearchOutcome {
    bool yes = false;
    bool timed_out = false;
    std::optional<Interpretation> interpretation; ///< set on yes, verified compatible
    std::vector<StratumRecord> strata;            ///< one per solved stratum
    std::string note;
};

SearchOutcome search(const Trs& trs, const SearchConfig& cfg);

} // namespace tuplecert
