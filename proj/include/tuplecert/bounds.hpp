#pragma once

#include "tuplecert/compat.hpp"
#include "tuplecert/interpretation.hpp"

#include <string>
#include <vector>

namespace tuplecert {

/// How fast a cost or size function can grow: Additive (bounded by a
/// constant plus the sum of its inputs), Linear (bounded by a multiple of
/// that), or Polynomial of some total degree. Max-polynomials are always
/// polynomially bounded.
struct BoundClass {
    enum class Kind { Additive, Linear, Polynomial } kind = Kind::Additive;
    int degree = 1;

    bool additive() const { return kind == Kind::Additive; }
    bool linear() const { return kind != Kind::Polynomial; }
    std::string str() const {
        switch (kind) {
        case Kind::Additive: return "additive";
        case Kind::Linear: return "linear";
        case Kind::Polynomial: return "polynomial(" + std::to_string(degree) + ")";
        }
        return "";
    }
};

/// Classification of a size function given as one max-polynomial per result
/// component: additive iff the component sum stays within a constant plus
/// the sum of the argument atoms (degree <= 1, per-atom coefficients summing
/// to at most 1); linear iff every component has degree <= 1.
BoundClass classify_size(const std::vector<MaxPoly>& comps);

struct SymbolBounds {
    SymbolId symbol = 0;
    BoundClass cost;
    BoundClass size;
};

/// Per-symbol classification: size components and each cost step.
std::vector<SymbolBounds> classify_interpretation(const Interpretation& interp, const Trs& trs);

struct IrcVerdict {
    enum class Kind { LinearBound, PolyBound, Inconclusive } kind = Kind::Inconclusive;
    int degree = 1;      ///< exponent for PolyBound
    bool estimate = false; ///< set when a defined size degree exceeds 1
    std::string note;

    std::string str() const {
        switch (kind) {
        case Kind::LinearBound: return "O(n)";
        case Kind::PolyBound: return "O(n^" + std::to_string(degree) + ")";
        case Kind::Inconclusive: return "inconclusive";
        }
        return "";
    }
};

struct PreconditionViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Runtime-complexity class induced by a compatible interpretation:
/// everything additively bounded gives a linear bound; additive constructors
/// with polynomially bounded defined symbols give a polynomial bound whose
/// exponent is the largest cost degree of a defined symbol; non-additive
/// constructor sizes are inconclusive (data sizes may blow up
/// exponentially in the term size).
IrcVerdict irc_bound(const Trs& trs, const Interpretation& interp, const Verdict& compat);

/// A constant c with measured irc(n) <= c*n for interpretations classified
/// additive everywhere (loose, for cross-validation against the oracle).
long long linear_irc_constant(const Trs& trs, const Interpretation& interp);

} // namespace tuplecert
