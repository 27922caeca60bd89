#pragma once

#include "loopalg/series.hpp"
#include "loopalg/variables.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>

namespace loopalg {

// A word in the free loop on the session variables: unit, generators,
// products and the two divisions (l\r solves l*w = r, l/r solves w*r = l).
// Nodes are immutable and shared; equality is structural.
class LoopTerm {
  public:
    enum class Kind { One, Gen, Mul, LeftDiv, RightDiv };

    LoopTerm() : LoopTerm(one()) {}

    static LoopTerm one();
    static LoopTerm gen(VarId v);
    static LoopTerm mul(const LoopTerm& l, const LoopTerm& r);
    static LoopTerm left_div(const LoopTerm& l, const LoopTerm& r);
    static LoopTerm right_div(const LoopTerm& l, const LoopTerm& r);

    Kind kind() const { return node_->kind; }
    VarId var() const;
    LoopTerm left() const;
    LoopTerm right() const;

    // Stable identity of the shared node; used for memoized evaluation.
    const void* id() const { return node_.get(); }

    friend bool operator==(const LoopTerm& a, const LoopTerm& b);
    friend bool operator!=(const LoopTerm& a, const LoopTerm& b) { return !(a == b); }

  private:
    struct Node {
        Kind kind;
        VarId v{};
        std::shared_ptr<const Node> l, r;
    };
    explicit LoopTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// Grammar: term := atom { ("*" | "\" | "/") atom }       (left-associative,
//          atom := "1" | ident | "(" term ")"             equal precedence)
// Identifiers resolve against `table`; with auto_register set, unknown
// identifiers are added to the table instead of raising a parse error.
LoopTerm parse_term(std::string_view text, VarTable& table, bool auto_register = false);

// Children of binary nodes are always parenthesized; the root operator is
// printed bare with surrounding spaces, e.g. "(a*(b*c)) \ ((a*b)*c)".
std::string str(const LoopTerm& t, const VarTable& table);

void collect_vars(const LoopTerm& t, VarSet& out);
bool occurs(const LoopTerm& t, VarId v);
LoopTerm term_from_monomial(const Monomial& m);

// Structural evaluation into the truncated series algebra: 1 -> 1,
// x -> 1 + x', products and divisions to their series counterparts.
Series magnus(const LoopTerm& t, int trunc, const PruneFilter* prune = nullptr);

// Lowest positive degree in magnus(t) - 1; nullopt when the truncated
// expansion is exactly 1, i.e. the degree exceeds trunc.
std::optional<int> dim_degree(const LoopTerm& t, int trunc);

struct TaylorExpansion {
    int order;
    std::map<Monomial, Coeff> coeffs; // degrees 1..order
    bool remainder_known_nonzero;     // terms of degree order+1 seen at probe
};

// Coefficients of magnus(t) - 1 through the given order, probing one degree
// beyond for a remainder.
TaylorExpansion taylor(const LoopTerm& t, int order);

// Simultaneous substitution; must bind every variable occurring in t.
LoopTerm substitute(const LoopTerm& t, const std::map<VarId, LoopTerm>& binding);

// Deterministic in (gens, depth_bound, seed): generators or the unit at
// depth zero, the three binary constructors with equal weight above it.
LoopTerm random_term(std::span<const VarId> gens, int depth_bound, std::uint64_t seed);
LoopTerm random_term(std::span<const VarId> gens, int depth_bound, std::mt19937_64& rng);

} // namespace loopalg
