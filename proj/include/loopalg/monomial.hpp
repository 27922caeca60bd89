#pragma once

#include "loopalg/variables.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace loopalg {

// A non-associative word: a binary tree with variable leaves, stored as its
// preorder serialization. Code entries: 0 marks an internal node, v+1 a leaf
// for variable index v. Structurally identical trees have identical codes,
// so equality, hashing and ordering all reduce to the code vector.
//
// The canonical total order is degree-major, then lexicographic on the code;
// with this encoding left-nested products sort before right-nested ones.
class Monomial {
  public:
    static Monomial leaf(VarId v);
    static Monomial prod(const Monomial& a, const Monomial& b);

    // Validates that the code is a well-formed preorder tree.
    static Monomial from_code(std::vector<std::uint32_t> code);

    int degree() const { return degree_; }
    bool is_leaf() const { return code_.size() == 1; }
    VarId leaf_var() const;
    // Left and right factors of a product node.
    std::pair<Monomial, Monomial> split() const;

    const std::vector<std::uint32_t>& code() const { return code_; }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.code_ == b.code_;
    }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.degree_ != b.degree_)
            return a.degree_ < b.degree_;
        return a.code_ < b.code_;
    }

  private:
    Monomial() = default;
    std::vector<std::uint32_t> code_;
    int degree_ = 0;
};

Monomial prod(const Monomial& a, const Monomial& b);
Monomial left_normed(std::span<const VarId> vars);

std::map<VarId, int> multidegree(const Monomial& m);
// Every variable of s occurs at least once.
bool is_balanced_mono(const Monomial& m, const VarSet& s);
// Multidegree is exactly 1 on each variable of s and 0 elsewhere.
bool is_multilinear_on(const Monomial& m, const VarSet& s);

// Fully parenthesized infix, e.g. "((x1*x2)*z)".
std::string str(const Monomial& m, const VarTable& table);

} // namespace loopalg

template <> struct std::hash<loopalg::Monomial> {
    std::size_t operator()(const loopalg::Monomial& m) const noexcept {
        std::size_t h = 0xcbf29ce484222325ull;
        for (std::uint32_t x : m.code())
            h = (h ^ x) * 0x100000001b3ull;
        return h;
    }
};
