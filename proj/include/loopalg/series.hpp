#pragma once

#include "loopalg/coeff.hpp"
#include "loopalg/monomial.hpp"
#include "loopalg/variables.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace loopalg {

// Drops monomials whose multidegree exceeds 1 in any tracked variable.
// Multidegrees only grow under multiplication, so eager dropping is sound
// whenever the quantity finally extracted is a multilinear part over a
// subset of the tracked variables.
class PruneFilter {
  public:
    explicit PruneFilter(const VarSet& tracked);
    bool keep(const Monomial& m) const;
    // Presence bitmask over tracked variables; only meaningful when keep(m).
    std::uint64_t mask(const Monomial& m) const;
    // Would prod(a, b) survive, given both factors already pass keep()?
    bool disjoint(const Monomial& a, const Monomial& b) const {
        return (mask(a) & mask(b)) == 0;
    }

  private:
    std::vector<int> bit_of_var_; // -1 when untracked
};

// Truncated formal power series in non-associative variables over exact
// rationals: a constant term plus, for each degree 1..trunc, a sparse
// map of monomials to nonzero coefficients. All arithmetic is exact and
// everything is implicitly mod degree > trunc.
class Series {
  public:
    using TermMap = std::map<Monomial, Coeff>;

    explicit Series(int trunc);
    static Series one(int trunc) { return constant(Coeff(1), trunc); }
    static Series constant(Coeff c, int trunc);
    static Series variable(VarId v, int trunc);
    static Series term(Monomial m, Coeff c, int trunc);

    int trunc() const { return trunc_; }
    const Coeff& constant_part() const { return constant_; }
    const TermMap& bucket(int degree) const;
    bool is_zero() const;
    Coeff coeff_of(const Monomial& m) const;
    // Number of stored monomials (constant excluded).
    std::size_t term_count() const;

    void set_constant(Coeff c) { constant_ = std::move(c); }
    // Accumulates c onto m, erasing the entry if it cancels to zero.
    // Terms beyond the truncation degree are discarded.
    void add_term(const Monomial& m, const Coeff& c);

    // Visits the constant (when nonzero) and then every term in canonical
    // monomial order. The constant is passed with a null monomial pointer.
    void for_each(const std::function<void(const Monomial*, const Coeff&)>& fn) const;

    friend bool operator==(const Series& a, const Series& b) {
        return a.trunc_ == b.trunc_ && a.constant_ == b.constant_ &&
               a.buckets_ == b.buckets_;
    }

  private:
    int trunc_;
    Coeff constant_;
    std::vector<TermMap> buckets_; // index = degree, [0] unused
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series negate(const Series& s);
Series scalar_mul(const Series& s, const Coeff& c);
Series mul(const Series& a, const Series& b, const PruneFilter* prune = nullptr);

// Solves a*x = b for x, degree by degree; requires constant(a) == 1.
Series left_div(const Series& a, const Series& b, const PruneFilter* prune = nullptr);
// Solves x*b = a for x; requires constant(b) == 1.
Series right_div(const Series& a, const Series& b, const PruneFilter* prune = nullptr);

Series homogeneous_part(const Series& s, int degree);
// Smallest degree >= 1 carrying a nonzero term, with that part.
std::optional<std::pair<int, Series>> lowest_term(const Series& s);

// The part of s multilinear on exactly the variables of `on`: each variable
// of `on` occurs once, no others occur. For an empty set this is the
// constant part.
Series multilinear_part(const Series& s, const VarSet& on);

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return sub(a, b); }
inline Series operator-(const Series& a) { return negate(a); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }
inline Series operator*(const Coeff& c, const Series& s) { return scalar_mul(s, c); }

std::string str(const Series& s, const VarTable& table);

// Element of the truncated tensor square. Keys are pairs of factors where
// an absent monomial stands for the unit; total degree is bounded by trunc.
class TensorSeries {
  public:
    using Key = std::pair<std::optional<Monomial>, std::optional<Monomial>>;

    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const;
    };
    using TermMap = std::map<Key, Coeff, KeyLess>;

    explicit TensorSeries(int trunc) : trunc_(trunc) {}
    static TensorSeries unit(int trunc);

    int trunc() const { return trunc_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Key& k, const Coeff& c);

    friend bool operator==(const TensorSeries& a, const TensorSeries& b) {
        return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
    }

  private:
    int trunc_;
    TermMap terms_;
};

int total_degree(const TensorSeries::Key& k);
TensorSeries tensor_add(const TensorSeries& a, const TensorSeries& b);
TensorSeries tensor_sub(const TensorSeries& a, const TensorSeries& b);
TensorSeries tensor_mul(const TensorSeries& a, const TensorSeries& b);
std::string str(const TensorSeries& t, const VarTable& table);

// The algebra homomorphism with every variable primitive:
// v -> v(x)1 + 1(x)v, truncated at total degree trunc(s).
TensorSeries comult(const Series& s);
// True iff comult(s) == s(x)1 + 1(x)s; requires constant(s) == 0.
bool is_primitive(const Series& s);

} // namespace loopalg
