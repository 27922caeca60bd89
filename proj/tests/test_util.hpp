#pragma once

#include "loopalg/series.hpp"

#include <span>
#include <vector>

namespace loopalg::testutil {

// Every monomial of the given degree over the given variables.
inline std::vector<Monomial> all_monomials(int degree, std::span<const VarId> vars) {
    std::vector<Monomial> out;
    if (degree == 1) {
        for (VarId v : vars)
            out.push_back(Monomial::leaf(v));
        return out;
    }
    for (int split = 1; split < degree; ++split)
        for (const auto& l : all_monomials(split, vars))
            for (const auto& r : all_monomials(degree - split, vars))
                out.push_back(prod(l, r));
    return out;
}

// 1 - v + v^2 - v^3 + ... with one fixed nesting: v^(k+1) = v * v^k when
// right_nested, v^k * v otherwise.
inline Series alternating_power_series(VarId v, int trunc, bool right_nested) {
    Series s = Series::one(trunc);
    Monomial pow = Monomial::leaf(v);
    for (int d = 1; d <= trunc; ++d) {
        s.add_term(pow, coeff(d % 2 == 0 ? 1 : -1));
        if (d < trunc)
            pow = right_nested ? prod(Monomial::leaf(v), pow)
                               : prod(pow, Monomial::leaf(v));
    }
    return s;
}

// Independent comultiplication oracle: each leaf goes left or right, the
// tree collapses onto the chosen leaves. Enumerates all 2^degree splits.
inline std::optional<Monomial> restrict_to(const Monomial& m, std::uint64_t leaf_mask,
                                           int& leaf_pos) {
    if (m.is_leaf()) {
        bool keep = (leaf_mask >> leaf_pos) & 1;
        ++leaf_pos;
        return keep ? std::optional<Monomial>(m) : std::nullopt;
    }
    auto [l, r] = m.split();
    auto rl = restrict_to(l, leaf_mask, leaf_pos);
    auto rr = restrict_to(r, leaf_mask, leaf_pos);
    if (!rl)
        return rr;
    if (!rr)
        return rl;
    return prod(*rl, *rr);
}

inline TensorSeries comult_oracle(const Series& s) {
    TensorSeries t(s.trunc());
    if (s.constant_part() != 0)
        t.add_term({std::nullopt, std::nullopt}, s.constant_part());
    for (int d = 1; d <= s.trunc(); ++d)
        for (const auto& [m, c] : s.bucket(d)) {
            for (std::uint64_t mask = 0; mask < (1ull << d); ++mask) {
                int pos = 0;
                auto left = restrict_to(m, mask, pos);
                pos = 0;
                auto right = restrict_to(m, ~mask, pos);
                t.add_term({left, right}, c);
            }
        }
    return t;
}

// (a*b)*c - a*(b*c) in the series algebra.
inline Series algebra_associator(const Series& a, const Series& b, const Series& c) {
    return sub(mul(mul(a, b), c), mul(a, mul(b, c)));
}

} // namespace loopalg::testutil
