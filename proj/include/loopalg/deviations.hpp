#pragma once

#include "loopalg/loop_term.hpp"

#include <span>
#include <vector>

namespace loopalg {

// (b*a) \ (a*b)
LoopTerm commutator(const LoopTerm& a, const LoopTerm& b);
// (a*(b*c)) \ ((a*b)*c)
LoopTerm associator(const LoopTerm& a, const LoopTerm& b, const LoopTerm& c);

// Index sequences are valid when 1 <= alpha_k <= k+2 for every prefix
// position k; there are (n+2)!/2 of them at length n.
bool valid_deviation_index(std::span<const int> alphas);
std::vector<std::vector<int>> enumerate_deviation_indices(int n);

// Level-n associator deviation on n+3 arguments. Level zero is the
// associator; level n substitutes into the level-(n-1) deviation A at the
// slot picked by alpha_n:  (A(a_k)*A(a_{k+1})) \ A(a_k*a_{k+1}).
LoopTerm deviation(std::span<const LoopTerm> args, std::span<const int> alphas);

// The deviation with index sequence (1 x (m-1), m+1 x (n-1)) on arguments
// (xs..., ys..., z); its expansion realizes the primitive operation of the
// same bidegree.
LoopTerm deviation_P(int m, int n, std::span<const LoopTerm> xs,
                     std::span<const LoopTerm> ys, const LoopTerm& z);

} // namespace loopalg
