#pragma once

#include "loopalg/series.hpp"

#include <vector>

namespace loopalg {

// Arguments for a primitive operation: r series xs, s series ys and z, all
// with zero constant term and a common truncation degree.
struct POpRequest {
    std::vector<Series> xs;
    std::vector<Series> ys;
    Series z;
};

// The multilinear primitive operation of bidegree (r, s) applied to
// (xs; ys; z), computed from its defining recurrence
//   (uv)z - u(vz) = sum over complementary-subsequence splits of
//                   u_(1)*v_(1) * p(u_(2); v_(2); z)
// where u, v are the left-normed products of xs and ys, subsequences keep
// their original order, and terms whose second part is empty on either
// side vanish. Solving for the split with both first parts empty defines p.
Series primitive_op(const POpRequest& req);
Series primitive_op(std::vector<Series> xs, std::vector<Series> ys, Series z);

// Left side minus the full decomposition sum; zero when the computed
// operations satisfy the recurrence.
Series defining_identity_residual(const POpRequest& req);

} // namespace loopalg
