#include "loopalg/su_ops.hpp"

#include "loopalg/errors.hpp"

#include <map>
#include <utility>

namespace loopalg {

namespace {

void validate(const POpRequest& req) {
    if (req.xs.empty() || req.ys.empty())
        throw usage_error("primitive_op requires r >= 1 and s >= 1");
    const int n = req.z.trunc();
    auto check = [&](const Series& s) {
        if (s.trunc() != n)
            throw usage_error("primitive_op arguments must share a truncation degree");
        if (s.constant_part() != 0)
            throw usage_error("primitive_op arguments must have zero constant term");
    };
    for (const auto& s : req.xs)
        check(s);
    for (const auto& s : req.ys)
        check(s);
    check(req.z);
}

using Mask = std::uint32_t;

// Memoized solver over subsequence bitmasks of the fixed argument lists.
class PopSolver {
  public:
    explicit PopSolver(const POpRequest& req) : req_(req), trunc_(req.z.trunc()) {}

    Series solve(Mask mu, Mask mv) {
        auto it = memo_.find({mu, mv});
        if (it != memo_.end())
            return it->second;

        Series u = left_normed_product(req_.xs, mu);
        Series v = left_normed_product(req_.ys, mv);
        Series acc = mul(mul(u, v), req_.z) - mul(u, mul(v, req_.z));
        // subtract every split except the one defining p itself
        for (Mask su = mu;; su = (su - 1) & mu) {
            for (Mask sv = mv;; sv = (sv - 1) & mv) {
                bool both_first_empty = (su == 0 && sv == 0);
                bool second_nonempty = (su != mu) && (sv != mv);
                if (!both_first_empty && second_nonempty) {
                    Series head = factor_product(su, sv);
                    acc = acc - mul(head, solve(mu & ~su, mv & ~sv));
                }
                if (sv == 0)
                    break;
            }
            if (su == 0)
                break;
        }
        memo_.emplace(std::make_pair(mu, mv), acc);
        return acc;
    }

    // Sum over the splits with a nonempty head; the (empty, empty) split
    // contributes p itself and is added by the caller.
    Series identity_sum(Mask mu, Mask mv) {
        Series acc(trunc_);
        for (Mask su = mu;; su = (su - 1) & mu) {
            for (Mask sv = mv;; sv = (sv - 1) & mv) {
                bool head_nonempty = (su != 0 || sv != 0);
                if (head_nonempty && (su != mu) && (sv != mv)) {
                    Series head = factor_product(su, sv);
                    acc = acc + mul(head, solve(mu & ~su, mv & ~sv));
                }
                if (sv == 0)
                    break;
            }
            if (su == 0)
                break;
        }
        return acc;
    }

    Series lhs(Mask mu, Mask mv) {
        Series u = left_normed_product(req_.xs, mu);
        Series v = left_normed_product(req_.ys, mv);
        return mul(mul(u, v), req_.z) - mul(u, mul(v, req_.z));
    }

    static Mask full(std::size_t n) { return (Mask{1} << n) - 1; }

  private:
    Series left_normed_product(const std::vector<Series>& args, Mask mask) const {
        Series acc(trunc_);
        bool first = true;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (!(mask & (Mask{1} << i)))
                continue;
            if (first) {
                acc = args[i];
                first = false;
            } else {
                acc = mul(acc, args[i]);
            }
        }
        if (first)
            throw usage_error("empty product requested");
        return acc;
    }

    // u_(1)*v_(1); an empty side contributes nothing, both empty never occurs.
    Series factor_product(Mask su, Mask sv) const {
        if (su == 0)
            return left_normed_product(req_.ys, sv);
        if (sv == 0)
            return left_normed_product(req_.xs, su);
        return mul(left_normed_product(req_.xs, su), left_normed_product(req_.ys, sv));
    }

    const POpRequest& req_;
    int trunc_;
    std::map<std::pair<Mask, Mask>, Series> memo_;
};

} // namespace

Series primitive_op(const POpRequest& req) {
    validate(req);
    PopSolver solver(req);
    return solver.solve(PopSolver::full(req.xs.size()), PopSolver::full(req.ys.size()));
}

Series primitive_op(std::vector<Series> xs, std::vector<Series> ys, Series z) {
    POpRequest req{std::move(xs), std::move(ys), std::move(z)};
    return primitive_op(req);
}

Series defining_identity_residual(const POpRequest& req) {
    validate(req);
    PopSolver solver(req);
    Mask mu = PopSolver::full(req.xs.size());
    Mask mv = PopSolver::full(req.ys.size());
    Series total = solver.identity_sum(mu, mv) + solver.solve(mu, mv);
    return solver.lhs(mu, mv) - total;
}

} // namespace loopalg
