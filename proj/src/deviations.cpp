#include "loopalg/deviations.hpp"

#include "loopalg/errors.hpp"

namespace loopalg {

LoopTerm commutator(const LoopTerm& a, const LoopTerm& b) {
    return LoopTerm::left_div(LoopTerm::mul(b, a), LoopTerm::mul(a, b));
}

LoopTerm associator(const LoopTerm& a, const LoopTerm& b, const LoopTerm& c) {
    return LoopTerm::left_div(LoopTerm::mul(a, LoopTerm::mul(b, c)),
                              LoopTerm::mul(LoopTerm::mul(a, b), c));
}

bool valid_deviation_index(std::span<const int> alphas) {
    for (std::size_t k = 0; k < alphas.size(); ++k)
        if (alphas[k] < 1 || alphas[k] > static_cast<int>(k) + 3)
            return false;
    return true;
}

std::vector<std::vector<int>> enumerate_deviation_indices(int n) {
    if (n < 0)
        throw usage_error("deviation level must be >= 0");
    std::vector<std::vector<int>> out{{}};
    for (int k = 1; k <= n; ++k) {
        std::vector<std::vector<int>> next;
        next.reserve(out.size() * static_cast<std::size_t>(k + 2));
        for (const auto& prefix : out)
            for (int a = 1; a <= k + 2; ++a) {
                auto ext = prefix;
                ext.push_back(a);
                next.push_back(std::move(ext));
            }
        out = std::move(next);
    }
    return out;
}

LoopTerm deviation(std::span<const LoopTerm> args, std::span<const int> alphas) {
    const std::size_t n = alphas.size();
    if (args.size() != n + 3)
        throw usage_error("deviation of level n takes n+3 arguments");
    if (!valid_deviation_index(alphas))
        throw usage_error("invalid deviation index sequence");
    if (n == 0)
        return associator(args[0], args[1], args[2]);

    const std::size_t slot = static_cast<std::size_t>(alphas[n - 1]) - 1;
    auto inner = [&](const LoopTerm& x) {
        // (a_1,...,a_{slot-1}, x, a_{slot+2},..., a_{n+3}) at level n-1
        std::vector<LoopTerm> sub;
        sub.reserve(args.size() - 1);
        for (std::size_t i = 0; i < slot; ++i)
            sub.push_back(args[i]);
        sub.push_back(x);
        for (std::size_t i = slot + 2; i < args.size(); ++i)
            sub.push_back(args[i]);
        return deviation(sub, alphas.subspan(0, n - 1));
    };
    LoopTerm u = inner(args[slot]);
    LoopTerm v = inner(args[slot + 1]);
    LoopTerm w = inner(LoopTerm::mul(args[slot], args[slot + 1]));
    return LoopTerm::left_div(LoopTerm::mul(u, v), w);
}

LoopTerm deviation_P(int m, int n, std::span<const LoopTerm> xs,
                     std::span<const LoopTerm> ys, const LoopTerm& z) {
    if (m < 1 || n < 1)
        throw usage_error("deviation_P requires m >= 1 and n >= 1");
    if (xs.size() != static_cast<std::size_t>(m) ||
        ys.size() != static_cast<std::size_t>(n))
        throw usage_error("deviation_P argument count mismatch");
    std::vector<int> alphas;
    alphas.reserve(static_cast<std::size_t>(m + n - 2));
    for (int i = 0; i < m - 1; ++i)
        alphas.push_back(1);
    for (int i = 0; i < n - 1; ++i)
        alphas.push_back(m + 1);
    std::vector<LoopTerm> args(xs.begin(), xs.end());
    args.insert(args.end(), ys.begin(), ys.end());
    args.push_back(z);
    return deviation(args, alphas);
}

} // namespace loopalg
