#include "loopalg/verify.hpp"

#include "loopalg/errors.hpp"
#include "loopalg/su_ops.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <thread>

namespace loopalg {

std::string_view verdict_str(Verdict v) {
    switch (v) {
    case Verdict::Pass:
        return "pass";
    case Verdict::Fail:
        return "fail";
    default:
        return "inconclusive";
    }
}

namespace {

class Stopwatch {
  public:
    double ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::optional<std::string> first_series_diff(const Series& got, const Series& want,
                                             const VarTable& table) {
    Series diff = sub(got, want);
    if (diff.constant_part() != 0)
        return "constant term differs by " + coeff_str(diff.constant_part());
    for (int d = 1; d <= diff.trunc(); ++d)
        if (!diff.bucket(d).empty()) {
            const auto& [m, c] = *diff.bucket(d).begin();
            return str(m, table) + " coefficient differs by " + coeff_str(c);
        }
    return std::nullopt;
}

std::vector<VerificationReport>
run_cases(int count, int jobs, const std::function<VerificationReport(int)>& fn) {
    std::vector<VerificationReport> out(static_cast<std::size_t>(count));
    auto guarded = [&](int i) {
        try {
            out[static_cast<std::size_t>(i)] = fn(i);
        } catch (const std::exception& e) {
            VerificationReport r;
            r.case_id = "case-" + std::to_string(i);
            r.verdict = Verdict::Fail;
            r.witness = std::string("exception: ") + e.what();
            out[static_cast<std::size_t>(i)] = std::move(r);
        }
    };
    if (jobs <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i)
            guarded(i);
        return out;
    }
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= count)
                return;
            guarded(i);
        }
    };
    std::vector<std::thread> pool;
    int width = std::min(jobs, count);
    pool.reserve(static_cast<std::size_t>(width));
    for (int j = 0; j < width; ++j)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    return out;
}

std::map<VarId, LoopTerm> identity_binding(const LoopTerm& t) {
    VarSet vs;
    collect_vars(t, vs);
    std::map<VarId, LoopTerm> bind;
    for (VarId v : vs)
        bind.emplace(v, LoopTerm::gen(v));
    return bind;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

Monomial random_monomial(std::span<const VarId> vars, int degree, std::mt19937_64& rng) {
    if (degree <= 1)
        return Monomial::leaf(vars[draw(rng, vars.size())]);
    int split = 1 + static_cast<int>(draw(rng, static_cast<std::uint64_t>(degree - 1)));
    return prod(random_monomial(vars, split, rng),
                random_monomial(vars, degree - split, rng));
}

} // namespace

Series random_unit_series(std::span<const VarId> vars, int trunc, std::mt19937_64& rng) {
    Series s = Series::one(trunc);
    for (int d = 1; d <= trunc; ++d) {
        int terms = static_cast<int>(draw(rng, 3));
        for (int k = 0; k < terms; ++k) {
            long num = static_cast<long>(draw(rng, 7)) - 3;
            if (num == 0)
                num = 1;
            long den = 1 + static_cast<long>(draw(rng, 3));
            s.add_term(random_monomial(vars, d, rng), coeff(num, den));
        }
    }
    return s;
}

bool term_is_balanced(const LoopTerm& t, const VarSet& s, int trunc) {
    Series m = magnus(t, trunc);
    for (int d = 1; d <= trunc; ++d)
        for (const auto& [mono, c] : m.bucket(d))
            if (!is_balanced_mono(mono, s))
                return false;
    return true;
}

LoopTerm homomorphism_deviation(const LoopTerm& phi, VarId x, VarId y) {
    if (occurs(phi, y))
        throw usage_error("homomorphism_deviation: extension variable occurs in phi");
    auto bind_y = identity_binding(phi);
    auto bind_xy = identity_binding(phi);
    if (auto it = bind_y.find(x); it != bind_y.end())
        it->second = LoopTerm::gen(y);
    if (auto it = bind_xy.find(x); it != bind_xy.end())
        it->second = LoopTerm::mul(LoopTerm::gen(x), LoopTerm::gen(y));
    LoopTerm phi_y = substitute(phi, bind_y);
    LoopTerm phi_xy = substitute(phi, bind_xy);
    return LoopTerm::left_div(LoopTerm::mul(phi, phi_y), phi_xy);
}

VerificationReport verify_multilinear_substitution(const LoopTerm& phi, VarId x,
                                                   const VarSet& s, const VarSet& s_hat,
                                                   const LoopTerm& w, VarId y, int trunc,
                                                   const VarTable& table,
                                                   std::string case_id) {
    Stopwatch timer;
    if (s.size() < 2)
        throw usage_error("verify_multilinear_substitution: |s| must be >= 2");
    if (!s.count(x))
        throw usage_error("verify_multilinear_substitution: x must lie in s");
    for (VarId v : s)
        if (!s_hat.count(v))
            throw usage_error("verify_multilinear_substitution: s must lie in s_hat");
    if (s_hat.count(y))
        throw usage_error("verify_multilinear_substitution: y must be fresh");
    VarSet wv;
    collect_vars(w, wv);
    for (VarId v : wv)
        if (!s_hat.count(v))
            throw usage_error("verify_multilinear_substitution: w must be a word over s_hat");
    VarSet pv;
    collect_vars(phi, pv);
    for (VarId v : pv)
        if (!s.count(v))
            throw usage_error("verify_multilinear_substitution: phi must be a word over s");
    if (!term_is_balanced(phi, s, trunc))
        throw usage_error("verify_multilinear_substitution: phi is not balanced");

    LoopTerm ext = homomorphism_deviation(phi, x, y);
    auto bind_w = identity_binding(ext);
    bind_w.insert_or_assign(x, w);
    LoopTerm lhs_term = substitute(ext, bind_w);
    auto bind_wy = identity_binding(phi);
    bind_wy.insert_or_assign(x, LoopTerm::mul(w, LoopTerm::gen(y)));
    LoopTerm rhs_term = substitute(phi, bind_wy);

    VarSet target = s_hat;
    target.insert(y);
    PruneFilter filter(target);
    Series lhs = multilinear_part(magnus(lhs_term, trunc, &filter), target);
    Series rhs = multilinear_part(magnus(rhs_term, trunc, &filter), target);

    VerificationReport r;
    r.case_id = std::move(case_id);
    r.params = {{"phi", str(phi, table)},
                {"w", str(w, table)},
                {"x", table.name(x)},
                {"y", table.name(y)}};
    r.truncation = trunc;
    if (lhs == rhs) {
        r.verdict = Verdict::Pass;
    } else {
        r.verdict = Verdict::Fail;
        r.witness = first_series_diff(lhs, rhs, table);
    }
    r.millis = timer.ms();
    return r;
}

VerificationReport verify_grancosa(int m, int n, bool prune) {
    Stopwatch timer;
    if (m < 1 || n < 1)
        throw usage_error("verify_grancosa requires m >= 1 and n >= 1");
    const int trunc = m + n + 1;

    VarTable table;
    std::vector<VarId> vx, vy;
    std::vector<LoopTerm> tx, ty;
    std::vector<Series> sx, sy;
    for (int i = 1; i <= m; ++i) {
        VarId v = table.add("x" + std::to_string(i));
        vx.push_back(v);
        tx.push_back(LoopTerm::gen(v));
        sx.push_back(Series::variable(v, trunc));
    }
    for (int i = 1; i <= n; ++i) {
        VarId v = table.add("y" + std::to_string(i));
        vy.push_back(v);
        ty.push_back(LoopTerm::gen(v));
        sy.push_back(Series::variable(v, trunc));
    }
    VarId vz = table.add("z");

    VarSet all;
    for (VarId v : vx)
        all.insert(v);
    for (VarId v : vy)
        all.insert(v);
    all.insert(vz);

    std::optional<PruneFilter> filter;
    if (prune)
        filter.emplace(all);

    LoopTerm big = deviation_P(m, n, tx, ty, LoopTerm::gen(vz));
    Series expansion = magnus(big, trunc, filter ? &*filter : nullptr);

    VerificationReport r;
    r.case_id = "grancosa-" + std::to_string(m) + "-" + std::to_string(n);
    r.params = {{"m", std::to_string(m)},
                {"n", std::to_string(n)},
                {"prune", prune ? "on" : "off"}};
    r.truncation = trunc;

    for (int d = 1; d <= m + n; ++d) {
        if (!expansion.bucket(d).empty()) {
            const auto& [mono, c] = *expansion.bucket(d).begin();
            r.verdict = Verdict::Fail;
            r.witness = "unexpected term of degree " + std::to_string(d) + ": " +
                        coeff_str(c) + "*" + str(mono, table);
            r.millis = timer.ms();
            return r;
        }
    }

    Series got = homogeneous_part(expansion, trunc);
    Series want = primitive_op(sx, sy, Series::variable(vz, trunc));
    if (got == want) {
        r.verdict = Verdict::Pass;
    } else {
        r.verdict = Verdict::Fail;
        r.witness = first_series_diff(got, want, table);
    }
    r.millis = timer.ms();
    return r;
}

VerificationReport verify_primitive_lowest(const LoopTerm& t, int trunc,
                                           const VarTable& table, std::string case_id) {
    Stopwatch timer;
    VerificationReport r;
    r.case_id = std::move(case_id);
    r.params = {{"term", str(t, table)}};
    r.truncation = trunc;

    Series s = magnus(t, trunc);
    s.set_constant(s.constant_part() - 1);
    auto low = lowest_term(s);
    if (!low) {
        r.verdict = Verdict::Inconclusive;
        r.millis = timer.ms();
        return r;
    }
    const Series& part = low->second;
    if (is_primitive(part)) {
        r.verdict = Verdict::Pass;
    } else {
        r.verdict = Verdict::Fail;
        TensorSeries expected(part.trunc());
        for (const auto& [m, c] : part.bucket(low->first)) {
            expected.add_term({m, std::nullopt}, c);
            expected.add_term({std::nullopt, m}, c);
        }
        TensorSeries diff = tensor_sub(comult(part), expected);
        const auto& [k, c] = *diff.terms().begin();
        auto side = [&](const std::optional<Monomial>& m) {
            return m ? str(*m, table) : std::string("1");
        };
        r.witness = "comultiplication defect " + coeff_str(c) + "*" + side(k.first) +
                    "(x)" + side(k.second) + " at degree " + std::to_string(low->first);
    }
    r.millis = timer.ms();
    return r;
}

std::vector<VerificationReport> run_axioms_suite(int trunc, int cases,
                                                 std::uint64_t seed, int jobs) {
    return run_cases(cases, jobs, [=](int i) {
        Stopwatch timer;
        VarTable table;
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ull);
        int alphabet = 1 + static_cast<int>(draw(rng, 3));
        std::vector<VarId> vars;
        const char* names[] = {"x", "y", "z"};
        for (int k = 0; k < alphabet; ++k)
            vars.push_back(table.add(names[k]));

        Series a = random_unit_series(vars, trunc, rng);
        Series b = random_unit_series(vars, trunc, rng);

        VerificationReport r;
        r.case_id = "axioms-" + std::to_string(i);
        r.params = {{"alphabet", std::to_string(alphabet)},
                    {"a", str(a, table)},
                    {"b", str(b, table)}};
        r.truncation = trunc;
        r.verdict = Verdict::Pass;

        struct Check {
            const char* name;
            Series got, want;
        };
        Check checks[] = {
            {"a\\(a*b) = b", left_div(a, mul(a, b)), b},
            {"(a*b)/b = a", right_div(mul(a, b), b), a},
            {"a*(a\\b) = b", mul(a, left_div(a, b)), b},
            {"(a/b)*b = a", mul(right_div(a, b), b), a},
        };
        for (const auto& c : checks) {
            if (!(c.got == c.want)) {
                r.verdict = Verdict::Fail;
                r.witness = std::string(c.name) + ": " +
                            first_series_diff(c.got, c.want, table).value_or("differs");
                break;
            }
        }
        r.millis = timer.ms();
        return r;
    });
}

std::vector<VerificationReport> run_grancosa_suite(int max_total, bool prune, int jobs) {
    if (max_total < 2)
        throw usage_error("grancosa suite needs max_total >= 2");
    std::vector<std::pair<int, int>> cases;
    for (int total = 2; total <= max_total; ++total)
        for (int m = 1; m < total; ++m)
            cases.emplace_back(m, total - m);
    return run_cases(static_cast<int>(cases.size()), jobs, [&, prune](int i) {
        auto [m, n] = cases[static_cast<std::size_t>(i)];
        return verify_grancosa(m, n, prune);
    });
}

namespace {

// Deterministic corpus of balanced words: commutators, associators and
// deviations over distinct generators, a level-two deviation with repeated
// arguments, and an iterated extension.
struct BalanceCase {
    LoopTerm phi;
    VarSet s;
    VarId x;
};

BalanceCase make_balance_case(int family, std::span<const VarId> g,
                              std::mt19937_64& rng) {
    auto gen = [&](std::size_t k) { return LoopTerm::gen(g[k]); };
    auto pick_distinct = [&](std::size_t count) {
        std::vector<std::size_t> idx{0, 1, 2, 3};
        for (std::size_t k = idx.size() - 1; k > 0; --k)
            std::swap(idx[k], idx[draw(rng, k + 1)]);
        idx.resize(count);
        return idx;
    };
    switch (family % 6) {
    case 0: {
        auto idx = pick_distinct(2);
        return {commutator(gen(idx[0]), gen(idx[1])), {g[idx[0]], g[idx[1]]}, g[idx[0]]};
    }
    case 1: {
        auto idx = pick_distinct(3);
        return {associator(gen(idx[0]), gen(idx[1]), gen(idx[2])),
                {g[idx[0]], g[idx[1]], g[idx[2]]},
                g[idx[1]]};
    }
    case 2: {
        auto idx = pick_distinct(4);
        std::vector<LoopTerm> args{gen(idx[0]), gen(idx[1]), gen(idx[2]), gen(idx[3])};
        std::vector<int> alphas{1 + static_cast<int>(draw(rng, 3))};
        return {deviation(args, alphas),
                {g[idx[0]], g[idx[1]], g[idx[2]], g[idx[3]]},
                g[idx[0]]};
    }
    case 3: {
        auto idx = pick_distinct(4);
        LoopTerm inner = associator(gen(idx[0]), gen(idx[1]), gen(idx[2]));
        return {commutator(inner, gen(idx[3])),
                {g[idx[0]], g[idx[1]], g[idx[2]], g[idx[3]]},
                g[idx[3]]};
    }
    case 4: {
        auto idx = pick_distinct(3);
        std::vector<LoopTerm> args{gen(idx[0]), gen(idx[1]), gen(idx[2]), gen(idx[0]),
                                   gen(idx[1])};
        std::vector<int> alphas{1 + static_cast<int>(draw(rng, 3)),
                                1 + static_cast<int>(draw(rng, 4))};
        return {deviation(args, alphas),
                {g[idx[0]], g[idx[1]], g[idx[2]]},
                g[idx[2]]};
    }
    default: {
        auto idx = pick_distinct(3);
        LoopTerm base = commutator(gen(idx[0]), gen(idx[1]));
        LoopTerm ext = homomorphism_deviation(base, g[idx[0]], g[idx[2]]);
        return {ext, {g[idx[0]], g[idx[1]], g[idx[2]]}, g[idx[1]]};
    }
    }
}

} // namespace

std::vector<VerificationReport> run_balance_suite(int cases, int subst_cases,
                                                  std::uint64_t seed, int jobs) {
    int total = cases + subst_cases;
    return run_cases(total, jobs, [=](int i) {
        VarTable table;
        std::vector<VarId> g;
        const char* names[] = {"a", "b", "c", "d"};
        for (const char* nm : names)
            g.push_back(table.add(nm));
        VarId fresh = table.add("h");
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ull);

        if (i < cases) {
            Stopwatch timer;
            BalanceCase c = make_balance_case(i, g, rng);
            int trunc = static_cast<int>(c.s.size()) + 2;
            VerificationReport r;
            r.case_id = "balance-" + std::to_string(i);
            r.params = {{"phi", str(c.phi, table)}, {"x", table.name(c.x)}};
            r.truncation = trunc;
            if (!term_is_balanced(c.phi, c.s, trunc)) {
                r.verdict = Verdict::Fail;
                r.witness = "corpus word is not balanced over its own variables";
                r.millis = timer.ms();
                return r;
            }
            LoopTerm ext = homomorphism_deviation(c.phi, c.x, fresh);
            VarSet enlarged = c.s;
            enlarged.insert(fresh);
            if (term_is_balanced(ext, enlarged, trunc)) {
                r.verdict = Verdict::Pass;
            } else {
                r.verdict = Verdict::Fail;
                Series m = magnus(ext, trunc);
                for (int d = 1; d <= trunc && !r.witness; ++d)
                    for (const auto& [mono, coef] : m.bucket(d))
                        if (!is_balanced_mono(mono, enlarged)) {
                            r.witness = "unbalanced term " + str(mono, table);
                            break;
                        }
            }
            r.millis = timer.ms();
            return r;
        }

        // substitution cases: phi over s, a word w over s_hat, fresh y
        int j = i - cases;
        auto gen = [&](std::size_t k) { return LoopTerm::gen(g[k]); };
        LoopTerm phi = LoopTerm::one();
        VarSet s;
        VarId x = g[0];
        switch (j % 3) {
        case 0:
            phi = commutator(gen(0), gen(1));
            s = {g[0], g[1]};
            x = g[0];
            break;
        case 1:
            phi = associator(gen(0), gen(1), gen(2));
            s = {g[0], g[1], g[2]};
            x = g[1];
            break;
        default:
            phi = associator(gen(0), gen(1), gen(2));
            s = {g[0], g[1], g[2]};
            x = g[2];
            break;
        }
        VarSet s_hat = s;
        if (j % 2 == 0)
            s_hat.insert(g[3]);
        std::vector<VarId> hat_vars(s_hat.begin(), s_hat.end());
        LoopTerm w = random_term(hat_vars, 1 + static_cast<int>(draw(rng, 2)), rng);
        int trunc = static_cast<int>(s_hat.size()) + 1;
        return verify_multilinear_substitution(phi, x, s, s_hat, w, fresh, trunc, table,
                                               "lsub-" + std::to_string(j));
    });
}

std::vector<VerificationReport> run_grading_suite(int samples, int trunc,
                                                  std::uint64_t seed, int jobs) {
    return run_cases(samples, jobs, [=](int i) {
        Stopwatch timer;
        VarTable table;
        std::vector<VarId> g;
        const char* names[] = {"x", "y", "z", "w"};
        for (const char* nm : names)
            g.push_back(table.add(nm));
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ull);

        auto gen = [&](std::size_t k) { return LoopTerm::gen(g[k]); };
        auto sample = [&]() -> LoopTerm {
            switch (draw(rng, 10)) {
            case 0:
            case 1:
            case 2:
            case 3:
                return gen(draw(rng, 4));
            case 4:
                return LoopTerm::mul(gen(draw(rng, 4)), gen(draw(rng, 4)));
            case 5: {
                std::size_t p = draw(rng, 4), q = (p + 1 + draw(rng, 3)) % 4;
                return commutator(gen(p), gen(q));
            }
            case 6:
                return associator(gen(draw(rng, 4)), gen(draw(rng, 4)), gen(draw(rng, 4)));
            case 7:
                return LoopTerm::mul(LoopTerm::mul(gen(draw(rng, 4)), gen(draw(rng, 4))),
                                     gen(draw(rng, 4)));
            case 8: {
                std::size_t p = draw(rng, 4), q = (p + 1 + draw(rng, 3)) % 4;
                return commutator(gen(p), commutator(gen(q), gen(draw(rng, 4))));
            }
            default:
                return random_term(g, 1, rng);
            }
        };

        LoopTerm u = sample(), v = sample(), w = sample(), t4 = sample();
        const int cap = trunc + 1;
        auto eff = [&](const LoopTerm& t) {
            auto d = dim_degree(t, trunc);
            return d ? *d : cap;
        };
        int p = eff(u), q = eff(v), rr = eff(w), s4 = eff(t4);

        VerificationReport r;
        r.case_id = "grading-" + std::to_string(i);
        r.params = {{"u", str(u, table)},
                    {"v", str(v, table)},
                    {"w", str(w, table)},
                    {"t", str(t4, table)}};
        r.truncation = trunc;
        r.verdict = Verdict::Pass;

        struct Check {
            std::string name;
            LoopTerm term;
            int required;
        };
        std::vector<int> alphas{1 + i % 3};
        std::vector<LoopTerm> dev_args{u, v, w, t4};
        Check checks[] = {
            {"commutator", commutator(u, v), std::min(p + q, cap)},
            {"associator", associator(u, v, w), std::min(p + q + rr, cap)},
            {"deviation-" + std::to_string(alphas[0]), deviation(dev_args, alphas),
             std::min(p + q + rr + s4, cap)},
        };
        for (const auto& c : checks) {
            int got = eff(c.term);
            if (got < c.required) {
                r.verdict = Verdict::Fail;
                r.witness = c.name + " has degree " + std::to_string(got) +
                            ", expected at least " + std::to_string(c.required);
                break;
            }
        }
        r.millis = timer.ms();
        return r;
    });
}

std::vector<VerificationReport> run_primitive_suite(int cases, int trunc,
                                                    std::uint64_t seed, int jobs) {
    // random loop words first, then the primitive operations themselves
    std::vector<std::pair<int, int>> ops;
    for (int total = 2; total <= 5; ++total)
        for (int m = 1; m < total; ++m)
            ops.emplace_back(m, total - m);
    int total_cases = cases + static_cast<int>(ops.size());

    return run_cases(total_cases, jobs, [=](int i) {
        if (i < cases) {
            VarTable table;
            std::vector<VarId> g;
            const char* names[] = {"x", "y", "z"};
            for (const char* nm : names)
                g.push_back(table.add(nm));
            std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ull);
            // resample words whose truncated expansion is exactly 1, so each
            // case genuinely tests a lowest-degree part
            LoopTerm t = LoopTerm::gen(g[0]);
            for (int attempt = 0; attempt < 8; ++attempt) {
                LoopTerm candidate = random_term(g, 1 + static_cast<int>(draw(rng, 3)), rng);
                if (dim_degree(candidate, trunc)) {
                    t = candidate;
                    break;
                }
            }
            return verify_primitive_lowest(t, trunc, table,
                                           "primitive-" + std::to_string(i));
        }

        auto [m, n] = ops[static_cast<std::size_t>(i - cases)];
        Stopwatch timer;
        VarTable table;
        int op_trunc = m + n + 1;
        std::vector<Series> sx, sy;
        for (int k = 1; k <= m; ++k)
            sx.push_back(Series::variable(table.add("x" + std::to_string(k)), op_trunc));
        for (int k = 1; k <= n; ++k)
            sy.push_back(Series::variable(table.add("y" + std::to_string(k)), op_trunc));
        Series z = Series::variable(table.add("z"), op_trunc);

        VerificationReport r;
        r.case_id = "primitive-op-" + std::to_string(m) + "-" + std::to_string(n);
        r.params = {{"r", std::to_string(m)}, {"s", std::to_string(n)}};
        r.truncation = op_trunc;
        Series p = primitive_op(sx, sy, z);
        if (is_primitive(p)) {
            r.verdict = Verdict::Pass;
        } else {
            r.verdict = Verdict::Fail;
            r.witness = "operation is not primitive";
        }
        r.millis = timer.ms();
        return r;
    });
}

} // namespace loopalg
