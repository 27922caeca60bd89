#include "loopalg/series.hpp"

#include "loopalg/errors.hpp"

#include <algorithm>

namespace loopalg {

PruneFilter::PruneFilter(const VarSet& tracked) {
    if (tracked.size() > 64)
        throw usage_error("prune filter supports at most 64 tracked variables");
    std::uint32_t max_index = 0;
    for (VarId v : tracked)
        max_index = std::max(max_index, v.index);
    bit_of_var_.assign(tracked.empty() ? 0 : max_index + 1, -1);
    int bit = 0;
    for (VarId v : tracked)
        bit_of_var_[v.index] = bit++;
}

bool PruneFilter::keep(const Monomial& m) const {
    std::uint64_t seen = 0;
    for (std::uint32_t x : m.code()) {
        if (x == 0)
            continue;
        std::uint32_t v = x - 1;
        if (v >= bit_of_var_.size() || bit_of_var_[v] < 0)
            continue;
        std::uint64_t bit = 1ull << bit_of_var_[v];
        if (seen & bit)
            return false;
        seen |= bit;
    }
    return true;
}

std::uint64_t PruneFilter::mask(const Monomial& m) const {
    std::uint64_t seen = 0;
    for (std::uint32_t x : m.code()) {
        if (x == 0)
            continue;
        std::uint32_t v = x - 1;
        if (v < bit_of_var_.size() && bit_of_var_[v] >= 0)
            seen |= 1ull << bit_of_var_[v];
    }
    return seen;
}

Series::Series(int trunc) : trunc_(trunc), constant_(0) {
    if (trunc < 1)
        throw usage_error("truncation degree must be >= 1");
    buckets_.resize(static_cast<std::size_t>(trunc) + 1);
}

Series Series::constant(Coeff c, int trunc) {
    Series s(trunc);
    s.constant_ = std::move(c);
    return s;
}

Series Series::variable(VarId v, int trunc) {
    return term(Monomial::leaf(v), Coeff(1), trunc);
}

Series Series::term(Monomial m, Coeff c, int trunc) {
    Series s(trunc);
    s.add_term(m, c);
    return s;
}

const Series::TermMap& Series::bucket(int degree) const {
    if (degree < 1 || degree > trunc_)
        throw usage_error("bucket degree out of range");
    return buckets_[static_cast<std::size_t>(degree)];
}

bool Series::is_zero() const {
    if (constant_ != 0)
        return false;
    for (const auto& b : buckets_)
        if (!b.empty())
            return false;
    return true;
}

Coeff Series::coeff_of(const Monomial& m) const {
    if (m.degree() > trunc_)
        return Coeff(0);
    const auto& b = buckets_[static_cast<std::size_t>(m.degree())];
    auto it = b.find(m);
    return it == b.end() ? Coeff(0) : it->second;
}

std::size_t Series::term_count() const {
    std::size_t n = 0;
    for (const auto& b : buckets_)
        n += b.size();
    return n;
}

void Series::add_term(const Monomial& m, const Coeff& c) {
    if (c == 0 || m.degree() > trunc_)
        return;
    auto& b = buckets_[static_cast<std::size_t>(m.degree())];
    auto [it, inserted] = b.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            b.erase(it);
    }
}

void Series::for_each(const std::function<void(const Monomial*, const Coeff&)>& fn) const {
    if (constant_ != 0)
        fn(nullptr, constant_);
    for (const auto& b : buckets_)
        for (const auto& [m, c] : b)
            fn(&m, c);
}

namespace {
void require_same_trunc(const Series& a, const Series& b) {
    if (a.trunc() != b.trunc())
        throw usage_error("mismatched truncation degrees");
}
} // namespace

Series add(const Series& a, const Series& b) {
    require_same_trunc(a, b);
    Series r = a;
    r.set_constant(a.constant_part() + b.constant_part());
    for (int d = 1; d <= b.trunc(); ++d)
        for (const auto& [m, c] : b.bucket(d))
            r.add_term(m, c);
    return r;
}

Series sub(const Series& a, const Series& b) { return add(a, negate(b)); }

Series negate(const Series& s) { return scalar_mul(s, Coeff(-1)); }

Series scalar_mul(const Series& s, const Coeff& c) {
    Series r(s.trunc());
    if (c == 0)
        return r;
    r.set_constant(s.constant_part() * c);
    for (int d = 1; d <= s.trunc(); ++d)
        for (const auto& [m, k] : s.bucket(d))
            r.add_term(m, k * c);
    return r;
}

Series mul(const Series& a, const Series& b, const PruneFilter* prune) {
    require_same_trunc(a, b);
    const int n = a.trunc();
    Series r(n);
    r.set_constant(a.constant_part() * b.constant_part());
    if (b.constant_part() != 0)
        for (int d = 1; d <= n; ++d)
            for (const auto& [m, c] : a.bucket(d))
                r.add_term(m, c * b.constant_part());
    if (a.constant_part() != 0)
        for (int d = 1; d <= n; ++d)
            for (const auto& [m, c] : b.bucket(d))
                r.add_term(m, c * a.constant_part());
    for (int da = 1; da < n; ++da) {
        if (a.bucket(da).empty())
            continue;
        for (int db = 1; da + db <= n; ++db) {
            for (const auto& [ma, ca] : a.bucket(da))
                for (const auto& [mb, cb] : b.bucket(db)) {
                    if (prune && !prune->disjoint(ma, mb))
                        continue;
                    r.add_term(prod(ma, mb), ca * cb);
                }
        }
    }
    return r;
}

Series left_div(const Series& a, const Series& b, const PruneFilter* prune) {
    require_same_trunc(a, b);
    if (a.constant_part() != 1)
        throw non_unit_error("left division by a series with constant term != 1");
    const int n = a.trunc();
    // a = 1 + alpha with alpha of positive degree; x = b - alpha*x is solved
    // degree by degree, each x_d only needing lower-degree parts of x.
    Series x(n);
    x.set_constant(b.constant_part());
    for (int d = 1; d <= n; ++d) {
        for (const auto& [m, c] : b.bucket(d))
            if (!prune || prune->keep(m))
                x.add_term(m, c);
        for (int e = 1; e <= d; ++e) {
            for (const auto& [ma, ca] : a.bucket(e)) {
                if (prune && !prune->keep(ma))
                    continue;
                if (e == d) {
                    if (x.constant_part() != 0)
                        x.add_term(ma, -ca * x.constant_part());
                } else {
                    for (const auto& [mx, cx] : x.bucket(d - e)) {
                        if (prune && !prune->disjoint(ma, mx))
                            continue;
                        x.add_term(prod(ma, mx), -ca * cx);
                    }
                }
            }
        }
    }
    return x;
}

Series right_div(const Series& a, const Series& b, const PruneFilter* prune) {
    require_same_trunc(a, b);
    if (b.constant_part() != 1)
        throw non_unit_error("right division by a series with constant term != 1");
    const int n = a.trunc();
    // b = 1 + beta; x = a - x*beta.
    Series x(n);
    x.set_constant(a.constant_part());
    for (int d = 1; d <= n; ++d) {
        for (const auto& [m, c] : a.bucket(d))
            if (!prune || prune->keep(m))
                x.add_term(m, c);
        for (int e = 1; e <= d; ++e) {
            for (const auto& [mb, cb] : b.bucket(e)) {
                if (prune && !prune->keep(mb))
                    continue;
                if (e == d) {
                    if (x.constant_part() != 0)
                        x.add_term(mb, -cb * x.constant_part());
                } else {
                    for (const auto& [mx, cx] : x.bucket(d - e)) {
                        if (prune && !prune->disjoint(mx, mb))
                            continue;
                        x.add_term(prod(mx, mb), -cx * cb);
                    }
                }
            }
        }
    }
    return x;
}

Series homogeneous_part(const Series& s, int degree) {
    if (degree < 0 || degree > s.trunc())
        throw usage_error("homogeneous_part degree out of range");
    Series r(s.trunc());
    if (degree == 0) {
        r.set_constant(s.constant_part());
        return r;
    }
    for (const auto& [m, c] : s.bucket(degree))
        r.add_term(m, c);
    return r;
}

std::optional<std::pair<int, Series>> lowest_term(const Series& s) {
    for (int d = 1; d <= s.trunc(); ++d)
        if (!s.bucket(d).empty())
            return std::make_pair(d, homogeneous_part(s, d));
    return std::nullopt;
}

Series multilinear_part(const Series& s, const VarSet& on) {
    Series r(s.trunc());
    if (on.empty()) {
        r.set_constant(s.constant_part());
        return r;
    }
    int d = static_cast<int>(on.size());
    if (d > s.trunc())
        return r;
    for (const auto& [m, c] : s.bucket(d))
        if (is_multilinear_on(m, on))
            r.add_term(m, c);
    return r;
}

std::string str(const Series& s, const VarTable& table) {
    std::string out;
    auto append = [&](const Monomial* m, const Coeff& c) {
        bool neg = c < 0;
        Coeff mag = neg ? Coeff(-c) : c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (m == nullptr) {
            out += coeff_str(mag);
        } else if (mag == 1) {
            out += str(*m, table);
        } else {
            out += coeff_str(mag);
            out += '*';
            out += str(*m, table);
        }
    };
    s.for_each(append);
    return out.empty() ? "0" : out;
}

bool TensorSeries::KeyLess::operator()(const Key& a, const Key& b) const {
    auto deg = [](const std::optional<Monomial>& m) { return m ? m->degree() : 0; };
    int da = deg(a.first) + deg(a.second);
    int db = deg(b.first) + deg(b.second);
    if (da != db)
        return da < db;
    auto side_less = [](const std::optional<Monomial>& x, const std::optional<Monomial>& y) {
        if (!x || !y)
            return static_cast<int>(y.has_value()) - static_cast<int>(x.has_value());
        if (*x < *y)
            return 1;
        if (*y < *x)
            return -1;
        return 0;
    };
    int c = side_less(a.first, b.first);
    if (c != 0)
        return c > 0;
    return side_less(a.second, b.second) > 0;
}

int total_degree(const TensorSeries::Key& k) {
    return (k.first ? k.first->degree() : 0) + (k.second ? k.second->degree() : 0);
}

TensorSeries TensorSeries::unit(int trunc) {
    TensorSeries t(trunc);
    t.add_term({std::nullopt, std::nullopt}, Coeff(1));
    return t;
}

void TensorSeries::add_term(const Key& k, const Coeff& c) {
    if (c == 0 || total_degree(k) > trunc_)
        return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

TensorSeries tensor_add(const TensorSeries& a, const TensorSeries& b) {
    if (a.trunc() != b.trunc())
        throw usage_error("mismatched truncation degrees");
    TensorSeries r = a;
    for (const auto& [k, c] : b.terms())
        r.add_term(k, c);
    return r;
}

TensorSeries tensor_sub(const TensorSeries& a, const TensorSeries& b) {
    if (a.trunc() != b.trunc())
        throw usage_error("mismatched truncation degrees");
    TensorSeries r = a;
    for (const auto& [k, c] : b.terms())
        r.add_term(k, -c);
    return r;
}

namespace {
std::optional<Monomial> side_prod(const std::optional<Monomial>& a,
                                  const std::optional<Monomial>& b) {
    if (!a)
        return b;
    if (!b)
        return a;
    return prod(*a, *b);
}
} // namespace

TensorSeries tensor_mul(const TensorSeries& a, const TensorSeries& b) {
    if (a.trunc() != b.trunc())
        throw usage_error("mismatched truncation degrees");
    TensorSeries r(a.trunc());
    for (const auto& [ka, ca] : a.terms()) {
        int da = total_degree(ka);
        for (const auto& [kb, cb] : b.terms()) {
            if (da + total_degree(kb) > r.trunc())
                continue;
            TensorSeries::Key k{side_prod(ka.first, kb.first),
                                side_prod(ka.second, kb.second)};
            r.add_term(k, ca * cb);
        }
    }
    return r;
}

std::string str(const TensorSeries& t, const VarTable& table) {
    std::string out;
    auto side = [&](const std::optional<Monomial>& m) {
        return m ? str(*m, table) : std::string("1");
    };
    for (const auto& [k, c] : t.terms()) {
        bool neg = c < 0;
        Coeff mag = neg ? Coeff(-c) : c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (mag != 1) {
            out += coeff_str(mag);
            out += '*';
        }
        out += side(k.first) + "(x)" + side(k.second);
    }
    return out.empty() ? "0" : out;
}

namespace {
// delta of a single monomial: leaves split to v(x)1 + 1(x)v, products multiply.
TensorSeries comult_mono(const Monomial& m, int trunc) {
    if (m.is_leaf()) {
        TensorSeries t(trunc);
        t.add_term({m, std::nullopt}, Coeff(1));
        t.add_term({std::nullopt, m}, Coeff(1));
        return t;
    }
    auto [l, r] = m.split();
    return tensor_mul(comult_mono(l, trunc), comult_mono(r, trunc));
}
} // namespace

TensorSeries comult(const Series& s) {
    TensorSeries t(s.trunc());
    if (s.constant_part() != 0)
        t.add_term({std::nullopt, std::nullopt}, s.constant_part());
    for (int d = 1; d <= s.trunc(); ++d)
        for (const auto& [m, c] : s.bucket(d)) {
            TensorSeries dm = comult_mono(m, s.trunc());
            for (const auto& [k, q] : dm.terms())
                t.add_term(k, q * c);
        }
    return t;
}

bool is_primitive(const Series& s) {
    if (s.constant_part() != 0)
        throw usage_error("is_primitive requires zero constant term");
    TensorSeries expected(s.trunc());
    for (int d = 1; d <= s.trunc(); ++d)
        for (const auto& [m, c] : s.bucket(d)) {
            expected.add_term({m, std::nullopt}, c);
            expected.add_term({std::nullopt, m}, c);
        }
    return comult(s) == expected;
}

} // namespace loopalg
