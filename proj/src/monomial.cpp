#include "loopalg/monomial.hpp"

#include "loopalg/errors.hpp"

namespace loopalg {

namespace {
constexpr std::uint32_t kProd = 0;

// End of the subtree starting at `pos` in a preorder code.
std::size_t subtree_end(const std::vector<std::uint32_t>& code, std::size_t pos) {
    std::size_t pending = 1;
    while (pending > 0) {
        if (pos >= code.size())
            throw usage_error("truncated monomial code");
        pending += (code[pos] == kProd) ? 1 : -1;
        ++pos;
    }
    return pos;
}
} // namespace

Monomial Monomial::leaf(VarId v) {
    Monomial m;
    m.code_ = {v.index + 1};
    m.degree_ = 1;
    return m;
}

Monomial Monomial::prod(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.code_.reserve(1 + a.code_.size() + b.code_.size());
    m.code_.push_back(kProd);
    m.code_.insert(m.code_.end(), a.code_.begin(), a.code_.end());
    m.code_.insert(m.code_.end(), b.code_.begin(), b.code_.end());
    m.degree_ = a.degree_ + b.degree_;
    return m;
}

Monomial Monomial::from_code(std::vector<std::uint32_t> code) {
    if (code.empty())
        throw usage_error("empty monomial code");
    if (subtree_end(code, 0) != code.size())
        throw usage_error("monomial code has trailing entries");
    Monomial m;
    m.code_ = std::move(code);
    m.degree_ = 0;
    for (std::uint32_t x : m.code_)
        if (x != kProd)
            ++m.degree_;
    return m;
}

VarId Monomial::leaf_var() const {
    if (!is_leaf())
        throw usage_error("leaf_var on a product monomial");
    return VarId{code_[0] - 1};
}

std::pair<Monomial, Monomial> Monomial::split() const {
    if (is_leaf())
        throw usage_error("split on a leaf monomial");
    std::size_t mid = subtree_end(code_, 1);
    Monomial l, r;
    l.code_.assign(code_.begin() + 1, code_.begin() + static_cast<std::ptrdiff_t>(mid));
    r.code_.assign(code_.begin() + static_cast<std::ptrdiff_t>(mid), code_.end());
    for (std::uint32_t x : l.code_)
        if (x != kProd)
            ++l.degree_;
    r.degree_ = degree_ - l.degree_;
    return {std::move(l), std::move(r)};
}

Monomial prod(const Monomial& a, const Monomial& b) { return Monomial::prod(a, b); }

Monomial left_normed(std::span<const VarId> vars) {
    if (vars.empty())
        throw usage_error("left_normed requires at least one variable");
    Monomial m = Monomial::leaf(vars[0]);
    for (std::size_t i = 1; i < vars.size(); ++i)
        m = prod(m, Monomial::leaf(vars[i]));
    return m;
}

std::map<VarId, int> multidegree(const Monomial& m) {
    std::map<VarId, int> counts;
    for (std::uint32_t x : m.code())
        if (x != kProd)
            ++counts[VarId{x - 1}];
    return counts;
}

bool is_balanced_mono(const Monomial& m, const VarSet& s) {
    if (s.empty())
        return true;
    VarSet missing = s;
    for (std::uint32_t x : m.code()) {
        if (x != kProd) {
            missing.erase(VarId{x - 1});
            if (missing.empty())
                return true;
        }
    }
    return missing.empty();
}

bool is_multilinear_on(const Monomial& m, const VarSet& s) {
    if (m.degree() != static_cast<int>(s.size()))
        return false;
    VarSet missing = s;
    for (std::uint32_t x : m.code()) {
        if (x == kProd)
            continue;
        if (!missing.erase(VarId{x - 1}))
            return false; // repeated, or outside s
    }
    return missing.empty();
}

namespace {
void render(const std::vector<std::uint32_t>& code, std::size_t& pos,
            const VarTable& table, std::string& out) {
    if (code[pos] != kProd) {
        out += table.name(VarId{code[pos] - 1});
        ++pos;
        return;
    }
    ++pos;
    out += '(';
    render(code, pos, table, out);
    out += '*';
    render(code, pos, table, out);
    out += ')';
}
} // namespace

std::string str(const Monomial& m, const VarTable& table) {
    std::string out;
    std::size_t pos = 0;
    render(m.code(), pos, table, out);
    return out;
}

} // namespace loopalg
