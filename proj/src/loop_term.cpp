#include "loopalg/loop_term.hpp"

#include "loopalg/errors.hpp"

#include <cctype>
#include <unordered_map>

namespace loopalg {

LoopTerm LoopTerm::one() {
    static const std::shared_ptr<const Node> unit =
        std::make_shared<Node>(Node{Kind::One, {}, nullptr, nullptr});
    return LoopTerm(unit);
}

LoopTerm LoopTerm::gen(VarId v) {
    return LoopTerm(std::make_shared<Node>(Node{Kind::Gen, v, nullptr, nullptr}));
}

LoopTerm LoopTerm::mul(const LoopTerm& l, const LoopTerm& r) {
    return LoopTerm(std::make_shared<Node>(Node{Kind::Mul, {}, l.node_, r.node_}));
}

LoopTerm LoopTerm::left_div(const LoopTerm& l, const LoopTerm& r) {
    return LoopTerm(std::make_shared<Node>(Node{Kind::LeftDiv, {}, l.node_, r.node_}));
}

LoopTerm LoopTerm::right_div(const LoopTerm& l, const LoopTerm& r) {
    return LoopTerm(std::make_shared<Node>(Node{Kind::RightDiv, {}, l.node_, r.node_}));
}

VarId LoopTerm::var() const {
    if (kind() != Kind::Gen)
        throw usage_error("var() on a non-generator term");
    return node_->v;
}

LoopTerm LoopTerm::left() const {
    if (!node_->l)
        throw usage_error("left() on a leaf term");
    return LoopTerm(node_->l);
}

LoopTerm LoopTerm::right() const {
    if (!node_->r)
        throw usage_error("right() on a leaf term");
    return LoopTerm(node_->r);
}

bool operator==(const LoopTerm& a, const LoopTerm& b) {
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind())
        return false;
    switch (a.kind()) {
    case LoopTerm::Kind::One:
        return true;
    case LoopTerm::Kind::Gen:
        return a.node_->v == b.node_->v;
    default:
        return a.left() == b.left() && a.right() == b.right();
    }
}

namespace {

class Parser {
  public:
    Parser(std::string_view text, VarTable& table, bool auto_register)
        : text_(text), table_(table), auto_register_(auto_register) {}

    LoopTerm run() {
        LoopTerm t = term();
        skip_ws();
        if (pos_ != text_.size())
            throw parse_error("unexpected input", pos_);
        return t;
    }

  private:
    LoopTerm term() {
        LoopTerm acc = atom();
        for (;;) {
            skip_ws();
            if (pos_ >= text_.size())
                return acc;
            char c = text_[pos_];
            if (c == '*') {
                ++pos_;
                acc = LoopTerm::mul(acc, atom());
            } else if (c == '\\') {
                ++pos_;
                acc = LoopTerm::left_div(acc, atom());
            } else if (c == '/') {
                ++pos_;
                acc = LoopTerm::right_div(acc, atom());
            } else {
                return acc;
            }
        }
    }

    LoopTerm atom() {
        skip_ws();
        if (pos_ >= text_.size())
            throw parse_error("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '1') {
            ++pos_;
            return LoopTerm::one();
        }
        if (c == '(') {
            ++pos_;
            LoopTerm t = term();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')')
                throw parse_error("expected ')'", pos_);
            ++pos_;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            ++pos_;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (auto v = table_.find(name))
                return LoopTerm::gen(*v);
            if (auto_register_)
                return LoopTerm::gen(table_.add(name));
            throw parse_error("unknown identifier '" + name + "'", start);
        }
        throw parse_error(std::string("unexpected character '") + c + "'", pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string_view text_;
    VarTable& table_;
    bool auto_register_;
    std::size_t pos_ = 0;
};

char op_char(LoopTerm::Kind k) {
    switch (k) {
    case LoopTerm::Kind::Mul:
        return '*';
    case LoopTerm::Kind::LeftDiv:
        return '\\';
    default:
        return '/';
    }
}

void render(const LoopTerm& t, const VarTable& table, std::string& out, bool root) {
    switch (t.kind()) {
    case LoopTerm::Kind::One:
        out += '1';
        return;
    case LoopTerm::Kind::Gen:
        out += table.name(t.var());
        return;
    default:
        if (root) {
            render(t.left(), table, out, false);
            out += ' ';
            out += op_char(t.kind());
            out += ' ';
            render(t.right(), table, out, false);
        } else {
            out += '(';
            render(t.left(), table, out, false);
            out += op_char(t.kind());
            render(t.right(), table, out, false);
            out += ')';
        }
        return;
    }
}

} // namespace

LoopTerm parse_term(std::string_view text, VarTable& table, bool auto_register) {
    return Parser(text, table, auto_register).run();
}

std::string str(const LoopTerm& t, const VarTable& table) {
    std::string out;
    render(t, table, out, true);
    return out;
}

void collect_vars(const LoopTerm& t, VarSet& out) {
    switch (t.kind()) {
    case LoopTerm::Kind::One:
        return;
    case LoopTerm::Kind::Gen:
        out.insert(t.var());
        return;
    default:
        collect_vars(t.left(), out);
        collect_vars(t.right(), out);
        return;
    }
}

bool occurs(const LoopTerm& t, VarId v) {
    switch (t.kind()) {
    case LoopTerm::Kind::One:
        return false;
    case LoopTerm::Kind::Gen:
        return t.var() == v;
    default:
        return occurs(t.left(), v) || occurs(t.right(), v);
    }
}

LoopTerm term_from_monomial(const Monomial& m) {
    if (m.is_leaf())
        return LoopTerm::gen(m.leaf_var());
    auto [l, r] = m.split();
    return LoopTerm::mul(term_from_monomial(l), term_from_monomial(r));
}

namespace {

class MagnusEval {
  public:
    MagnusEval(int trunc, const PruneFilter* prune) : trunc_(trunc), prune_(prune) {}

    // unordered_map keeps references stable, so handing them out is safe
    const Series& eval(const LoopTerm& t) {
        // substitution shares unchanged subtrees, so repeated nodes are common
        auto it = memo_.find(t.id());
        if (it != memo_.end())
            return it->second;
        Series s = compute(t);
        return memo_.emplace(t.id(), std::move(s)).first->second;
    }

  private:
    Series compute(const LoopTerm& t) {
        switch (t.kind()) {
        case LoopTerm::Kind::One:
            return Series::one(trunc_);
        case LoopTerm::Kind::Gen:
            return Series::one(trunc_) + Series::variable(t.var(), trunc_);
        case LoopTerm::Kind::Mul:
            return mul(eval(t.left()), eval(t.right()), prune_);
        case LoopTerm::Kind::LeftDiv:
            return left_div(eval(t.left()), eval(t.right()), prune_);
        default:
            return right_div(eval(t.left()), eval(t.right()), prune_);
        }
    }

    int trunc_;
    const PruneFilter* prune_;
    std::unordered_map<const void*, Series> memo_;
};

} // namespace

Series magnus(const LoopTerm& t, int trunc, const PruneFilter* prune) {
    return MagnusEval(trunc, prune).eval(t);
}

std::optional<int> dim_degree(const LoopTerm& t, int trunc) {
    Series s = magnus(t, trunc);
    auto low = lowest_term(s);
    if (!low)
        return std::nullopt;
    return low->first;
}

TaylorExpansion taylor(const LoopTerm& t, int order) {
    if (order < 1)
        throw usage_error("taylor order must be >= 1");
    Series probe = magnus(t, order + 1);
    TaylorExpansion e{order, {}, !probe.bucket(order + 1).empty()};
    for (int d = 1; d <= order; ++d)
        for (const auto& [m, c] : probe.bucket(d))
            e.coeffs.emplace(m, c);
    return e;
}

namespace {
LoopTerm substitute_rec(const LoopTerm& t, const std::map<VarId, LoopTerm>& binding,
                        bool& changed) {
    switch (t.kind()) {
    case LoopTerm::Kind::One:
        return t;
    case LoopTerm::Kind::Gen: {
        auto it = binding.find(t.var());
        if (it == binding.end())
            throw usage_error("substitute: unbound variable");
        if (it->second != t)
            changed = true;
        return it->second;
    }
    default: {
        bool cl = false, cr = false;
        LoopTerm l = substitute_rec(t.left(), binding, cl);
        LoopTerm r = substitute_rec(t.right(), binding, cr);
        if (!cl && !cr)
            return t; // share the original node
        changed = true;
        switch (t.kind()) {
        case LoopTerm::Kind::Mul:
            return LoopTerm::mul(l, r);
        case LoopTerm::Kind::LeftDiv:
            return LoopTerm::left_div(l, r);
        default:
            return LoopTerm::right_div(l, r);
        }
    }
    }
}
} // namespace

LoopTerm substitute(const LoopTerm& t, const std::map<VarId, LoopTerm>& binding) {
    bool changed = false;
    return substitute_rec(t, binding, changed);
}

LoopTerm random_term(std::span<const VarId> gens, int depth_bound, std::mt19937_64& rng) {
    if (depth_bound < 0)
        throw usage_error("depth bound must be >= 0");
    if (depth_bound == 0) {
        std::size_t k = rng() % (gens.size() + 1);
        return k == gens.size() ? LoopTerm::one() : LoopTerm::gen(gens[k]);
    }
    LoopTerm l = random_term(gens, depth_bound - 1, rng);
    LoopTerm r = random_term(gens, depth_bound - 1, rng);
    switch (rng() % 3) {
    case 0:
        return LoopTerm::mul(l, r);
    case 1:
        return LoopTerm::left_div(l, r);
    default:
        return LoopTerm::right_div(l, r);
    }
}

LoopTerm random_term(std::span<const VarId> gens, int depth_bound, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_term(gens, depth_bound, rng);
}

} // namespace loopalg
