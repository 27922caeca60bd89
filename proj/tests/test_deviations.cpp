#include "loopalg/deviations.hpp"

#include "doctest.h"
#include "loopalg/errors.hpp"

#include <vector>

using namespace loopalg;

namespace {

bool expands_to_one(const LoopTerm& t, int trunc) {
    return magnus(t, trunc) == Series::one(trunc);
}

} // namespace

TEST_CASE("commutator") {
    VarTable t;
    VarId x = t.add("x"), y = t.add("y");
    LoopTerm c = commutator(LoopTerm::gen(x), LoopTerm::gen(y));
    CHECK(str(c, t) == "(y*x) \\ (x*y)");

    auto low = lowest_term(sub(magnus(c, 4), Series::one(4)));
    REQUIRE(low.has_value());
    CHECK(low->first == 2);
    Monomial xy = prod(Monomial::leaf(x), Monomial::leaf(y));
    Monomial yx = prod(Monomial::leaf(y), Monomial::leaf(x));
    CHECK(low->second ==
          Series::term(xy, coeff(1), 4) + Series::term(yx, coeff(-1), 4));

    CHECK(expands_to_one(commutator(LoopTerm::gen(x), LoopTerm::gen(x)), 6));
    CHECK(expands_to_one(commutator(LoopTerm::one(), LoopTerm::gen(y)), 6));
}

TEST_CASE("associator") {
    VarTable t;
    VarId x = t.add("x"), y = t.add("y"), z = t.add("z");
    LoopTerm a = associator(LoopTerm::gen(x), LoopTerm::gen(y), LoopTerm::gen(z));
    CHECK(str(a, t) == "(x*(y*z)) \\ ((x*y)*z)");
    CHECK(dim_degree(a, 5) == 3);

    auto low = lowest_term(sub(magnus(a, 4), Series::one(4)));
    REQUIRE(low.has_value());
    Monomial l = prod(prod(Monomial::leaf(x), Monomial::leaf(y)), Monomial::leaf(z));
    Monomial r = prod(Monomial::leaf(x), prod(Monomial::leaf(y), Monomial::leaf(z)));
    CHECK(low->second ==
          Series::term(l, coeff(1), 4) + Series::term(r, coeff(-1), 4));

    CHECK(expands_to_one(associator(LoopTerm::one(), LoopTerm::gen(y), LoopTerm::gen(z)), 6));
    CHECK(expands_to_one(associator(LoopTerm::gen(x), LoopTerm::one(), LoopTerm::gen(z)), 6));
}

TEST_CASE("index sequences are prefix-bounded and counted by (n+2)!/2") {
    CHECK(valid_deviation_index(std::vector<int>{}));
    CHECK(valid_deviation_index(std::vector<int>{1}));
    CHECK(valid_deviation_index(std::vector<int>{3}));
    CHECK_FALSE(valid_deviation_index(std::vector<int>{4}));
    CHECK_FALSE(valid_deviation_index(std::vector<int>{0}));
    // position two admits 1..4; the prefix still caps position one at 3
    CHECK(valid_deviation_index(std::vector<int>{3, 4}));
    CHECK_FALSE(valid_deviation_index(std::vector<int>{4, 1}));

    const long expected[] = {1, 3, 12, 60, 360}; // (n+2)!/2
    for (int n = 0; n <= 4; ++n) {
        auto all = enumerate_deviation_indices(n);
        CHECK(static_cast<long>(all.size()) == expected[n]);
        for (const auto& idx : all)
            CHECK(valid_deviation_index(idx));
    }
}

TEST_CASE("level-one deviations match their explicit forms") {
    VarTable t;
    LoopTerm a = LoopTerm::gen(t.add("a")), b = LoopTerm::gen(t.add("b")),
             c = LoopTerm::gen(t.add("c")), d = LoopTerm::gen(t.add("d"));
    std::vector<LoopTerm> args{a, b, c, d};

    auto dev = [&](int alpha) {
        std::vector<int> idx{alpha};
        return deviation(args, idx);
    };
    // ((a,c,d)(b,c,d)) \ (ab,c,d)
    CHECK(dev(1) == LoopTerm::left_div(
                        LoopTerm::mul(associator(a, c, d), associator(b, c, d)),
                        associator(LoopTerm::mul(a, b), c, d)));
    // ((a,b,d)(a,c,d)) \ (a,bc,d)
    CHECK(dev(2) == LoopTerm::left_div(
                        LoopTerm::mul(associator(a, b, d), associator(a, c, d)),
                        associator(a, LoopTerm::mul(b, c), d)));
    // ((a,b,c)(a,b,d)) \ (a,b,cd)
    CHECK(dev(3) == LoopTerm::left_div(
                        LoopTerm::mul(associator(a, b, c), associator(a, b, d)),
                        associator(a, b, LoopTerm::mul(c, d))));

    std::vector<LoopTerm> three{a, b, c};
    CHECK(deviation(three, std::vector<int>{}) == associator(a, b, c));

    CHECK_THROWS_AS(deviation(three, std::vector<int>{1}), usage_error);
    CHECK_THROWS_AS(deviation(args, std::vector<int>{4}), usage_error);
}

TEST_CASE("unit among the arguments collapses every low-level deviation") {
    VarTable t;
    std::vector<LoopTerm> gens{LoopTerm::gen(t.add("a")), LoopTerm::gen(t.add("b")),
                               LoopTerm::gen(t.add("c")), LoopTerm::gen(t.add("d"))};
    for (int level = 0; level <= 2; ++level) {
        for (const auto& idx : enumerate_deviation_indices(level)) {
            for (std::size_t slot = 0; slot < static_cast<std::size_t>(level) + 3; ++slot) {
                std::vector<LoopTerm> args;
                for (std::size_t i = 0; i < static_cast<std::size_t>(level) + 3; ++i)
                    args.push_back(i < gens.size() ? gens[i] : gens.back());
                args[slot] = LoopTerm::one();
                CHECK(expands_to_one(deviation(args, idx), 4));
            }
        }
    }
}

TEST_CASE("deviation grading adds filtration degrees") {
    VarTable t;
    VarId x = t.add("x"), y = t.add("y"), z = t.add("z");
    LoopTerm u = LoopTerm::gen(x);
    LoopTerm v = commutator(LoopTerm::gen(y), LoopTerm::gen(z));
    auto d = dim_degree(commutator(u, v), 5);
    REQUIRE(d.has_value());
    CHECK(*d >= 3);
}

TEST_CASE("the nested deviation family specializes correctly") {
    VarTable t;
    LoopTerm x1 = LoopTerm::gen(t.add("x1")), x2 = LoopTerm::gen(t.add("x2")),
             y1 = LoopTerm::gen(t.add("y1")), y2 = LoopTerm::gen(t.add("y2")),
             z = LoopTerm::gen(t.add("z"));

    std::vector<LoopTerm> xs1{x1};
    std::vector<LoopTerm> ys1{y1};
    CHECK(deviation_P(1, 1, xs1, ys1, z) == associator(x1, y1, z));

    std::vector<LoopTerm> xs2{x1, x2};
    std::vector<LoopTerm> args21{x1, x2, y1, z};
    CHECK(deviation_P(2, 1, xs2, ys1, z) == deviation(args21, std::vector<int>{1}));

    std::vector<LoopTerm> ys2{y1, y2};
    std::vector<LoopTerm> args12{x1, y1, y2, z};
    CHECK(deviation_P(1, 2, xs1, ys2, z) == deviation(args12, std::vector<int>{2}));

    CHECK_THROWS_AS(deviation_P(0, 1, {}, ys1, z), usage_error);
    CHECK_THROWS_AS(deviation_P(1, 0, xs1, {}, z), usage_error);
}
