#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "indmodel/indmodel.hpp"
#include "oracles.hpp"

using namespace indmodel;

namespace {

Multilinear additive_q3() {
    // x - y + (q + 1), q = 3
    return Multilinear(2, {{0b01, 1}, {0b10, -1}, {0, 4}});
}

}  // namespace

TEST(Eval, AdditiveConstructionFormula) { EXPECT_EQ(eval(additive_q3(), {5, 3}), 6); }

TEST(Eval, MultiplicativeConstructionFormula) {
    // xy + y - qy + 1, q = 3
    Multilinear f(2, {{0b11, 1}, {0b10, 1}, {0b10, -3}, {0, 1}});
    EXPECT_EQ(eval(f, {3, 3}), 4);
}

TEST(Eval, MinCompose) {
    ExtremumCompose f(ExtremumCompose::Pick::min, 3, Multilinear::affine_unary(-1, 1));
    EXPECT_EQ(eval(f, {7, 2, 9}), 1);
}

TEST(Eval, MaxCompose) {
    ExtremumCompose f(ExtremumCompose::Pick::max, 2, Multilinear::affine_unary(0, 1));
    EXPECT_EQ(eval(f, {3, 8}), 8);
    EXPECT_EQ(eval(f, {8, 3}), 8);
}

TEST(Eval, PiecewiseFirstMatchWins) {
    Piecewise f(1, {{0, 1, Multilinear::constant(1, 10)}, {0, 5, Multilinear::constant(1, 10)}},
                Multilinear::affine_unary(-1, 1));
    EXPECT_EQ(eval(f, {1}), 10);
    EXPECT_EQ(eval(f, {5}), 10);
    EXPECT_EQ(eval(f, {3}), 2);
    EXPECT_EQ(eval(f, {2}), 1);
}

TEST(Eval, ArityMismatchThrows) {
    EXPECT_THROW(eval(additive_q3(), {1}), ArityError);
    EXPECT_THROW(eval(additive_q3(), {1, 2, 3}), ArityError);
}

TEST(Eval, NonNaturalCoordinateThrows) { EXPECT_THROW(eval(additive_q3(), {0, 1}), PreconditionError); }

TEST(Eval, OverflowIsAnError) {
    const Int big = std::numeric_limits<Int>::max() / 2 + 1;
    Multilinear sq(2, {{0b11, 1}});
    EXPECT_THROW(eval(sq, {big, 2}), OverflowError);
    EXPECT_THROW(checked_add(std::numeric_limits<Int>::max(), 1), OverflowError);
    EXPECT_THROW(checked_sub(std::numeric_limits<Int>::min(), 1), OverflowError);
}

TEST(Eval, CoefficientSubsetOutsideArityRejected) {
    EXPECT_THROW(Multilinear(2, {{0b100, 1}}), ArityError);
    EXPECT_THROW(Multilinear(0, {}), ArityError);
}

TEST(Eval, DuplicateMasksMergeAndZerosDrop) {
    Multilinear f(2, {{0b01, 2}, {0b01, -2}, {0b10, 3}, {0, 0}});
    ASSERT_EQ(f.terms().size(), 1u);
    EXPECT_EQ(f.coefficient(0b10), 3);
    EXPECT_EQ(f.coefficient(0b01), 0);
}

TEST(EvalProperty, MultilinearMatchesNaiveSum) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Int> coord(1, 50);
    std::uniform_int_distribution<int> arity(1, 4);
    for (int trial = 0; trial < 500; ++trial) {
        Multilinear f = oracle::random_multilinear(rng, arity(rng), -9, 9);
        Tuple t(static_cast<std::size_t>(f.arity()));
        for (Int& x : t) {
            x = coord(rng);
        }
        Int v = eval(f, t);
        EXPECT_EQ(v, oracle::naive_multilinear(f, t));
        EXPECT_EQ(v, eval(f, t));
    }
}

TEST(EvalProperty, TermOrderDoesNotMatter) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        Multilinear f = oracle::random_multilinear(rng, 3, -5, 5);
        std::vector<Term> terms = f.terms();
        std::shuffle(terms.begin(), terms.end(), rng);
        EXPECT_EQ(Multilinear(3, terms), f);
    }
}

TEST(Materialize, Examples) {
    EXPECT_EQ(SetSpec::cofinite({2}).materialize(5), (NatSet{1, 3, 4, 5}));
    EXPECT_EQ(SetSpec::primes(true).materialize(10), (NatSet{1, 2, 3, 5, 7}));
    EXPECT_EQ(SetSpec::finite({2, 4}).materialize(3), (NatSet{2}));
    EXPECT_EQ(SetSpec::interval(3, 6).materialize(5), (NatSet{3, 4, 5}));
}

TEST(Materialize, EmptyResultIsAnError) {
    EXPECT_THROW(SetSpec::finite({5}).materialize(4), EmptyBaseError);
}

TEST(Materialize, InvalidListsRejected) {
    EXPECT_THROW(SetSpec::finite({}), PreconditionError);
    EXPECT_THROW(SetSpec::finite({3, 2}), PreconditionError);
    EXPECT_THROW(SetSpec::finite({0, 2}), PreconditionError);
    EXPECT_THROW(SetSpec::cofinite({2, 2}), PreconditionError);
}

TEST(MaterializeProperty, MembershipMatchesPredicate) {
    const Int cap = 200;
    std::vector<SetSpec> specs{SetSpec::finite({1, 5, 70}), SetSpec::cofinite({2, 3, 100}),
                               SetSpec::primes(false), SetSpec::primes(true), SetSpec::interval(10, 20)};
    for (const SetSpec& s : specs) {
        NatSet m = s.materialize(cap);
        for (Int x = 1; x <= cap; ++x) {
            bool expected = false;
            if (std::holds_alternative<SetSpec::Primes>(s.form())) {
                bool prime = x > 1;
                for (Int d = 2; d * d <= x; ++d) {
                    prime = prime && x % d != 0;
                }
                expected = prime || (x == 1 && std::get<SetSpec::Primes>(s.form()).include_one);
            } else {
                expected = s.contains(x);
            }
            EXPECT_EQ(contains(m, x), expected) << to_string(s) << " at " << x;
        }
    }
}

TEST(SetSpec, NthSmallest) {
    EXPECT_EQ(SetSpec::primes(false).nth_smallest(1), 3);
    EXPECT_EQ(SetSpec::cofinite({1, 2}).nth_smallest(0), 3);
    EXPECT_EQ(SetSpec::finite({4}).nth_smallest(1), std::nullopt);
    EXPECT_TRUE(SetSpec::interval(1, 5).is_finite());
    EXPECT_FALSE(SetSpec::primes(true).is_finite());
}

TEST(PrimeOmega, Examples) {
    EXPECT_EQ(prime_omega(1), 0);
    EXPECT_EQ(prime_omega(12), 3);
    EXPECT_EQ(prime_omega(97), 1);
    EXPECT_EQ(prime_omega(1024), 10);
    EXPECT_THROW(prime_omega(0), PreconditionError);
}

TEST(PrimeOmega, AdditiveOverProducts) {
    for (Int m = 1; m <= 60; ++m) {
        for (Int n = 1; n <= 60; ++n) {
            EXPECT_EQ(prime_omega(m * n), prime_omega(m) + prime_omega(n));
        }
    }
}

TEST(ExtNat, ThreeValuedComparison) {
    auto f = ExtNat::finite;
    auto w = ExtNat::at_least;
    EXPECT_EQ(compare_le(f(2), f(3)).result, Tri::yes);
    EXPECT_EQ(compare_le(f(3), f(2)).result, Tri::no);
    EXPECT_EQ(compare_le(f(2), w(64)).result, Tri::yes);
    EXPECT_EQ(compare_le(f(70), w(64)).result, Tri::unknown);
    EXPECT_EQ(compare_le(w(64), f(2)).result, Tri::no);
    EXPECT_EQ(compare_le(w(64), f(70)).result, Tri::unknown);
    ExtComparison both = compare_le(w(64), w(64));
    EXPECT_EQ(both.result, Tri::yes);
    EXPECT_TRUE(both.presumes_omega);
    EXPECT_THROW(f(0), PreconditionError);
}

TEST(Bound, Defaults) {
    Bound b;
    EXPECT_EQ(b.universe, 60);
    EXPECT_EQ(b.cap, 2 * 60 + 16);
    EXPECT_EQ(b.cutoff, 64);
    EXPECT_THROW(Bound::make(10, 5, 3), PreconditionError);
    EXPECT_THROW(Bound::make(10, 10, 0), PreconditionError);
}

TEST(Format, SetsCompressAboveTwenty) {
    EXPECT_EQ(format_set({1, 2, 3}), "[1, 2, 3]");
    EXPECT_EQ(format_set(interval_set(1, 100)), "[1..100]");
    NatSet s = interval_set(1, 30);
    s.push_back(40);
    s.push_back(42);
    EXPECT_EQ(format_set(s), "[1..30, 40, 42]");
    EXPECT_EQ(format_set({}), "[]");
}

TEST(ModelIo, ParsesFirstPrinciple) {
    InductionModel m = parse_model(R"({
      "base": {"kind": "finite", "elements": [1]},
      "gen": {"kind": "multilinear", "arity": 1, "terms": [{"vars": [], "c": 1}, {"vars": [1], "c": 1}]}
    })");
    EXPECT_EQ(m.base, SetSpec::finite({1}));
    EXPECT_EQ(m.gen, GenFn(Multilinear::affine_unary(1, 1)));
    EXPECT_EQ(to_string(m), "<{1}, x + 1>");
}

TEST(ModelIo, CoefficientSubsetBeyondArityIsSchemaError) {
    try {
        parse_model(R"({"base": {"kind": "finite", "elements": [1]},
                        "gen": {"kind": "multilinear", "arity": 2, "terms": [{"vars": [3], "c": 1}]}})");
        FAIL() << "expected a schema error";
    } catch (const SchemaError& e) {
        EXPECT_EQ(e.field(), "/gen/terms/0/vars/0");
    }
}

TEST(ModelIo, SyntaxErrorsCarryLineAndColumn) {
    try {
        parse_model("{\n  \"base\": {\"kind\": \"finite\",\n   \"elements\": [1,]}\n}");
        FAIL() << "expected a schema error";
    } catch (const SchemaError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_GT(e.column(), 1u);
    }
}

TEST(ModelIo, UnknownKindAndFieldRejected) {
    EXPECT_THROW(parse_model(R"({"base": {"kind": "evens"}, "gen": {"kind": "multilinear", "arity": 1, "terms": []}})"),
                 SchemaError);
    EXPECT_THROW(parse_model(R"({"base": {"kind": "primes", "include_one": true, "x": 1},
                                 "gen": {"kind": "multilinear", "arity": 1, "terms": []}})"),
                 SchemaError);
    EXPECT_THROW(parse_model(R"({"base": {"kind": "primes", "include_one": true},
                                 "gen": {"kind": "polynomial", "arity": 1}})"),
                 SchemaError);
}

TEST(ModelIo, DuplicateGuardsRejected) {
    EXPECT_THROW(parse_model(R"({"base": {"kind": "finite", "elements": [1]},
        "gen": {"kind": "piecewise", "arity": 1,
                "cases": [{"coord": 1, "equals": 2, "body": []}, {"coord": 1, "equals": 2, "body": []}],
                "default": []}})"),
                 SchemaError);
}

TEST(ModelIo, RoundTripFixtures) {
    for (const char* name : {"first-principle", "strong-form", "backward-primes", "prime-induction", "base2-succ",
                             "base2-step2", "ex-equiv-third", "block-five", "identity", "max2"}) {
        InductionModel m = load_model(std::string(FIXTURE_DIR) + "/" + name + ".json");
        EXPECT_EQ(parse_model(serialize_model(m)), m) << name;
        EXPECT_EQ(serialize_model(parse_model(serialize_model(m))), serialize_model(m)) << name;
    }
}

TEST(ModelIo, RoundTripRandomPiecewiseAndCompose) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        Multilinear body = oracle::random_multilinear(rng, 2, -4, 4);
        Piecewise pw(2, {{1, trial + 1, body}, {0, 3, Multilinear::constant(2, 7)}},
                     oracle::random_multilinear(rng, 2, -4, 4));
        InductionModel m{SetSpec::interval(2, 9), pw};
        EXPECT_EQ(parse_model(serialize_model(m)), m);
        InductionModel c{SetSpec::cofinite({3}),
                         ExtremumCompose(ExtremumCompose::Pick::min, 3, oracle::random_multilinear(rng, 1, -4, 4))};
        EXPECT_EQ(parse_model(serialize_model(c)), c);
    }
}

TEST(ModelIo, LoadReportsFileName) {
    try {
        load_model(std::string(FIXTURE_DIR) + "/malformed.json");
        FAIL() << "expected a schema error";
    } catch (const SchemaError& e) {
        EXPECT_NE(std::string(e.what()).find("malformed.json"), std::string::npos);
        EXPECT_EQ(e.field(), "/base/elements/1");
    }
}
