#include "support.hpp"
#include "tel/semantics.hpp"

#include <gtest/gtest.h>

using namespace tel;

namespace {

const std::vector<std::string> P{"p"};

ThtPair pairOf(const Lasso& H, const Lasso& T) { return align(H, T); }

}  // namespace

TEST(ThtSat, AlternatingModel)
{
    const Lasso T = makeLasso(P, {}, {0, 1});
    EXPECT_TRUE(thtSat(totalPair(T), 0, parse("G(~p -> X p)")));
}

TEST(ThtSat, HereAndThereOfExcludedAntecedent)
{
    const ThtPair m = pairOf(makeLasso(P, {}, {0}), makeLasso(P, {}, {1}));
    EXPECT_TRUE(thtSat(m, 0, parse("~p -> p")));
    EXPECT_FALSE(thtSat(m, 0, parse("p")));
    EXPECT_FALSE(thtSat(m, 0, parse("~p")));
}

TEST(ThtSat, Bottom)
{
    gen::Rng rng(31);
    for (int i = 0; i < 50; ++i) EXPECT_FALSE(thtSat(gen::randomPair(rng, P, 2, 2), 0, bottom()));
}

TEST(ThtSat, AtomUndeclared)
{
    EXPECT_THROW(thtSat(totalPair(makeLasso(P, {}, {1})), 0, parse("q")), AtomError);
}

TEST(ThtSat, UntilWrapsAroundLoop)
{
    // q only at loop position 0; from loop position 2 the witness lies in the next period
    const Lasso T = makeLasso({"p", "q"}, {1}, {2, 1, 1});
    Evaluator ev(parse("p U q"));
    ev.runTotal(T);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_TRUE(ev.holdsTotal(i)) << i;
    Evaluator g(parse("G F q"));
    g.runTotal(T);
    EXPECT_TRUE(g.holdsTotal(0));
    Evaluator r(parse("q R p"));
    r.runTotal(T);
    EXPECT_FALSE(r.holdsTotal(2));
    Evaluator a(parse("G(p | q) & F G(p | q) & ~F G p"));
    a.runTotal(T);
    EXPECT_TRUE(a.holdsTotal(3));
}

TEST(LtlSat, Examples)
{
    EXPECT_TRUE(ltlSat(makeLasso(P, {}, {1}), parse("G p")));
    EXPECT_TRUE(ltlSat(makeLasso(P, {}, {1}), parse("G(~X p -> p) & G(X p -> p)")));
    EXPECT_FALSE(ltlSat(makeLasso(P, {}, {0}), parse("F p")));
}

TEST(NonTheorems, ExcludedMiddle)
{
    const ThtPair m = pairOf(makeLasso(P, {}, {0}), makeLasso(P, {}, {1}));
    EXPECT_FALSE(thtSat(m, 0, parse("p | ~p")));
}

TEST(NonTheorems, EventuallyAsDualOfAlways)
{
    // search all pairs at small bounds for a falsifying one
    const Formula f = parse("(F p -> ~G ~p) & (~G ~p -> F p)");
    bool found = false;
    for (const Lasso& T : enumerateLassos(P, 2, 2)) {
        for (const Lasso& H : enumerateLassos(P, 2, 2)) {
            if (!below(H, T)) continue;
            if (!thtSat(align(H, T), 0, f)) found = true;
        }
    }
    EXPECT_TRUE(found);
}

class HereThereProperties : public ::testing::Test {
protected:
    gen::Rng rng{32};
    gen::FormulaShape shape;
    void SetUp() override
    {
        shape.atoms = {"p", "q", "r"};
        shape.maxNodes = 10;
    }
};

TEST_F(HereThereProperties, Persistence)
{
    for (int i = 0; i < 1500; ++i) {
        const Formula f = gen::randomFormula(rng, shape);
        const ThtPair m = gen::randomPair(rng, shape.atoms, 3, 3);
        Evaluator ev(f);
        ev.run(m);
        for (std::size_t k = 0; k < m.T.window(); ++k)
            if (ev.holds(k)) ASSERT_TRUE(ev.holdsTotal(k)) << print(f);
    }
}

TEST_F(HereThereProperties, NegationTotality)
{
    for (int i = 0; i < 1500; ++i) {
        const Formula f = lnot(gen::randomFormula(rng, shape));
        const ThtPair m = gen::randomPair(rng, shape.atoms, 3, 3);
        Evaluator ev(f);
        ev.run(m);
        for (std::size_t k = 0; k < m.T.window(); ++k) ASSERT_EQ(ev.holds(k), ev.holdsTotal(k));
    }
}

TEST_F(HereThereProperties, TotalIsLtl)
{
    for (int i = 0; i < 1500; ++i) {
        const Formula f = gen::randomFormula(rng, shape);
        const Lasso T = gen::randomLasso(rng, shape.atoms, 3, 3);
        ASSERT_EQ(thtSat(totalPair(T), 0, f), ltlSat(T, f));
    }
}

TEST_F(HereThereProperties, ImplicationHeightOneProjects)
{
    int checked = 0;
    while (checked < 1500) {
        const Formula f = gen::randomFormula(rng, shape);
        const auto h = measures(f).implicationHeight;
        if (h > 1) continue;
        ++checked;
        const ThtPair m = gen::randomPair(rng, shape.atoms, 3, 3);
        const bool here = thtSat(m, 0, f);
        if (here) ASSERT_TRUE(ltlSat(m.H, f)) << print(f);
        if (h == 0) ASSERT_EQ(here, ltlSat(m.H, f)) << print(f);
    }
}

TEST(Translation, Cases)
{
    const auto tr = translateToLtl(parse("p"));
    EXPECT_EQ(print(tr.formula), "p");
    const auto ti = translateToLtl(parse("p -> q"));
    EXPECT_EQ(print(ti.formula), "(p -> q) & (p__t -> q__t)");
    const auto tu = translateToLtl(parse("p U q"));
    EXPECT_EQ(print(tu.formula), "p U q");
    EXPECT_EQ(print(tu.axiom), "G((p -> p__t) & (q -> q__t))");
}

TEST(Translation, PrimedNamesAvoidCollisions)
{
    const auto tr = translateToLtl(parse("p & p__t"));
    EXPECT_EQ(tr.atoms.size(), 4u);
    EXPECT_EQ(tr.atoms[2], "p__t_");
    EXPECT_EQ(tr.atoms[3], "p__t__t");
}

TEST(Translation, EncodeDecode)
{
    gen::Rng rng(33);
    const auto tr = translateToLtl(parse("p & q"));
    for (int i = 0; i < 200; ++i) {
        const ThtPair m = gen::randomPair(rng, {"p", "q"}, 3, 3);
        const ThtPair back = decodePair(encodePair(m, tr), tr);
        ASSERT_EQ(back.H, m.H);
        ASSERT_EQ(back.T, m.T);
    }
}

TEST(Translation, AgreesWithThtSatOnRandomSamples)
{
    gen::Rng rng(34);
    gen::FormulaShape shape;
    shape.maxNodes = 12;
    for (int i = 0; i < 1000; ++i) {
        const Formula f = gen::randomFormula(rng, shape);
        const ThtPair m = gen::randomPair(rng, shape.atoms, 3, 3);
        const auto tr = translateToLtl(f, shape.atoms);
        ASSERT_EQ(thtSat(m, 0, f), ltlSat(encodePair(m, tr), land(tr.axiom, tr.formula))) << print(f);
    }
}
