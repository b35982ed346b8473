#include "support.hpp"
#include "tel/equilibrium.hpp"
#include "tel/semantics.hpp"
#include "tel/solvers.hpp"
#include "tel/tiling.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

using namespace tel;

namespace {

const std::vector<Reduction> kAll{Reduction::ExpspaceFG, Reduction::ExpspaceG,  Reduction::ExpspaceU,
                                  Reduction::NexptimeFG, Reduction::NexptimeU,  Reduction::NexptimeR,
                                  Reduction::PspacePositive};

TilingInstance instance(std::vector<Domino> ds, int n, std::size_t init, std::size_t final)
{
    TilingInstance I;
    std::set<std::string> cs;
    for (const auto& d : ds) cs.insert({d.down, d.left, d.up, d.right});
    I.colors.assign(cs.begin(), cs.end());
    I.dominoes = std::move(ds);
    I.n = n;
    I.init = init;
    I.final = final;
    return I;
}

TilingInstance randomInstance(gen::Rng& rng, int n, std::size_t maxTypes)
{
    const std::vector<std::string> colors{"a", "b"};
    auto color = [&] { return colors[rng() % colors.size()]; };
    std::vector<Domino> ds;
    const std::size_t k = 1 + rng() % maxTypes;
    for (std::size_t i = 0; i < k; ++i) ds.push_back({color(), color(), color(), color()});
    return instance(ds, n, rng() % k, rng() % k);
}

// a 1-row solvable instance for width 2: d_0 then d_1
TilingInstance twoCellRow(int n)
{
    return instance({{"x", "x", "x", "y"}, {"x", "y", "x", "x"}}, n, 0, 1);
}

// independent check of the tiling conditions
bool oracleValid(const TilingInstance& I, std::size_t W, const Tiling& f, bool normalize)
{
    const std::size_t k = f.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < W; ++j) {
            const Domino& d = I.dominoes[f[i][j]];
            if (j > 0 && I.dominoes[f[i][j - 1]].right != d.left) return false;
            if (i > 0 && I.dominoes[f[i - 1][j]].up != d.down) return false;
            if (normalize && f[i][j] == I.final && !(i == k - 1 && j == W - 1)) return false;
        }
    return f[0][0] == I.init && f[k - 1][W - 1] == I.final;
}

// smallest row count with a tiling, by exhaustive enumeration of grids
std::optional<std::size_t> oracleRows(const TilingInstance& I, std::size_t W, std::size_t minRows, std::size_t maxRows,
                                      bool normalize)
{
    const std::size_t m = I.dominoes.size();
    for (std::size_t rows = minRows; rows <= maxRows; ++rows) {
        const std::size_t cells = rows * W;
        std::size_t total = 1;
        for (std::size_t c = 0; c < cells; ++c) total *= m;
        for (std::size_t code = 0; code < total; ++code) {
            Tiling f(rows, std::vector<std::size_t>(W));
            std::size_t x = code;
            for (std::size_t c = 0; c < cells; ++c, x /= m) f[c / W][c % W] = x % m;
            if (oracleValid(I, W, f, normalize)) return rows;
        }
    }
    return std::nullopt;
}

Letter letterOf(const std::vector<std::string>& atoms, const std::vector<std::string>& names)
{
    Letter a = 0;
    for (const auto& n : names) {
        const auto it = std::find(atoms.begin(), atoms.end(), n);
        EXPECT_NE(it, atoms.end()) << n;
        a |= Letter{1} << (it - atoms.begin());
    }
    return a;
}

std::vector<std::string> atomVector(const Formula& f)
{
    const auto s = atomsOf(f);
    return {s.begin(), s.end()};
}

std::vector<std::string> tags(int k)
{
    std::vector<std::string> out;
    for (int t = 1; t <= k; ++t) out.push_back(tagAtom(t));
    return out;
}

// main atoms of each position of a row encoding: dollar, then bits and content per cell
std::vector<std::string> rowCode(const TilingInstance& I, const Tiling& f)
{
    std::vector<std::string> out;
    for (const auto& row : f) {
        out.push_back(kDollarAtom);
        for (std::size_t j = 0; j < row.size(); ++j) {
            for (int i = 1; i <= I.n; ++i) out.push_back(numAtom(i, static_cast<int>((j >> (I.n - i)) & 1)));
            out.push_back(dominoAtom(row[j]));
        }
    }
    return out;
}

// cell codes of a square tiling, row-major, bit 1 least significant
std::vector<std::vector<std::string>> squareCode(const TilingInstance& I, const Tiling& f)
{
    std::vector<std::vector<std::string>> out;
    for (std::size_t r = 0; r < f.size(); ++r)
        for (std::size_t c = 0; c < f[r].size(); ++c) {
            std::vector<std::string> cell{dominoAtom(f[r][c])};
            for (int i = 1; i <= I.n; ++i) {
                cell.push_back(rowBitAtom(i, static_cast<int>((r >> (i - 1)) & 1)));
                cell.push_back(colBitAtom(i, static_cast<int>((c >> (i - 1)) & 1)));
            }
            out.push_back(cell);
        }
    return out;
}

std::vector<std::string> squareTags(int n)
{
    std::vector<std::string> out = tags(3);
    for (char axis : {'r', 'c'})
        for (int i = 1; i <= n; ++i)
            for (int b = 0; b <= 1; ++b) out.push_back(barAtom(axis, i, b));
    return out;
}

double growthExponent(const std::vector<int>& sizes)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double x = std::log(static_cast<double>(i + 1)), y = std::log(static_cast<double>(sizes[i]));
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace

TEST(Instance, RoundTrip)
{
    gen::Rng rng(71);
    for (int i = 0; i < 20; ++i) {
        const auto I = randomInstance(rng, 1 + i % 3, 4);
        const auto J = parseInstance(instanceText(I));
        EXPECT_EQ(instanceText(J), instanceText(I));
        EXPECT_EQ(J.dominoes, I.dominoes);
    }
    EXPECT_THROW(parseInstance("colors: a\ndomino: a a a b\nn: 1\ninit: 0\nfinal: 0\n"), TilingFormatError);
    EXPECT_THROW(parseInstance("colors: a\ndomino: a a a a\nn: 1\ninit: 0\n"), TilingFormatError);
    EXPECT_THROW(parseInstance("colors: a\ndomino: a a a a\nn: 1\ninit: 3\nfinal: 0\n"), TilingFormatError);
    EXPECT_THROW(parseInstance("colors: a\nfoo: 1\n"), TilingFormatError);
}

TEST(SolveTiling, SingleDomino)
{
    const auto I = instance({{"a", "a", "a", "a"}}, 1, 0, 0);
    const auto free = solveTiling(I, TilingKind::ExpspaceRows, 4, false);
    ASSERT_EQ(free.status, TilingStatus::Found);
    EXPECT_EQ(*free.tiling, (Tiling{{0, 0}}));
    // d_final may only be the last cell, so a two-cell row is impossible
    EXPECT_EQ(solveTiling(I, TilingKind::ExpspaceRows, 4).status, TilingStatus::None);
    const auto one = solveTiling(I, TilingKind::PspaceRows, 4);
    ASSERT_EQ(one.status, TilingStatus::Found);
    EXPECT_EQ(*one.tiling, (Tiling{{0}}));
}

TEST(SolveTiling, VerticalAdjacencyBlocked)
{
    const auto I = instance({{"a", "x", "b", "x"}, {"a", "x", "b", "x"}}, 1, 0, 1);
    EXPECT_EQ(solveTiling(I, TilingKind::NexptimeSquare, 4).status, TilingStatus::None);
    EXPECT_EQ(solveTiling(I, TilingKind::ExpspaceRows, 4).status, TilingStatus::Found);
}

TEST(SolveTiling, CapBinds)
{
    // rows alternate colors; the final row can only follow three others
    const auto I = instance({{"a", "x", "b", "x"}, {"b", "x", "c", "x"}, {"c", "x", "d", "x"}, {"d", "x", "e", "x"}}, 1, 0, 3);
    EXPECT_EQ(solveTiling(I, TilingKind::PspaceRows, 3).status, TilingStatus::CapReached);
    const auto o = solveTiling(I, TilingKind::PspaceRows, 4);
    ASSERT_EQ(o.status, TilingStatus::Found);
    EXPECT_EQ(o.tiling->size(), 4u);
    EXPECT_EQ(statusLabel(o), "yes");
    EXPECT_EQ(statusLabel(solveTiling(I, TilingKind::PspaceRows, 3)), "unknown(cap)");
    EXPECT_EQ(solveTiling(I, TilingKind::NexptimeSquare, 1).status, TilingStatus::CapReached);
}

TEST(SolveTiling, AgreesWithEnumerator)
{
    gen::Rng rng(72);
    const std::size_t cap = 3;
    int found = 0;
    for (int i = 0; i < 300; ++i) {
        const auto I = randomInstance(rng, 1, 4);
        const bool normalize = i % 2 == 0;
        for (auto kind : {TilingKind::ExpspaceRows, TilingKind::NexptimeSquare, TilingKind::PspaceRows}) {
            const std::size_t W = tilingWidth(I, kind);
            const bool square = kind == TilingKind::NexptimeSquare;
            const auto o = solveTiling(I, kind, cap, normalize);
            const auto rows = oracleRows(I, W, square ? W : 1, square ? W : cap, normalize);
            if (rows) {
                ASSERT_EQ(o.status, TilingStatus::Found) << instanceText(I) << kindName(kind);
                EXPECT_TRUE(oracleValid(I, W, *o.tiling, normalize));
                EXPECT_TRUE(isTiling(I, kind, *o.tiling, normalize));
                EXPECT_EQ(o.tiling->size(), *rows);
                ++found;
            } else {
                ASSERT_NE(o.status, TilingStatus::Found) << instanceText(I) << kindName(kind);
            }
        }
    }
    EXPECT_GT(found, 50);
}

TEST(Encoders, FragmentMembership)
{
    gen::Rng rng(73);
    for (int i = 0; i < 12; ++i) {
        const auto I = randomInstance(rng, 1 + i % 2, 3);
        for (auto r : kAll) {
            const Formula f = reductionParts(I, r).formula;
            EXPECT_TRUE(inFragment(f, parseFragment(fragmentTag(r)))) << fragmentTag(r) << " " << fragmentName(measures(f));
        }
    }
    const auto I = twoCellRow(1);
    EXPECT_EQ(measures(encodeExpspaceFG(I)).temporalHeight, 2);
    EXPECT_EQ(measures(encodeExpspaceFG(I)).implicationHeight, 1);
    EXPECT_EQ(measures(encodeNexptimeFG(I)).temporalHeight, 1);
    EXPECT_EQ(measures(encodeNexptimeFG(I)).implicationHeight, 2);
    EXPECT_EQ(measures(encodePspacePositive(I)).implicationHeight, 0);
    EXPECT_THROW(encodeVariant(I, "THT_2^1(F,G)"), std::invalid_argument);
    EXPECT_THROW(encodeVariant(I, "THT_3"), std::invalid_argument);
    EXPECT_NO_THROW(encodeVariant(I, "THT_1^2(R)"));
}

TEST(Encoders, PolynomialGrowth)
{
    const auto base = instance({{"x", "x", "x", "y"}, {"x", "y", "x", "x"}, {"y", "x", "y", "x"}}, 1, 0, 1);
    for (auto r : kAll) {
        std::vector<int> sizes;
        for (int n = 1; n <= 8; ++n) {
            auto I = base;
            I.n = n;
            sizes.push_back(measures(reductionParts(I, r).formula).size);
        }
        for (std::size_t i = 1; i < sizes.size(); ++i) EXPECT_GT(sizes[i], sizes[i - 1]) << fragmentTag(r);
        EXPECT_LE(growthExponent(sizes), 3.0) << fragmentTag(r);
        // cubic growth gives a ratio of 8 from n=4 to n=8, exponential growth at least 16
        EXPECT_LT(sizes[7], 12 * sizes[3]) << fragmentTag(r);
    }
}

TEST(Encoders, Deterministic)
{
    gen::Rng rng(74);
    const auto I = randomInstance(rng, 2, 3);
    for (auto r : kAll) EXPECT_EQ(print(reductionParts(I, r).formula), print(reductionParts(I, r).formula));
}

TEST(Expspace, PseudoOnGoodCode)
{
    const auto I = twoCellRow(1);
    const auto t = solveTiling(I, TilingKind::ExpspaceRows, 2);
    ASSERT_EQ(t.status, TilingStatus::Found);
    const auto parts = reductionParts(I, Reduction::ExpspaceFG);
    auto atoms = atomVector(parts.formula);
    const auto code = rowCode(I, *t.tiling);
    std::vector<Letter> good, partial;
    for (std::size_t i = 0; i < code.size(); ++i) {
        auto names = tags(9);
        names.push_back(code[i]);
        names.push_back(kMarkAtom);
        good.push_back(letterOf(atoms, names));
        partial.push_back(letterOf(atoms, {code[i], tagAtom(4)}) | (i > 0 ? letterOf(atoms, {kMarkAtom}) : 0));
    }
    const Lasso T = makeLasso(atoms, {good.begin(), good.end() - 1}, {good.back()});
    EXPECT_TRUE(ltlSat(T, parts.pseudo));
    EXPECT_TRUE(ltlSat(T, parts.formula));
    // a total code that is not good: u absent at 0, single tags
    const Lasso N = makeLasso(atoms, {partial.begin(), partial.end() - 1}, {partial.back()});
    EXPECT_TRUE(ltlSat(N, parts.pseudo));
    EXPECT_FALSE(ltlSat(N, parts.formula) && !ltlSat(N, parts.bad));
    // H strictly below a good T with single tags and u from position 1 is a pseudo-tiling code
    ThtPair M{N, T};
    EXPECT_TRUE(thtSat(M, 0, parts.pseudo));
    // two tags in H at position 0 break the H-requirement
    std::vector<Letter> twoTags = partial;
    twoTags[0] |= letterOf(atoms, {tagAtom(5)});
    EXPECT_FALSE(thtSat({makeLasso(atoms, {twoTags.begin(), twoTags.end() - 1}, {twoTags.back()}), T}, 0, parts.pseudo));
    // main atoms must agree between H and T
    std::vector<Letter> noMain = partial;
    noMain[0] &= ~letterOf(atoms, {kDollarAtom});
    EXPECT_FALSE(thtSat({makeLasso(atoms, {noMain.begin(), noMain.end() - 1}, {noMain.back()}), T}, 0, parts.pseudo));
}

TEST(Expspace, ThetaMarksSegments)
{
    const auto I = twoCellRow(1);
    const auto t = solveTiling(I, TilingKind::ExpspaceRows, 2);
    ASSERT_EQ(t.status, TilingStatus::Found);
    const auto code = rowCode(I, *t.tiling);
    const auto main = rowMainAtoms(I);
    const std::vector<std::string> dollar{kDollarAtom};
    const std::vector<std::string> delta{dominoAtom(0), dominoAtom(1)};
    struct Case {
        std::vector<Mark> marks;
        bool expected;
    };
    const std::vector<Case> cases{
        {{{1, dollar}, {2, main}}, true},
        {{{1, main}, {2, main}}, true},
        {{{1, dollar}, {2, delta}}, false},
        {{{2, dollar}, {1, main}}, false},
        {{{1, dollar}, {2, main}, {3, main}}, false},
        {{{1, dollar}}, false},
    };
    const auto atomsFor = [&](const Formula& f) {
        auto a = atomVector(f);
        for (const auto& p : main) a.push_back(p);
        for (const auto& p : tags(9)) a.push_back(p);
        a.push_back(kMarkAtom);
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        return a;
    };
    for (auto r : {Reduction::ExpspaceFG, Reduction::ExpspaceG, Reduction::ExpspaceU}) {
        const bool until = r == Reduction::ExpspaceU;
        for (const auto& c : cases) {
            const Formula th = theta(I, r, c.marks);
            const auto atoms = atomsFor(th);
            std::vector<Letter> tl, hl;
            for (std::size_t i = 0; i < code.size(); ++i) {
                auto names = tags(9);
                names.push_back(code[i]);
                names.push_back(kMarkAtom);
                tl.push_back(letterOf(atoms, names));
                hl.push_back(letterOf(atoms, {code[i], tagAtom(i == 0 ? 1 : 2)}));
            }
            // the until encodings end the code with empty positions
            const Lasso T = until ? makeLasso(atoms, tl, {0}) : makeLasso(atoms, {tl.begin(), tl.end() - 1}, {tl.back()});
            const Lasso H = until ? makeLasso(atoms, hl, {0}) : makeLasso(atoms, {hl.begin(), hl.end() - 1}, {hl.back()});
            const ThtPair M = align(H, T);
            EXPECT_EQ(thtSat(M, 0, th), c.expected) << fragmentTag(r) << " " << print(th);
            if (r == Reduction::ExpspaceFG) EXPECT_EQ(thtSat(M, 0, th), ltlSat(H, th));
        }
    }
}

TEST(Nexptime, NegatedMarkForcesMarkInT)
{
    const Formula f = parse("~u -> u");
    gen::Rng rng(75);
    const std::vector<std::string> atoms{"p", "u"};
    for (int i = 0; i < 300; ++i) {
        const ThtPair m = gen::randomPair(rng, atoms, 3, 3);
        EXPECT_EQ(thtSat(m, 0, f), (m.T.at(0) & 2) != 0);
    }
    const auto pseudo = reductionParts(twoCellRow(1), Reduction::NexptimeFG).pseudo;
    const auto subs = subformulas(pseudo);
    EXPECT_TRUE(std::any_of(subs.begin(), subs.end(), [&](const Formula& g) { return equal(g, f); }));
}

TEST(Nexptime, PseudoOnGoodCode)
{
    // 2x2 grid of one domino type except the last cell
    const auto I = instance({{"a", "a", "a", "a"}, {"a", "a", "a", "a"}}, 1, 0, 1);
    const auto t = solveTiling(I, TilingKind::NexptimeSquare, 2);
    ASSERT_EQ(t.status, TilingStatus::Found);
    const auto cells = squareCode(I, *t.tiling);
    for (auto r : {Reduction::NexptimeFG, Reduction::NexptimeU, Reduction::NexptimeR}) {
        const auto parts = reductionParts(I, r);
        const auto atoms = atomVector(parts.formula);
        const bool finite = r != Reduction::NexptimeFG;
        std::vector<Letter> letters;
        for (const auto& c : cells) {
            auto names = squareTags(I.n);
            names.insert(names.end(), c.begin(), c.end());
            names.push_back(kMarkAtom);
            letters.push_back(letterOf(atoms, names));
        }
        const Lasso T = finite ? makeLasso(atoms, letters, {0}) : makeLasso(atoms, {}, letters);
        EXPECT_TRUE(ltlSat(T, parts.pseudo)) << fragmentTag(r);
        EXPECT_TRUE(ltlSat(T, parts.formula)) << fragmentTag(r);
        // without u at the first position the negated-mark conjunct fails
        auto noU = letters;
        noU[0] &= ~letterOf(atoms, {kMarkAtom});
        const Lasso N = finite ? makeLasso(atoms, noU, {0}) : makeLasso(atoms, {}, noU);
        EXPECT_FALSE(ltlSat(N, parts.pseudo)) << fragmentTag(r);
        // H with one tag per position and no u is a pseudo-tiling code below T
        std::vector<Letter> h;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            auto names = cells[i];
            names.push_back(tagAtom(1));
            h.push_back(letterOf(atoms, names));
        }
        const Lasso H = finite ? makeLasso(atoms, h, {0}) : makeLasso(atoms, {}, h);
        EXPECT_TRUE(thtSat(align(H, T), 0, parts.pseudo)) << fragmentTag(r);
    }
}

TEST(Variants, PseudoOnGoodCodes)
{
    const auto I = twoCellRow(1);
    const auto t = solveTiling(I, TilingKind::ExpspaceRows, 2);
    ASSERT_EQ(t.status, TilingStatus::Found);
    const auto code = rowCode(I, *t.tiling);
    for (auto r : {Reduction::ExpspaceG, Reduction::ExpspaceU}) {
        const auto parts = reductionParts(I, r);
        const auto atoms = atomVector(parts.formula);
        std::vector<Letter> letters;
        for (const auto& c : code) {
            auto names = tags(9);
            names.push_back(c);
            names.push_back(kMarkAtom);
            letters.push_back(letterOf(atoms, names));
        }
        const Lasso T = r == Reduction::ExpspaceU ? makeLasso(atoms, letters, {0})
                                                  : makeLasso(atoms, {letters.begin(), letters.end() - 1}, {letters.back()});
        EXPECT_TRUE(ltlSat(T, parts.pseudo)) << fragmentTag(r);
        EXPECT_TRUE(ltlSat(T, parts.formula)) << fragmentTag(r);
        EXPECT_TRUE(inFragment(encodeVariant(I, fragmentTag(r)), parseFragment(fragmentTag(r))));
    }
}

TEST(Variants, UntilUsesEmptyPositionMarker)
{
    const auto I = twoCellRow(1);
    const Formula f = encodeVariant(I, "THT_2^2(U)");
    std::vector<std::string> all = rowMainAtoms(I);
    for (const auto& t : tags(9)) all.push_back(t);
    all.push_back(kMarkAtom);
    std::vector<Formula> neg;
    for (const auto& p : all) neg.push_back(lnot(atom(p)));
    const Formula eta = conj(neg);
    const auto subs = subformulas(f);
    EXPECT_TRUE(std::any_of(subs.begin(), subs.end(), [&](const Formula& g) { return equal(g, eta); }));
}

TEST(Pspace, TilingWordIsMinimalModel)
{
    const auto I = twoCellRow(2);
    const Formula f = encodePspacePositive(I);
    EXPECT_EQ(measures(f).implicationHeight, 0);
    EXPECT_EQ(measures(f).modalities & ~unsigned(ModX | ModF | ModG), 0u);
    const auto t = solveTiling(I, TilingKind::PspaceRows, 4);
    ASSERT_EQ(t.status, TilingStatus::Found);
    const auto atoms = atomVector(f);
    std::vector<Letter> w;
    for (const auto& row : *t.tiling)
        for (std::size_t j = 0; j < row.size(); ++j) w.push_back(letterOf(atoms, {cellAtom(static_cast<int>(j) + 1, row[j])}));
    const Lasso T = makeLasso(atoms, {}, w);
    EXPECT_TRUE(ltlSat(T, f));
    EXPECT_TRUE(isEquilibrium(T, f).yes);
    const auto v = minimalLtlExists(f, 0, w.size());
    ASSERT_EQ(v.status, MinimalStatus::Exists);
    EXPECT_TRUE(isEquilibrium(*v.model, f).yes);
}

TEST(Pspace, UnsolvableHasNoMinimalModelWithinBounds)
{
    // d_0 ends in color y and nothing starts with y
    const auto I = instance({{"x", "x", "x", "y"}, {"x", "x", "x", "x"}}, 2, 0, 1);
    ASSERT_EQ(solveTiling(I, TilingKind::PspaceRows, 4).status, TilingStatus::None);
    const Formula f = encodePspacePositive(I);
    EXPECT_NE(minimalLtlExists(f, 0, 2, 8).status, MinimalStatus::Exists);
}
