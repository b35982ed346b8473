#include "support.hpp"

#include <functional>

namespace tel::gen {

namespace {

Formula grow(Rng& rng, const FormulaShape& shape, int budget)
{
    std::vector<int> choices;  // 0 leaf, 1 unary, 2 binary
    choices.push_back(0);
    if (budget >= 2) choices.push_back(1);
    if (budget >= 3) choices.push_back(2);
    const int kind = choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    if (kind == 0) {
        if (shape.constants && pick(6) == 0) return pick(2) ? top() : bottom();
        return atom(shape.atoms[pick(shape.atoms.size())]);
    }
    if (kind == 1) {
        std::vector<Op> ops;
        if (shape.propositional) ops.push_back(Op::Not);
        if (shape.modalities & ModX) ops.push_back(Op::Next);
        if (shape.modalities & ModF) ops.push_back(Op::Eventually);
        if (shape.modalities & ModG) ops.push_back(Op::Always);
        if (ops.empty()) return grow(rng, shape, 1);
        const Op op = ops[pick(ops.size())];
        Formula a = grow(rng, shape, budget - 1);
        switch (op) {
        case Op::Not: return lnot(a);
        case Op::Next: return next(a);
        case Op::Eventually: return eventually(a);
        default: return always(a);
        }
    }
    std::vector<Op> ops{Op::And, Op::Or};
    if (shape.propositional) ops.push_back(Op::Implies);
    if (shape.modalities & ModU) ops.push_back(Op::Until);
    if (shape.modalities & ModR) ops.push_back(Op::Release);
    const Op op = ops[pick(ops.size())];
    const int left = 1 + static_cast<int>(pick(static_cast<std::size_t>(budget - 2)));
    Formula a = grow(rng, shape, left);
    Formula b = grow(rng, shape, budget - 1 - left);
    switch (op) {
    case Op::And: return land(a, b);
    case Op::Or: return lor(a, b);
    case Op::Implies: return implies(a, b);
    case Op::Until: return until(a, b);
    default: return release(a, b);
    }
}

}  // namespace

Formula randomFormula(Rng& rng, const FormulaShape& shape)
{
    const int budget = std::uniform_int_distribution<int>(1, shape.maxNodes)(rng);
    return grow(rng, shape, budget);
}

Formula randomInFamily(Rng& rng, const FormulaShape& shape, const FragmentSpec& spec, int maxNext, int maxSize,
                       bool strict)
{
    for (;;) {
        Formula f = randomFormula(rng, shape);
        const auto p = measures(f);
        if (p.nextDepth > maxNext || p.size > maxSize) continue;
        if (strict ? inFragment(p, spec) : inFamily(p, spec)) return f;
    }
}

Lasso randomLasso(Rng& rng, const std::vector<std::string>& atoms, std::size_t stemMax, std::size_t loopMax)
{
    const Letter full = fullLetter(atoms.size());
    std::uniform_int_distribution<Letter> letter(0, full);
    const std::size_t s = std::uniform_int_distribution<std::size_t>(0, stemMax)(rng);
    const std::size_t l = std::uniform_int_distribution<std::size_t>(1, loopMax)(rng);
    std::vector<Letter> stem(s), loop(l);
    for (auto& x : stem) x = letter(rng);
    for (auto& x : loop) x = letter(rng);
    return makeLasso(atoms, stem, loop);
}

ThtPair randomPair(Rng& rng, const std::vector<std::string>& atoms, std::size_t stemMax, std::size_t loopMax)
{
    Lasso T = randomLasso(rng, atoms, stemMax, loopMax);
    Lasso H = T;
    const Letter full = fullLetter(atoms.size());
    std::uniform_int_distribution<Letter> letter(0, full);
    const int mode = std::uniform_int_distribution<int>(0, 3)(rng);
    auto shrink = [&](Letter t) {
        if (mode == 0) return t;
        if (mode == 1) return Letter{0};
        return t & letter(rng);
    };
    for (auto& x : H.stem) x = shrink(x);
    for (auto& x : H.loop) x = shrink(x);
    return align(H, T);
}

Lasso randomSup(Rng& rng, const std::vector<std::string>& atoms, std::size_t sizeMax)
{
    const Letter full = fullLetter(atoms.size());
    std::uniform_int_distribution<Letter> letter(0, full);
    const std::size_t size = std::uniform_int_distribution<std::size_t>(1, sizeMax)(rng);
    std::vector<Letter> prefix(size - 1);
    for (auto& x : prefix) x = letter(rng);
    return supLasso(atoms, prefix, letter(rng));
}

std::vector<Formula> allCoreFormulas(const std::vector<std::string>& atoms, int nodes)
{
    std::vector<std::vector<Formula>> by(static_cast<std::size_t>(nodes) + 1);
    for (int n = 1; n <= nodes; ++n) {
        auto& out = by[static_cast<std::size_t>(n)];
        if (n == 1) {
            for (const auto& a : atoms) out.push_back(atom(a));
            out.push_back(bottom());
            continue;
        }
        for (const auto& a : by[static_cast<std::size_t>(n) - 1]) out.push_back(next(a));
        for (int l = 1; l + 1 < n; ++l) {
            for (const auto& a : by[static_cast<std::size_t>(l)]) {
                for (const auto& b : by[static_cast<std::size_t>(n - 1 - l)]) {
                    out.push_back(land(a, b));
                    out.push_back(lor(a, b));
                    out.push_back(implies(a, b));
                    out.push_back(until(a, b));
                    out.push_back(release(a, b));
                }
            }
        }
    }
    return by[static_cast<std::size_t>(nodes)];
}

}  // namespace tel::gen
