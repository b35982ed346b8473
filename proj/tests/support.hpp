#pragma once

#include "tel/formula.hpp"
#include "tel/lasso.hpp"
#include "tel/measures.hpp"

#include <random>
#include <string>
#include <vector>

namespace tel::gen {

using Rng = std::mt19937_64;

struct FormulaShape {
    std::vector<std::string> atoms{"p", "q"};
    unsigned modalities = ModAll;
    bool propositional = true;  // allow Not, Implies, And, Or
    bool constants = true;
    int maxNodes = 8;
};

// random surface formula with at most maxNodes nodes
Formula randomFormula(Rng& rng, const FormulaShape& shape);

// rejection sampling until the formula lies in the given family (F as U, G as R)
// with the given next depth and distinct-subformula size limits
Formula randomInFamily(Rng& rng, const FormulaShape& shape, const FragmentSpec& spec, int maxNext, int maxSize,
                       bool strict = false);

Lasso randomLasso(Rng& rng, const std::vector<std::string>& atoms, std::size_t stemMax, std::size_t loopMax);
ThtPair randomPair(Rng& rng, const std::vector<std::string>& atoms, std::size_t stemMax, std::size_t loopMax);
Lasso randomSup(Rng& rng, const std::vector<std::string>& atoms, std::size_t sizeMax);

// every formula over the core grammar with exactly the given number of nodes
std::vector<Formula> allCoreFormulas(const std::vector<std::string>& atoms, int nodes);

}  // namespace tel::gen
