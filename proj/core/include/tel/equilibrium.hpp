#pragma once

#include "tel/formula.hpp"
#include "tel/lasso.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace tel {

struct EquilibriumVerdict {
    bool yes = false;
    bool model = false;  // (T,T) satisfies f
    std::optional<Lasso> counterexample;
};

EquilibriumVerdict isEquilibrium(const Lasso& T, const Formula& f);

// T strongly ultimately periodic of size m, f of temporal height at most 1;
// only SUP candidates H of size at most m+|f|+3 are tried
EquilibriumVerdict isEquilibriumBoundedTht1(const Lasso& T, const Formula& f);
std::size_t tht1HereBound(const Lasso& T, const Formula& f);

// positions W = n_0 < ... < n_k, then tail, tail+period, ... all carrying the same pair letter
struct WitnessPattern {
    std::vector<std::size_t> positions;
    std::size_t tail = 0;
    std::size_t period = 1;
};

// clauses are applied at both the (H,T) and the (T,T) level
WitnessPattern witnessPattern(const ThtPair& M, const Formula& f);
ThtPair witnessExtraction(const ThtPair& M, const Formula& f);
ThtPair extract(const ThtPair& M, const WitnessPattern& W);

struct WitnessSet {
    std::vector<std::pair<std::size_t, Formula>> entries;
    std::vector<Formula> fin;
    std::vector<Formula> inf;
    int nextDepth = 0;

    std::size_t greatest() const;
};

WitnessSet witnessSetXU(const Lasso& T, const Formula& f);

// T on positions up to greatest()+nextDepth, empty afterwards
Lasso witnessSetTruncation(const Lasso& T, const WitnessSet& W);

// canonical lassos within the bounds that are equilibrium models, sorted;
// complete only within the bounds
std::vector<Lasso> bruteForceEquilibria(const std::vector<std::string>& atoms, const Formula& f, std::size_t stemBound,
                                        std::size_t loopBound, unsigned jobs = 1);
// earliest equilibrium in enumeration order, independent of jobs
std::optional<Lasso> firstEquilibrium(const std::vector<std::string>& atoms, const Formula& f, std::size_t stemBound,
                                      std::size_t loopBound, unsigned jobs = 1);

// largest atoms*(stem+loop) accepted by the enumerators
inline constexpr std::size_t kEnumerationBits = 24;

}  // namespace tel
