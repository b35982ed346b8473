#pragma once

#include "tel/formula.hpp"
#include "tel/lasso.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tel {

// distinct subformulas in post-order with child indices; root is the last node
struct Compiled {
    struct N {
        Op op;
        int a = -1;
        int b = -1;
        int atom = -1;  // index into atoms for Op::Atom
    };
    std::vector<N> nodes;
    std::vector<Formula> forms;
    std::vector<std::string> atoms;
    int root = -1;

    int indexOf(const Formula& g) const;
};

Compiled compile(const Formula& f);

// formula atom index -> lasso bit; throws when an atom is not declared
std::vector<int> bindAtoms(const Compiled& c, const std::vector<std::string>& lassoAtoms);

class AtomError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// truth tables over one window of an aligned pair, for both the (H,T) and (T,T) levels
class Evaluator {
public:
    explicit Evaluator(Compiled c);
    explicit Evaluator(const Formula& f) : Evaluator(compile(f)) {}

    void run(const ThtPair& m);
    void runTotal(const Lasso& T);
    void run(const Letter* H, const Letter* T, std::size_t stem, std::size_t loop, const std::vector<int>& bits);

    // level 0 is (T,T), level 1 is (H,T)
    bool value(int level, int node, std::size_t pos) const { return tables_[level][node][reduce(pos)] != 0; }
    bool holds(std::size_t pos = 0) const { return value(1, c_.root, pos); }
    bool holdsTotal(std::size_t pos = 0) const { return value(0, c_.root, pos); }
    const Compiled& compiled() const { return c_; }
    std::size_t reduce(std::size_t pos) const
    {
        return pos < stem_ ? pos : stem_ + (pos - stem_) % loop_;
    }

private:
    void runLevel(int level, const Letter* L, const std::vector<int>& bits);

    Compiled c_;
    std::size_t stem_ = 0;
    std::size_t loop_ = 1;
    std::vector<std::vector<std::uint8_t>> tables_[2];
};

bool thtSat(const ThtPair& m, std::size_t i, const Formula& f);
bool ltlSat(const Lasso& T, const Formula& f);
bool ltlSatAt(const Lasso& T, std::size_t i, const Formula& f);

struct LtlTranslation {
    Formula formula;  // tr(f)
    Formula axiom;    // G of the conjunction of p -> p'
    std::vector<std::string> atoms;  // P followed by the primed copies
    std::vector<std::string> base;
};

std::string primedName(const std::string& name, const std::set<std::string>& taken);
LtlTranslation translateToLtl(const Formula& f, const std::vector<std::string>& atoms);
LtlTranslation translateToLtl(const Formula& f);

// merges a pair into one lasso over the doubled atom set of the translation
Lasso encodePair(const ThtPair& m, const LtlTranslation& tr);
ThtPair decodePair(const Lasso& v, const LtlTranslation& tr);

}  // namespace tel
