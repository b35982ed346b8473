#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tel {

using Letter = std::uint64_t;
inline constexpr std::size_t kMaxAtoms = 64;

struct Lasso {
    std::vector<std::string> atoms;
    std::vector<Letter> stem;
    std::vector<Letter> loop;

    Letter at(std::size_t i) const
    {
        return i < stem.size() ? stem[i] : loop[(i - stem.size()) % loop.size()];
    }
    std::size_t window() const { return stem.size() + loop.size(); }
    bool operator==(const Lasso& o) const { return atoms == o.atoms && stem == o.stem && loop == o.loop; }
    bool operator!=(const Lasso& o) const { return !(*this == o); }
    bool operator<(const Lasso& o) const;
};

class LassoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Lasso makeLasso(std::vector<std::string> atoms, std::vector<Letter> stem, std::vector<Letter> loop);

// primitive loop and shortest stem; unique representative of the infinite word
Lasso normalize(const Lasso& l);
bool isCanonical(const Lasso& l);

// unroll to a given stem length and a loop length that is a multiple of the current one
Lasso unroll(const Lasso& l, std::size_t stemLen, std::size_t loopLen);

struct ThtPair {
    Lasso H;
    Lasso T;
    std::size_t stemLen() const { return T.stem.size(); }
    std::size_t loopLen() const { return T.loop.size(); }
};

class ContainmentError : public std::runtime_error {
public:
    ContainmentError(const std::string& what, std::size_t position)
        : std::runtime_error(what), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

ThtPair align(const Lasso& H, const Lasso& T);
ThtPair totalPair(const Lasso& T);
bool strictlyBelow(const Lasso& H, const Lasso& T);
bool below(const Lasso& H, const Lasso& T);

struct SupInfo {
    bool isSup = false;
    std::size_t supSize = 0;
};
SupInfo supInfo(const Lasso& l);

struct AlmostEmptyInfo {
    bool isAlmostEmpty = false;
    std::size_t size = 0;
    std::size_t nonEmptyCount = 0;
};
AlmostEmptyInfo almostEmptyInfo(const Lasso& l);

// strongly ultimately periodic lasso: the given prefix followed by the tail letter forever
Lasso supLasso(std::vector<std::string> atoms, std::vector<Letter> prefix, Letter tail);

Lasso contraction(const Lasso& M);
ThtPair contraction(const ThtPair& M);
bool bisimilar(const Lasso& a, const Lasso& b);
bool bisimilar(const ThtPair& a, const ThtPair& b);

// all canonical lassos over the atoms with stem <= stemBound and 1 <= loop <= loopBound
std::vector<Lasso> enumerateLassos(const std::vector<std::string>& atoms, std::size_t stemBound,
                                   std::size_t loopBound);

Letter fullLetter(std::size_t atomCount);
std::string letterText(const std::vector<std::string>& atoms, Letter a);

// "stem={p}{p,q};loop={}" single-token form and the block form of the file format
std::string inlineText(const Lasso& l);
std::string blockText(const Lasso& l);
std::string pairText(const ThtPair& m);

Lasso parseLasso(const std::string& text);
Lasso parseInlineLasso(const std::string& text, const std::vector<std::string>& atoms);
ThtPair parsePair(const std::string& text);

// reinterpret over a larger atom list (names must be a superset)
Lasso widen(const Lasso& l, const std::vector<std::string>& atoms);

}  // namespace tel
