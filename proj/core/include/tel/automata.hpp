#pragma once

#include "tel/formula.hpp"
#include "tel/lasso.hpp"
#include "tel/semantics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tel {

// conjunction of literals: every bit of must present, every bit of mustNot absent
struct Cube {
    Letter must = 0;
    Letter mustNot = 0;
    bool admits(Letter a) const { return (a & must) == must && (a & mustNot) == 0; }
    bool consistent() const { return (must & mustNot) == 0; }
};

// state-based Büchi automaton; edges carry cube guards over the atom list
struct BuchiNfa {
    struct Edge {
        int to;
        Cube guard;
    };
    std::vector<std::string> atoms;
    std::vector<std::vector<Edge>> out;
    std::vector<int> initial;
    std::vector<bool> accepting;

    std::size_t stateCount() const { return out.size(); }
    std::size_t edgeCount() const;
};

BuchiNfa ltlToBuchi(const Formula& f);
BuchiNfa ltlToBuchi(const Formula& f, const std::vector<std::string>& atoms);

// words T of L(A) with some H strictly below T also in L(A)
BuchiNfa kConstruction(const BuchiNfa& A);

bool lassoMembership(const BuchiNfa& A, const Lasso& L);
std::optional<Lasso> emptiness(const BuchiNfa& A);

// states from which the constant word a^omega is accepted
std::vector<bool> acceptsConstant(const BuchiNfa& A, Letter a);

std::string dump(const BuchiNfa& A);

// strongly connected components of a graph given by adjacency lists
std::vector<int> sccIds(const std::vector<std::vector<int>>& adj);

// H strictly below T with (H,T) a THT model of f
std::optional<Lasso> existsSmallerHere(const Lasso& T, const Formula& f);

// H strictly below T with H an LTL model of f
std::optional<Lasso> existsSmallerClassical(const Lasso& T, const Formula& f);

// as existsSmallerHere, restricted to strongly ultimately periodic H of size at most bound;
// T must be strongly ultimately periodic
std::optional<Lasso> existsSmallerSup(const Lasso& T, const Formula& f, std::size_t bound);

// same question answered through the LTL translation and an explicit automaton
std::optional<Lasso> existsSmallerViaTranslation(const Lasso& T, const Formula& f);

}  // namespace tel
