#pragma once

#include "tel/formula.hpp"
#include "tel/lasso.hpp"
#include "tel/measures.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tel {

enum class Status { Consistent, Inconsistent, Unknown };

struct SolveVerdict {
    Status status = Status::Unknown;
    std::optional<Lasso> model;
    std::string method;
    std::string bounds;
};

struct SolveConfig {
    std::size_t supCap = 12;          // largest SUP size enumerated by the THT_1 solver
    std::size_t stemBound = 3;        // lasso bounds of the fallback and model searches
    std::size_t loopBound = 3;
    std::size_t descentCap = 64;      // steps of a descending chain of smaller models
    std::size_t configCap = 200000;   // subset configurations of the almost-empty search
    std::size_t candidateCap = 2000000;
    unsigned jobs = 1;
};

std::string statusText(Status s);

// status=... method=... model=... bounds=...
std::string verdictLine(const SolveVerdict& v);

SolveVerdict solveCon(const Formula& f, const SolveConfig& config = {});

SolveVerdict solveTht1(const Formula& f, const SolveConfig& config = {});
SolveVerdict solveTht1XG(const Formula& f, const SolveConfig& config = {});
SolveVerdict solveThtXF(const Formula& f, const SolveConfig& config = {});
SolveVerdict solveImplOne(const Formula& f, const SolveConfig& config = {});
SolveVerdict solveXUImplOne(const Formula& f, const SolveConfig& config = {});

// almost-empty equilibrium search over subset configurations of the translated automaton;
// complete for formulas whose equilibrium models are all almost-empty
SolveVerdict solveAlmostEmpty(const Formula& f, const SolveConfig& config = {});

SolveVerdict solveFallback(const Formula& f, const SolveConfig& config = {});

enum class MinimalStatus { Exists, None, NoneWithinBounds };

struct MinimalVerdict {
    MinimalStatus status = MinimalStatus::NoneWithinBounds;
    std::optional<Lasso> model;
    bool complete = false;
    std::string bounds;
};

std::string minimalLine(const MinimalVerdict& v);
MinimalVerdict minimalLtlExists(const Formula& f, std::size_t stemBound, std::size_t loopBound,
                                std::size_t descentCap = 64);

// minimal LTL model reached from T by repeatedly stepping to a smaller model;
// none when the step cap binds or the lasso outgrows kDescentWindow
inline constexpr std::size_t kDescentWindow = 64;
std::optional<Lasso> descend(Lasso T, const Formula& f, std::size_t cap, std::size_t* steps = nullptr);

// strongly ultimately periodic lassos fixed by contraction, by size then letters; stops when visit returns true
void forEachContractionNormal(const std::vector<std::string>& atoms, std::size_t maxSize,
                              const std::function<bool(const Lasso&)>& visit);

// dispatch name and complexity tag for a profile
std::string dispatchMethod(const FragmentProfile& p);
std::string complexityTag(const FragmentProfile& p);
std::string classifyLine(const Formula& f);

std::vector<std::string> atomList(const Formula& f);

}  // namespace tel
