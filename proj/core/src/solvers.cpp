#include "tel/solvers.hpp"

#include "tel/automata.hpp"
#include "tel/equilibrium.hpp"
#include "tel/semantics.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace tel {

namespace {

bool only(const FragmentProfile& p, unsigned mods) { return (p.modalities & ~mods) == 0; }

bool xrFamily(const FragmentProfile& p) { return inFamily(p, FragmentSpec{ModX | ModR, std::nullopt, std::nullopt}); }
bool xuFamily(const FragmentProfile& p) { return inFamily(p, FragmentSpec{ModX | ModU, std::nullopt, std::nullopt}); }

SolveVerdict verdict(Status s, std::string method, std::string bounds, std::optional<Lasso> model = std::nullopt)
{
    return SolveVerdict{s, std::move(model), std::move(method), std::move(bounds)};
}

std::size_t letterCount(const std::vector<std::string>& atoms) { return std::size_t{1} << atoms.size(); }

void requireEnumerable(const std::vector<std::string>& atoms)
{
    if (atoms.size() > 16) throw std::length_error("too many atoms for enumeration");
}

}  // namespace

std::vector<std::string> atomList(const Formula& f)
{
    const auto s = atomsOf(f);
    return {s.begin(), s.end()};
}

std::string statusText(Status s)
{
    switch (s) {
    case Status::Consistent: return "consistent";
    case Status::Inconsistent: return "inconsistent";
    case Status::Unknown: return "unknown-within-bounds";
    }
    return "";
}

std::string verdictLine(const SolveVerdict& v)
{
    return "status=" + statusText(v.status) + " method=" + v.method +
           " model=" + (v.model ? inlineText(*v.model) : std::string("none")) + " bounds=" + v.bounds;
}

void forEachContractionNormal(const std::vector<std::string>& atoms, std::size_t maxSize,
                              const std::function<bool(const Lasso&)>& visit)
{
    requireEnumerable(atoms);
    const Letter letters = letterCount(atoms);
    std::set<Lasso> seen;
    std::vector<Letter> prefix;
    std::vector<bool> used(letters, false);
    bool stop = false;
    // prefix of the given length; positions from 2 on carry letters not seen before
    std::function<void(std::size_t, std::size_t)> grow = [&](std::size_t size, std::size_t len) {
        if (stop) return;
        if (prefix.size() == len) {
            for (Letter t = 0; t < letters && !stop; ++t) {
                const Lasso l = supLasso(atoms, prefix, t);
                if (supInfo(l).supSize != size || contraction(l) != l || !seen.insert(l).second) continue;
                stop = visit(l);
            }
            return;
        }
        const bool fresh = prefix.size() >= 2;
        for (Letter a = 0; a < letters && !stop; ++a) {
            if (fresh && used[a]) continue;
            const bool was = used[a];
            used[a] = true;
            prefix.push_back(a);
            grow(size, len);
            prefix.pop_back();
            used[a] = was;
        }
    };
    for (std::size_t size = 1; size <= maxSize && !stop; ++size) {
        // the letters at 0 and 1 may repeat; mark usage from scratch for every size
        std::fill(used.begin(), used.end(), false);
        grow(size, size - 1);
    }
}

std::optional<Lasso> descend(Lasso T, const Formula& f, std::size_t cap, std::size_t* steps)
{
    for (std::size_t k = 0; k <= cap; ++k) {
        if (steps) *steps = k;
        auto h = existsSmallerClassical(T, f);
        if (!h) return T;
        T = normalize(*h);
        if (T.window() > kDescentWindow) return std::nullopt;
    }
    return std::nullopt;
}

SolveVerdict solveTht1XG(const Formula& f, const SolveConfig& config)
{
    const auto p = measures(f);
    if (!only(p, ModX | ModG) || p.temporalHeight > 1) throw FragmentError("formula is not in THT_1(X,G)");
    const auto atoms = atomList(f);
    const std::size_t size = static_cast<std::size_t>(p.size) + 3;
    const std::size_t hereBound = 2 * size;
    const std::string method = p.temporalHeight == 0 ? "ht" : "tht1-xg";
    std::optional<Lasso> found;
    std::size_t visited = 0;
    bool capped = false;
    forEachContractionNormal(atoms, size, [&](const Lasso& T) {
        if (++visited > config.candidateCap) return capped = true;
        if (!ltlSat(T, f)) return false;
        if (existsSmallerSup(T, f, hereBound)) return false;
        found = T;
        return true;
    });
    const std::string bounds = "sup<=" + std::to_string(size) + ",here<=" + std::to_string(hereBound);
    if (found) return verdict(Status::Consistent, method, bounds, found);
    return verdict(capped ? Status::Unknown : Status::Inconsistent, method, bounds);
}

SolveVerdict solveTht1(const Formula& f, const SolveConfig& config)
{
    const auto p = measures(f);
    if (p.temporalHeight > 1) throw FragmentError("formula is not in THT_1");
    const auto atoms = atomList(f);
    const std::size_t needed = 2 + letterCount(atoms);
    const std::size_t size = std::min(needed, config.supCap);
    std::optional<Lasso> found;
    std::size_t visited = 0;
    bool capped = needed > config.supCap;
    forEachContractionNormal(atoms, size, [&](const Lasso& T) {
        if (++visited > config.candidateCap) return capped = true;
        if (!isEquilibriumBoundedTht1(T, f).yes) return false;
        found = T;
        return true;
    });
    const std::string bounds = "sup<=" + std::to_string(size) + "/" + std::to_string(needed);
    if (found) return verdict(Status::Consistent, "tht1-sup", bounds, found);
    return verdict(capped ? Status::Unknown : Status::Inconsistent, "tht1-sup", bounds);
}

SolveVerdict solveAlmostEmpty(const Formula& f, const SolveConfig& config)
{
    const auto atoms = atomList(f);
    requireEnumerable(atoms);
    const auto tr = translateToLtl(f, atoms);
    const BuchiNfa A = ltlToBuchi(land(tr.axiom, tr.formula), tr.atoms);
    const std::size_t n = A.stateCount();
    const std::size_t shift = atoms.size();
    const Letter letters = letterCount(atoms);
    const auto acc = acceptsConstant(A, 0);

    // a configuration holds the states reached on (T,T) and the (state, strict) pairs reached on (H,T)
    using Config = std::vector<bool>;
    struct Node {
        Config c;
        std::size_t parent;
        Letter letter;
    };
    std::vector<Node> nodes;
    std::unordered_set<Config> seen;
    Config init(3 * n, false);
    for (int q : A.initial) {
        init[static_cast<std::size_t>(q)] = true;
        init[n + 2 * static_cast<std::size_t>(q)] = true;
    }
    nodes.push_back({init, 0, 0});
    seen.insert(init);

    auto isEquilibriumHere = [&](const Config& c) {
        bool total = false;
        for (std::size_t q = 0; q < n; ++q) {
            if (c[q] && acc[q]) total = true;
            if (c[n + 2 * q + 1] && acc[q]) return false;
        }
        return total;
    };
    auto model = [&](std::size_t k) {
        std::vector<Letter> prefix;
        for (; k != 0; k = nodes[k].parent) prefix.push_back(nodes[k].letter);
        std::reverse(prefix.begin(), prefix.end());
        return supLasso(atoms, prefix, 0);
    };

    for (std::size_t k = 0; k < nodes.size(); ++k) {
        if (isEquilibriumHere(nodes[k].c))
            return verdict(Status::Consistent, "almost-empty-bfs", "configs=" + std::to_string(nodes.size()), model(k));
        if (nodes.size() > config.configCap) break;
        for (Letter t = 0; t < letters; ++t) {
            Config next(3 * n, false);
            bool any = false;
            const Letter tt = t | (t << shift);
            for (std::size_t q = 0; q < n; ++q) {
                if (!nodes[k].c[q]) continue;
                for (const auto& e : A.out[q])
                    if (e.guard.admits(tt)) any = next[static_cast<std::size_t>(e.to)] = true;
            }
            if (!any) continue;
            for (std::size_t q = 0; q < n; ++q)
                for (int s = 0; s < 2; ++s) {
                    if (!nodes[k].c[n + 2 * q + static_cast<std::size_t>(s)]) continue;
                    for (Letter h = t;; h = (h - 1) & t) {
                        const Letter ht = h | (t << shift);
                        const std::size_t strict = (s || h != t) ? 1 : 0;
                        for (const auto& e : A.out[q])
                            if (e.guard.admits(ht)) next[n + 2 * static_cast<std::size_t>(e.to) + strict] = true;
                        if (h == 0) break;
                    }
                }
            if (!seen.insert(next).second) continue;
            nodes.push_back({std::move(next), k, t});
        }
    }
    const bool exhausted = nodes.size() <= config.configCap;
    return verdict(exhausted ? Status::Inconsistent : Status::Unknown, "almost-empty-bfs",
                   "configs=" + std::to_string(nodes.size()));
}

SolveVerdict solveThtXF(const Formula& f, const SolveConfig& config)
{
    if (!only(measures(f), ModX | ModF)) throw FragmentError("formula is not in THT(X,F)");
    auto v = solveAlmostEmpty(f, config);
    v.method = "tht-xf";
    return v;
}

SolveVerdict solveImplOne(const Formula& f, const SolveConfig& config)
{
    const auto p = measures(f);
    if (p.implicationHeight > 1 || (!xrFamily(p) && p.temporalHeight > 1))
        throw FragmentError("formula is not in THT^1(X,R) or THT_1^1");
    const auto atoms = atomList(f);
    const auto w = emptiness(ltlToBuchi(f, atoms));
    if (!w) return verdict(Status::Inconsistent, "impl1-ltlsat", "exact");
    std::size_t steps = 0;
    if (auto m = descend(*w, f, config.descentCap, &steps))
        return verdict(Status::Consistent, "impl1-ltlsat", "descent=" + std::to_string(steps), m);
    const std::string bounds = "descent>" + std::to_string(config.descentCap) + ",lasso<=" +
                               std::to_string(config.stemBound) + "," + std::to_string(config.loopBound);
    if (atoms.size() * (config.stemBound + config.loopBound) <= kEnumerationBits)
        if (auto m = firstEquilibrium(atoms, f, config.stemBound, config.loopBound, config.jobs))
            return verdict(Status::Consistent, "impl1-ltlsat", bounds, m);
    return verdict(Status::Consistent, "impl1-ltlsat", bounds);
}

SolveVerdict solveXUImplOne(const Formula& f, const SolveConfig& config)
{
    const auto p = measures(f);
    if (p.implicationHeight > 1 || !xuFamily(p)) throw FragmentError("formula is not in THT^1(X,U)");
    const auto atoms = atomList(f);
    std::vector<Formula> empty;
    for (const auto& a : atoms) empty.push_back(lnot(atom(a)));
    const Formula g = land(f, eventually(always(conj(empty))));
    const auto w = emptiness(ltlToBuchi(g, atoms));
    if (!w) return verdict(Status::Inconsistent, "xu-impl1-ltlsat", "exact");
    // below an almost-empty lasso every chain is finite
    std::size_t steps = 0;
    auto m = descend(*w, f, config.descentCap, &steps);
    if (m) return verdict(Status::Consistent, "xu-impl1-ltlsat", "descent=" + std::to_string(steps), m);
    return verdict(Status::Consistent, "xu-impl1-ltlsat", "descent>" + std::to_string(config.descentCap));
}

SolveVerdict solveFallback(const Formula& f, const SolveConfig& config)
{
    const auto atoms = atomList(f);
    std::size_t stem = config.stemBound, loop = config.loopBound;
    while (atoms.size() * (stem + loop) > kEnumerationBits && stem + loop > 1) {
        if (stem >= loop && stem > 0)
            --stem;
        else
            --loop;
    }
    const std::string bounds = "lasso<=" + std::to_string(stem) + "," + std::to_string(loop);
    if (atoms.size() * (stem + loop) > kEnumerationBits) return verdict(Status::Unknown, "fallback", bounds);
    if (auto m = firstEquilibrium(atoms, f, stem, loop, config.jobs))
        return verdict(Status::Consistent, "fallback", bounds, m);
    return verdict(Status::Unknown, "fallback", bounds);
}

std::string dispatchMethod(const FragmentProfile& p)
{
    if (p.temporalHeight == 0) return "ht";
    if (only(p, ModX | ModG) && p.temporalHeight <= 1) return "tht1-xg";
    if (only(p, ModX | ModF)) return "tht-xf";
    if (p.implicationHeight <= 1 && (xrFamily(p) || p.temporalHeight <= 1)) return "impl1-ltlsat";
    if (p.implicationHeight <= 1 && xuFamily(p)) return "xu-impl1-ltlsat";
    if (xuFamily(p)) return "tht-xu-almost-empty";
    if (p.temporalHeight <= 1) return "tht1-sup";
    return "fallback";
}

std::string complexityTag(const FragmentProfile& p)
{
    if (p.temporalHeight == 0) return "Sigma2-complete";
    if (only(p, ModX | ModF)) return "Sigma2-complete";
    if (only(p, ModX | ModG) && p.temporalHeight <= 1) return "Sigma2-complete";
    if (p.temporalHeight <= 1 && p.implicationHeight <= 1) return "NP-complete";
    if (p.implicationHeight <= 1 && (xrFamily(p) || xuFamily(p))) return "PSPACE-complete";
    if (p.temporalHeight <= 1) return "NEXPTIME-complete";
    if (p.implicationHeight == 0) return "PSPACE-hard";
    return "no complete polynomial method";
}

std::string classifyLine(const Formula& f)
{
    const auto p = measures(f);
    return fragmentName(p) + "; " + complexityTag(p) + "; dispatch=" + dispatchMethod(p);
}

SolveVerdict solveCon(const Formula& f, const SolveConfig& config)
{
    const std::string m = dispatchMethod(measures(f));
    if (m == "ht" || m == "tht1-xg") return solveTht1XG(f, config);
    if (m == "tht-xf") return solveThtXF(f, config);
    if (m == "impl1-ltlsat") return solveImplOne(f, config);
    if (m == "xu-impl1-ltlsat") return solveXUImplOne(f, config);
    if (m == "tht-xu-almost-empty") {
        auto v = solveAlmostEmpty(f, config);
        v.method = m;
        return v;
    }
    if (m == "tht1-sup") return solveTht1(f, config);
    return solveFallback(f, config);
}

std::string minimalLine(const MinimalVerdict& v)
{
    std::string s = v.status == MinimalStatus::Exists ? "exists" : v.status == MinimalStatus::None ? "none"
                                                                                                    : "none-within-bounds";
    return "status=" + s + " model=" + (v.model ? inlineText(*v.model) : std::string("none")) +
           " complete=" + (v.complete ? "yes" : "no") + " bounds=" + v.bounds;
}

MinimalVerdict minimalLtlExists(const Formula& f, std::size_t stemBound, std::size_t loopBound, std::size_t descentCap)
{
    const auto p = measures(f);
    const auto atoms = atomList(f);
    MinimalVerdict v;
    v.bounds = "lasso<=" + std::to_string(stemBound) + "," + std::to_string(loopBound);
    const auto w = emptiness(ltlToBuchi(f, atoms));
    if (!w) {
        v.status = MinimalStatus::None;
        v.complete = true;
        return v;
    }
    if (atoms.size() * (stemBound + loopBound) <= kEnumerationBits) {
        for (const Lasso& T : enumerateLassos(atoms, stemBound, loopBound)) {
            if (!ltlSat(T, f) || existsSmallerClassical(T, f)) continue;
            v.status = MinimalStatus::Exists;
            v.model = T;
            return v;
        }
    }
    if (auto m = descend(*w, f, descentCap)) {
        v.status = MinimalStatus::Exists;
        v.model = m;
        v.bounds += ",descent";
        return v;
    }
    // every LTL-satisfiable formula of these fragments has a minimal model
    if ((p.implicationHeight <= 1 && xrFamily(p)) || p.temporalHeight <= 1) {
        v.status = MinimalStatus::Exists;
        v.complete = true;
        return v;
    }
    v.status = MinimalStatus::NoneWithinBounds;
    return v;
}

}  // namespace tel
