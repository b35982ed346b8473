#include "tel/equilibrium.hpp"

#include "tel/automata.hpp"
#include "tel/measures.hpp"
#include "tel/semantics.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>

namespace tel {

EquilibriumVerdict isEquilibrium(const Lasso& T, const Formula& f)
{
    EquilibriumVerdict v;
    v.model = ltlSat(T, f);
    if (!v.model) return v;
    v.counterexample = existsSmallerHere(T, f);
    v.yes = !v.counterexample;
    return v;
}

std::size_t tht1HereBound(const Lasso& T, const Formula& f)
{
    return supInfo(T).supSize + static_cast<std::size_t>(measures(f).size) + 3;
}

EquilibriumVerdict isEquilibriumBoundedTht1(const Lasso& T, const Formula& f)
{
    if (measures(f).temporalHeight > 1) throw FragmentError("formula is not in THT_1");
    if (!supInfo(T).isSup) throw LassoError("lasso is not strongly ultimately periodic");
    EquilibriumVerdict v;
    v.model = ltlSat(T, f);
    if (!v.model) return v;
    v.counterexample = existsSmallerSup(T, f, tht1HereBound(T, f));
    v.yes = !v.counterexample;
    return v;
}

WitnessPattern witnessPattern(const ThtPair& M, const Formula& f)
{
    if (measures(f).temporalHeight > 1) throw FragmentError("formula is not in THT_1");
    Evaluator ev(f);
    ev.run(M);
    const Compiled& c = ev.compiled();
    const std::size_t n = M.T.window();
    auto first = [&](auto pred) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < n; ++i)
            if (pred(i)) return i;
        return std::nullopt;
    };

    std::set<std::size_t> W{0};
    for (const auto& nd : c.nodes) {
        if (nd.op == Op::Next) W.insert(1);
        const bool until = nd.op == Op::Until || nd.op == Op::Eventually;
        const bool release = nd.op == Op::Release || nd.op == Op::Always;
        if (!until && !release) continue;
        const bool binary = nd.op == Op::Until || nd.op == Op::Release;
        const int a = binary ? nd.a : -1;
        const int b = binary ? nd.b : nd.a;
        const int self = static_cast<int>(&nd - c.nodes.data());
        for (int level : {1, 0}) {
            auto A = [&](std::size_t i) { return a < 0 ? until : ev.value(level, a, i); };
            auto B = [&](std::size_t i) { return ev.value(level, b, i); };
            std::optional<std::size_t> w;
            if (until) {
                if (ev.value(level, self, 0))
                    w = first(B);
                else if (first(B))
                    w = first([&](std::size_t i) { return !A(i); });
            } else {
                if (!ev.value(level, self, 0))
                    w = first([&](std::size_t i) { return !B(i); });
                else if (first([&](std::size_t i) { return !B(i); }))
                    w = first([&](std::size_t i) { return A(i) && B(i); });
            }
            if (w) W.insert(*w);
        }
    }
    auto strictAt = [&](std::size_t i) { return M.H.at(i) != M.T.at(i); };
    if (std::none_of(W.begin(), W.end(), strictAt))
        if (auto i = first(strictAt)) W.insert(*i);

    WitnessPattern p;
    p.positions.assign(W.begin(), W.end());
    p.tail = std::max(p.positions.back() + 1, M.T.stem.size());
    p.period = M.T.loop.size();
    return p;
}

ThtPair extract(const ThtPair& M, const WitnessPattern& W)
{
    std::vector<Letter> h, t;
    for (std::size_t i : W.positions) {
        h.push_back(M.H.at(i));
        t.push_back(M.T.at(i));
    }
    ThtPair out;
    out.H = Lasso{M.H.atoms, h, {M.H.at(W.tail)}};
    out.T = Lasso{M.T.atoms, t, {M.T.at(W.tail)}};
    return out;
}

ThtPair witnessExtraction(const ThtPair& M, const Formula& f) { return extract(M, witnessPattern(M, f)); }

std::size_t WitnessSet::greatest() const
{
    std::size_t g = 0;
    for (const auto& e : entries) g = std::max(g, e.first);
    return g;
}

WitnessSet witnessSetXU(const Lasso& T, const Formula& f)
{
    const auto prof = measures(f);
    if (prof.modalities & ~unsigned(ModX | ModU | ModF)) throw FragmentError("formula is not in THT(X,U)");
    Evaluator ev(f);
    ev.runTotal(T);
    const Compiled& c = ev.compiled();
    const std::size_t s = T.stem.size();
    const std::size_t n = T.window();

    WitnessSet W;
    W.nextDepth = prof.nextDepth;
    W.entries.emplace_back(0, f);
    std::size_t ell = 0;
    std::vector<int> infNodes;
    for (std::size_t k = 0; k < c.nodes.size(); ++k) {
        const auto& nd = c.nodes[k];
        if (nd.op != Op::Until && nd.op != Op::Eventually) continue;
        const int b = nd.op == Op::Until ? nd.b : nd.a;
        bool inLoop = false;
        std::optional<std::size_t> last;
        for (std::size_t i = 0; i < n; ++i) {
            if (!ev.value(0, b, i)) continue;
            if (i >= s) inLoop = true;
            last = i;
        }
        if (inLoop) {
            infNodes.push_back(static_cast<int>(k));
        } else if (last) {
            W.fin.push_back(c.forms[k]);
            W.entries.emplace_back(*last, c.forms[k]);
            ell = std::max(ell, *last);
        }
    }
    // post-order lists subformulas first; reversed, every subformula comes later
    std::reverse(infNodes.begin(), infNodes.end());
    const std::size_t gap = static_cast<std::size_t>(prof.nextDepth);
    std::size_t prev = ell;
    for (int k : infNodes) {
        const auto& nd = c.nodes[static_cast<std::size_t>(k)];
        const int b = nd.op == Op::Until ? nd.b : nd.a;
        std::size_t h = prev + gap + 1;
        while (!ev.value(0, b, h)) ++h;
        W.inf.push_back(c.forms[static_cast<std::size_t>(k)]);
        W.entries.emplace_back(h, c.forms[static_cast<std::size_t>(k)]);
        prev = h;
    }
    return W;
}

Lasso witnessSetTruncation(const Lasso& T, const WitnessSet& W)
{
    std::vector<Letter> prefix;
    const std::size_t end = W.greatest() + static_cast<std::size_t>(W.nextDepth);
    for (std::size_t i = 0; i <= end; ++i) prefix.push_back(T.at(i));
    return supLasso(T.atoms, prefix, 0);
}

namespace {

void guard(const std::vector<std::string>& atoms, std::size_t stemBound, std::size_t loopBound)
{
    if (atoms.size() * (stemBound + loopBound) > kEnumerationBits)
        throw std::length_error("enumeration bounds too large");
}

}  // namespace

std::vector<Lasso> bruteForceEquilibria(const std::vector<std::string>& atoms, const Formula& f, std::size_t stemBound,
                                        std::size_t loopBound, unsigned jobs)
{
    guard(atoms, stemBound, loopBound);
    const auto all = enumerateLassos(atoms, stemBound, loopBound);
    jobs = std::max(1u, jobs);
    std::vector<std::vector<Lasso>> parts(jobs);
    auto work = [&](unsigned j) {
        for (std::size_t i = j; i < all.size(); i += jobs)
            if (isEquilibrium(all[i], f).yes) parts[j].push_back(all[i]);
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j);
        for (auto& t : pool) t.join();
    }
    std::vector<Lasso> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Lasso> firstEquilibrium(const std::vector<std::string>& atoms, const Formula& f, std::size_t stemBound,
                                      std::size_t loopBound, unsigned jobs)
{
    guard(atoms, stemBound, loopBound);
    const auto all = enumerateLassos(atoms, stemBound, loopBound);
    jobs = std::max(1u, jobs);
    std::atomic<std::size_t> best{all.size()};
    auto work = [&](unsigned j) {
        for (std::size_t i = j; i < all.size() && i < best.load(); i += jobs) {
            if (!isEquilibrium(all[i], f).yes) continue;
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            return;
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work, j);
        for (auto& t : pool) t.join();
    }
    if (best.load() == all.size()) return std::nullopt;
    return all[best.load()];
}

}  // namespace tel
