#include "tel/automata.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace tel {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const
    {
        std::size_t h = v.size();
        for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

struct Expansion {
    Cube cube;
    std::vector<int> next;
    std::uint64_t pending = 0;

    bool operator<(const Expansion& o) const
    {
        return std::tie(cube.must, cube.mustNot, next, pending) <
               std::tie(o.cube.must, o.cube.mustNot, o.next, o.pending);
    }
};

int pos(int node) { return node * 2 + 1; }
int neg(int node) { return node * 2; }

// signed tableau over the subformulas of a compiled formula; a literal is node*2+sign.
// With a T-level evaluator the literals speak about the (H,T) level of a pair whose
// T component is fixed, otherwise they are classical.
class Tableau {
public:
    Tableau(const Compiled& c, std::vector<int> bits, const Evaluator* tlevel)
        : c_(c), bits_(std::move(bits)), t_(tlevel), ev_(c.nodes.size() * 2, -1)
    {
        // only literals reachable from the root need an acceptance condition
        std::vector<char> seen(c_.nodes.size() * 2, 0);
        std::vector<int> stack{pos(c_.root)};
        while (!stack.empty()) {
            const int lit = stack.back();
            stack.pop_back();
            if (seen[lit]) continue;
            seen[lit] = 1;
            const auto& nd = c_.nodes[static_cast<std::size_t>(lit >> 1)];
            const int sign = lit & 1;
            if (nd.op == Op::Not) {
                if (!t_) stack.push_back(nd.a * 2 + (1 - sign));
                continue;
            }
            if (nd.op == Op::Implies) {
                stack.push_back(nd.a * 2 + (1 - sign));
                stack.push_back(nd.b * 2 + sign);
                continue;
            }
            if (nd.a >= 0) stack.push_back(nd.a * 2 + sign);
            if (nd.b >= 0) stack.push_back(nd.b * 2 + sign);
        }
        int k = 0;
        for (std::size_t i = 0; i < c_.nodes.size(); ++i) {
            const Op op = c_.nodes[i].op;
            const int p = pos(static_cast<int>(i)), n = neg(static_cast<int>(i));
            if ((op == Op::Until || op == Op::Eventually) && seen[p]) ev_[p] = k++;
            if ((op == Op::Release || op == Op::Always) && seen[n]) ev_[n] = k++;
        }
        if (k > 64) throw std::length_error("more than 64 eventualities");
        count_ = k;
    }

    int eventualityCount() const { return count_; }
    int rootLiteral() const { return pos(c_.root); }

    std::vector<Expansion> expand(const std::vector<int>& obligations, std::size_t at) const
    {
        Work w;
        w.todo = obligations;
        w.done.assign(c_.nodes.size() * 2, 0);
        std::set<Expansion> out;
        run(std::move(w), at, out);
        return {out.begin(), out.end()};
    }

private:
    struct Work {
        std::vector<int> todo;
        std::vector<std::uint8_t> done;
        Cube cube;
        std::vector<int> next;
        std::uint64_t pending = 0;
    };

    struct Alt {
        std::vector<int> now;
        int next = -1;
        int pend = -1;
    };

    void branch(const Work& w, std::size_t at, std::set<Expansion>& out, std::initializer_list<Alt> alts) const
    {
        for (const Alt& a : alts) {
            Work v = w;
            for (int l : a.now) v.todo.push_back(l);
            if (a.next >= 0) v.next.push_back(a.next);
            if (a.pend >= 0) v.pending |= std::uint64_t{1} << ev_[a.pend];
            run(std::move(v), at, out);
        }
    }

    void run(Work w, std::size_t at, std::set<Expansion>& out) const
    {
        while (!w.todo.empty()) {
            const int lit = w.todo.back();
            w.todo.pop_back();
            if (w.done[lit]) continue;
            w.done[lit] = 1;
            const int k = lit >> 1;
            const bool positive = (lit & 1) != 0;
            const auto& nd = c_.nodes[static_cast<std::size_t>(k)];
            if (t_) {
                const bool tv = t_->value(0, k, at);
                if (positive && !tv) return;
                if (!positive && !tv) continue;
            }
            switch (nd.op) {
            case Op::Atom: {
                const Letter b = Letter{1} << bits_[static_cast<std::size_t>(nd.atom)];
                (positive ? w.cube.must : w.cube.mustNot) |= b;
                if (!w.cube.consistent()) return;
                break;
            }
            case Op::Bottom:
                if (positive) return;
                break;
            case Op::Top:
                if (!positive) return;
                break;
            case Op::Not:
                if (t_) {
                    if (!positive) return;
                } else {
                    w.todo.push_back(positive ? neg(nd.a) : pos(nd.a));
                }
                break;
            case Op::And:
                if (positive) {
                    w.todo.push_back(pos(nd.a));
                    w.todo.push_back(pos(nd.b));
                } else {
                    branch(w, at, out, {Alt{{neg(nd.a)}}, Alt{{neg(nd.b)}}});
                    return;
                }
                break;
            case Op::Or:
                if (positive) {
                    branch(w, at, out, {Alt{{pos(nd.a)}}, Alt{{pos(nd.b)}}});
                    return;
                }
                w.todo.push_back(neg(nd.a));
                w.todo.push_back(neg(nd.b));
                break;
            case Op::Implies:
                if (positive) {
                    branch(w, at, out, {Alt{{neg(nd.a)}}, Alt{{pos(nd.b)}}});
                    return;
                }
                w.todo.push_back(pos(nd.a));
                w.todo.push_back(neg(nd.b));
                break;
            case Op::Next: w.next.push_back(positive ? pos(nd.a) : neg(nd.a)); break;
            case Op::Until:
                if (positive) {
                    branch(w, at, out, {Alt{{pos(nd.b)}}, Alt{{pos(nd.a)}, lit, lit}});
                    return;
                }
                w.todo.push_back(neg(nd.b));
                branch(w, at, out, {Alt{{neg(nd.a)}}, Alt{{}, lit}});
                return;
            case Op::Eventually:
                if (positive) {
                    branch(w, at, out, {Alt{{pos(nd.a)}}, Alt{{}, lit, lit}});
                    return;
                }
                w.todo.push_back(neg(nd.a));
                w.next.push_back(lit);
                break;
            case Op::Release:
                if (positive) {
                    w.todo.push_back(pos(nd.b));
                    branch(w, at, out, {Alt{{pos(nd.a)}}, Alt{{}, lit}});
                    return;
                }
                branch(w, at, out, {Alt{{neg(nd.b)}}, Alt{{neg(nd.a)}, lit, lit}});
                return;
            case Op::Always:
                if (positive) {
                    w.todo.push_back(pos(nd.a));
                    w.next.push_back(lit);
                    break;
                }
                branch(w, at, out, {Alt{{neg(nd.a)}}, Alt{{}, lit, lit}});
                return;
            }
        }
        std::sort(w.next.begin(), w.next.end());
        w.next.erase(std::unique(w.next.begin(), w.next.end()), w.next.end());
        out.insert(Expansion{w.cube, std::move(w.next), w.pending});
    }

    const Compiled& c_;
    std::vector<int> bits_;
    const Evaluator* t_;
    std::vector<int> ev_;
    int count_ = 0;
};

// explicit graph with letters and pending masks on edges
struct Graph {
    struct E {
        int to;
        Letter letter;
        std::uint64_t mask;
    };
    std::vector<std::vector<E>> out;
    std::vector<bool> ok;  // nodes allowed inside an accepting component

    int add(bool nodeOk)
    {
        out.emplace_back();
        ok.push_back(nodeOk);
        return static_cast<int>(out.size()) - 1;
    }
};

struct Run {
    std::vector<Letter> stem;
    std::vector<Letter> loop;
};

using Step = std::pair<int, std::size_t>;  // node, edge index

std::vector<Step> bfs(const Graph& g, const std::vector<int>& sources, const std::vector<int>& comp, int inComp,
                      const std::function<bool(int, const Graph::E&)>& goal)
{
    const std::size_t n = g.out.size();
    std::vector<Step> parent(n, Step{-1, 0});
    std::vector<char> seen(n, 0);
    std::deque<int> q;
    for (int s : sources) {
        if (!seen[s]) {
            seen[s] = 1;
            q.push_back(s);
        }
    }
    while (!q.empty()) {
        const int u = q.front();
        q.pop_front();
        for (std::size_t i = 0; i < g.out[u].size(); ++i) {
            const auto& e = g.out[u][i];
            if (inComp >= 0 && comp[e.to] != inComp) continue;
            if (goal(u, e)) {
                std::vector<Step> path{{u, i}};
                for (int v = u; parent[v].first >= 0; v = parent[v].first) path.push_back(parent[v]);
                std::reverse(path.begin(), path.end());
                return path;
            }
            if (!seen[e.to]) {
                seen[e.to] = 1;
                parent[e.to] = Step{u, i};
                q.push_back(e.to);
            }
        }
    }
    return {};
}

// lasso-shaped accepting run: some reachable nontrivial component of ok nodes whose internal
// edges clear every one of the K pending bits
std::optional<Run> acceptingRun(const Graph& g, const std::vector<int>& init, int K)
{
    const std::size_t n = g.out.size();
    std::vector<std::vector<int>> adj(n);
    for (std::size_t u = 0; u < n; ++u)
        for (const auto& e : g.out[u]) adj[u].push_back(e.to);
    const auto comp = sccIds(adj);
    std::vector<char> reach(n, 0);
    std::deque<int> work;
    for (int s : init)
        if (!reach[s]) {
            reach[s] = 1;
            work.push_back(s);
        }
    while (!work.empty()) {
        const int u = work.front();
        work.pop_front();
        for (int v : adj[u])
            if (!reach[v]) {
                reach[v] = 1;
                work.push_back(v);
            }
    }
    const std::uint64_t all = K >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << K) - 1);
    std::unordered_map<int, std::uint64_t> andMask;
    std::unordered_map<int, bool> nontrivial, allOk;
    for (std::size_t u = 0; u < n; ++u) {
        const int c = comp[u];
        if (!allOk.count(c)) {
            allOk[c] = true;
            andMask[c] = all;
        }
        if (!g.ok[u]) allOk[c] = false;
        for (const auto& e : g.out[u]) {
            if (comp[e.to] != c) continue;
            nontrivial[c] = true;
            andMask[c] &= e.mask;
        }
    }
    int target = -1;
    for (std::size_t u = 0; u < n && target < 0; ++u) {
        const int c = comp[u];
        if (reach[u] && nontrivial[c] && allOk[c] && (andMask[c] & all) == 0) target = static_cast<int>(u);
    }
    if (target < 0) return std::nullopt;
    const int c = comp[target];

    Run r;
    if (std::find(init.begin(), init.end(), target) == init.end()) {
        const auto path = bfs(g, init, comp, -1, [&](int, const Graph::E& e) { return e.to == target; });
        if (path.empty()) return std::nullopt;
        for (const auto& [u, i] : path) r.stem.push_back(g.out[u][i].letter);
    }
    std::vector<Step> cycle;
    std::uint64_t cleared = 0;
    int cur = target;
    auto append = [&](const std::vector<Step>& p) {
        for (const auto& st : p) {
            cycle.push_back(st);
            cleared |= ~g.out[st.first][st.second].mask;
        }
        if (!p.empty()) cur = g.out[p.back().first][p.back().second].to;
    };
    for (int b = 0; b < K; ++b) {
        const std::uint64_t bit = std::uint64_t{1} << b;
        if (cleared & bit) continue;
        append(bfs(g, {cur}, comp, c, [&](int, const Graph::E& e) { return (e.mask & bit) == 0; }));
    }
    if (cycle.empty()) append(bfs(g, {cur}, comp, c, [](int, const Graph::E&) { return true; }));
    if (cur != target) append(bfs(g, {cur}, comp, c, [&](int, const Graph::E& e) { return e.to == target; }));
    for (const auto& [u, i] : cycle) r.loop.push_back(g.out[u][i].letter);
    return r;
}

std::uint64_t stateMask(bool accepting) { return accepting ? 0 : 1; }

Graph graphOf(const BuchiNfa& A)
{
    Graph g;
    for (std::size_t q = 0; q < A.stateCount(); ++q) g.add(true);
    for (std::size_t q = 0; q < A.stateCount(); ++q)
        for (const auto& e : A.out[q])
            if (e.guard.consistent()) g.out[q].push_back({e.to, e.guard.must, stateMask(A.accepting[q])});
    return g;
}

int advance(int counter, int K, std::uint64_t pending)
{
    int j = counter == K ? 0 : counter;
    while (j < K && ((pending >> j) & 1) == 0) ++j;
    return j;
}

Lasso toLasso(const std::vector<std::string>& atoms, const Run& r)
{
    return normalize(makeLasso(atoms, r.stem, r.loop));
}

std::optional<Lasso> smallerSearch(const Lasso& T, const Formula& f, bool tht, std::optional<Letter> frozen,
                                   std::size_t frozenFrom)
{
    const Compiled c = compile(f);
    const auto bits = bindAtoms(c, T.atoms);
    Evaluator ev(c);
    if (tht) ev.runTotal(T);
    const Tableau tab(c, bits, tht ? &ev : nullptr);
    const int K = tab.eventualityCount();
    const std::size_t n = T.window();
    const std::size_t s = T.stem.size();

    Graph g;
    std::unordered_map<std::vector<int>, int, VecHash> ids;  // key: pos, bit, obligations...
    std::vector<std::vector<int>> keys;
    std::unordered_map<std::vector<int>, std::vector<Expansion>, VecHash> cache;
    auto intern = [&](std::vector<int> key) {
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        const int id = g.add(key[1] == 1);
        ids.emplace(key, id);
        keys.push_back(std::move(key));
        return id;
    };
    const int init = intern({0, 0, tab.rootLiteral()});
    for (std::size_t u = 0; u < keys.size(); ++u) {
        const std::vector<int> key = keys[u];
        const std::size_t at = static_cast<std::size_t>(key[0]);
        const int bit = key[1];
        std::vector<int> obligations(key.begin() + 2, key.end());
        std::vector<int> ckey = obligations;
        ckey.push_back(tht ? static_cast<int>(at) : -1);
        auto cit = cache.find(ckey);
        if (cit == cache.end()) cit = cache.emplace(ckey, tab.expand(obligations, at)).first;
        const Letter t = T.at(at);
        const std::size_t succ = at + 1 < n ? at + 1 : s;
        for (const auto& e : cit->second) {
            if ((e.cube.must & ~t) != 0) continue;
            Letter h = e.cube.must;
            if (frozen && at >= frozenFrom) {
                if (!e.cube.admits(*frozen)) continue;
                h = *frozen;
            }
            const int nbit = bit | (h != t ? 1 : 0);
            std::vector<int> nkey{static_cast<int>(succ), nbit};
            nkey.insert(nkey.end(), e.next.begin(), e.next.end());
            const int to = intern(std::move(nkey));
            g.out[u].push_back({to, h, e.pending});
        }
    }
    const auto r = acceptingRun(g, {init}, K);
    if (!r) return std::nullopt;
    return toLasso(T.atoms, *r);
}

}  // namespace

std::size_t BuchiNfa::edgeCount() const
{
    std::size_t k = 0;
    for (const auto& o : out) k += o.size();
    return k;
}

std::vector<int> sccIds(const std::vector<std::vector<int>>& adj)
{
    const int n = static_cast<int>(adj.size());
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<int> stack;
    std::vector<char> on(n, 0);
    std::vector<std::pair<int, std::size_t>> call;
    int counter = 0, comps = 0;
    for (int s = 0; s < n; ++s) {
        if (index[s] != -1) continue;
        index[s] = low[s] = counter++;
        stack.push_back(s);
        on[s] = 1;
        call.emplace_back(s, 0);
        while (!call.empty()) {
            const int v = call.back().first;
            const std::size_t i = call.back().second;
            if (i < adj[v].size()) {
                call.back().second++;
                const int w = adj[v][i];
                if (index[w] == -1) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on[w] = 1;
                    call.emplace_back(w, 0);
                } else if (on[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on[w] = 0;
                    comp[w] = comps;
                } while (w != v);
                ++comps;
            }
            call.pop_back();
            if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[v]);
        }
    }
    return comp;
}

BuchiNfa ltlToBuchi(const Formula& f)
{
    const auto s = atomsOf(f);
    return ltlToBuchi(f, std::vector<std::string>(s.begin(), s.end()));
}

BuchiNfa ltlToBuchi(const Formula& f, const std::vector<std::string>& atoms)
{
    if (atoms.size() > kMaxAtoms) throw std::length_error("too many atoms");
    const Compiled c = compile(f);
    const Tableau tab(c, bindAtoms(c, atoms), nullptr);
    const int K = tab.eventualityCount();

    BuchiNfa A;
    A.atoms = atoms;
    std::unordered_map<std::vector<int>, int, VecHash> ids;  // key: counter, obligations...
    std::vector<std::vector<int>> keys;
    std::unordered_map<std::vector<int>, std::vector<Expansion>, VecHash> cache;
    auto intern = [&](std::vector<int> key) {
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        const int id = static_cast<int>(keys.size());
        ids.emplace(key, id);
        A.out.emplace_back();
        A.accepting.push_back(key[0] == K);
        keys.push_back(std::move(key));
        return id;
    };
    A.initial.push_back(intern({0, tab.rootLiteral()}));
    for (std::size_t u = 0; u < keys.size(); ++u) {
        const std::vector<int> key = keys[u];
        const int counter = key[0];
        std::vector<int> obligations(key.begin() + 1, key.end());
        auto cit = cache.find(obligations);
        if (cit == cache.end()) cit = cache.emplace(obligations, tab.expand(obligations, 0)).first;
        for (const auto& e : cit->second) {
            std::vector<int> nkey{advance(counter, K, e.pending)};
            nkey.insert(nkey.end(), e.next.begin(), e.next.end());
            const int to = intern(std::move(nkey));
            A.out[u].push_back({to, e.cube});
        }
    }
    return A;
}

BuchiNfa kConstruction(const BuchiNfa& A)
{
    BuchiNfa K;
    K.atoms = A.atoms;
    const std::size_t na = A.stateCount();
    auto keyOf = [&](std::size_t qt, std::size_t qh, int bit, int counter) {
        return ((qt * na + qh) * 2 + static_cast<std::size_t>(bit)) * 3 + static_cast<std::size_t>(counter);
    };
    std::unordered_map<std::size_t, int> ids;
    struct Key {
        std::size_t qt, qh;
        int bit, counter;
    };
    std::vector<Key> keys;
    auto intern = [&](std::size_t qt, std::size_t qh, int bit, int counter) {
        const std::size_t k = keyOf(qt, qh, bit, counter);
        auto it = ids.find(k);
        if (it != ids.end()) return it->second;
        const int id = static_cast<int>(keys.size());
        ids.emplace(k, id);
        keys.push_back({qt, qh, bit, counter});
        K.out.emplace_back();
        K.accepting.push_back(counter == 2 && bit == 1);
        return id;
    };
    for (int qt : A.initial)
        for (int qh : A.initial) K.initial.push_back(intern(qt, qh, 0, 0));
    for (std::size_t u = 0; u < keys.size(); ++u) {
        const Key k = keys[u];
        int c = k.counter == 2 ? 0 : k.counter;
        if (c == 0 && A.accepting[k.qt]) c = 1;
        if (c == 1 && A.accepting[k.qh]) c = 2;
        for (const auto& et : A.out[k.qt]) {
            if (!et.guard.consistent()) continue;
            for (const auto& eh : A.out[k.qh]) {
                if (!eh.guard.consistent()) continue;
                const Cube weak{et.guard.must | eh.guard.must, et.guard.mustNot};
                if (!weak.consistent()) continue;
                const int to = intern(static_cast<std::size_t>(et.to), static_cast<std::size_t>(eh.to), k.bit, c);
                K.out[u].push_back({to, weak});
                for (std::size_t x = 0; x < A.atoms.size(); ++x) {
                    const Letter b = Letter{1} << x;
                    if ((weak.must & b) || (weak.mustNot & b)) continue;
                    const int sto = intern(static_cast<std::size_t>(et.to), static_cast<std::size_t>(eh.to), 1, c);
                    K.out[u].push_back({sto, Cube{weak.must | b, weak.mustNot}});
                }
            }
        }
    }
    return K;
}

bool lassoMembership(const BuchiNfa& A, const Lasso& L)
{
    const Lasso W = widen(L, A.atoms);
    const std::size_t n = W.window();
    const std::size_t s = W.stem.size();
    Graph g;
    const std::size_t na = A.stateCount();
    for (std::size_t i = 0; i < na * n; ++i) g.add(true);
    for (std::size_t q = 0; q < na; ++q) {
        for (std::size_t at = 0; at < n; ++at) {
            const std::size_t succ = at + 1 < n ? at + 1 : s;
            const Letter a = W.at(at);
            for (const auto& e : A.out[q])
                if (e.guard.admits(a))
                    g.out[q * n + at].push_back(
                        {static_cast<int>(static_cast<std::size_t>(e.to) * n + succ), a, stateMask(A.accepting[q])});
        }
    }
    std::vector<int> init;
    for (int q : A.initial) init.push_back(static_cast<int>(static_cast<std::size_t>(q) * n));
    return acceptingRun(g, init, 1).has_value();
}

std::optional<Lasso> emptiness(const BuchiNfa& A)
{
    const auto r = acceptingRun(graphOf(A), A.initial, 1);
    if (!r) return std::nullopt;
    return toLasso(A.atoms, *r);
}

std::vector<bool> acceptsConstant(const BuchiNfa& A, Letter a)
{
    const std::size_t n = A.stateCount();
    std::vector<std::vector<int>> adj(n), rev(n);
    for (std::size_t q = 0; q < n; ++q)
        for (const auto& e : A.out[q])
            if (e.guard.admits(a)) {
                adj[q].push_back(e.to);
                rev[static_cast<std::size_t>(e.to)].push_back(static_cast<int>(q));
            }
    const auto comp = sccIds(adj);
    std::map<int, bool> good;
    for (std::size_t q = 0; q < n; ++q) {
        if (!A.accepting[q]) continue;
        for (int t : adj[q])
            if (comp[static_cast<std::size_t>(t)] == comp[q]) good[comp[q]] = true;
    }
    std::vector<bool> res(n, false);
    std::deque<int> work;
    for (std::size_t q = 0; q < n; ++q)
        if (good.count(comp[q])) {
            res[q] = true;
            work.push_back(static_cast<int>(q));
        }
    while (!work.empty()) {
        const int q = work.front();
        work.pop_front();
        for (int p : rev[static_cast<std::size_t>(q)])
            if (!res[static_cast<std::size_t>(p)]) {
                res[static_cast<std::size_t>(p)] = true;
                work.push_back(p);
            }
    }
    return res;
}

std::string dump(const BuchiNfa& A)
{
    std::ostringstream os;
    os << "atoms:";
    for (const auto& a : A.atoms) os << ' ' << a;
    os << "\nstates: " << A.stateCount() << "\ninitial:";
    for (int q : A.initial) os << ' ' << q;
    os << "\naccepting:";
    for (std::size_t q = 0; q < A.stateCount(); ++q)
        if (A.accepting[q]) os << ' ' << q;
    os << '\n';
    for (std::size_t q = 0; q < A.stateCount(); ++q) {
        for (const auto& e : A.out[q]) {
            os << q << " -> " << e.to << " [";
            bool first = true;
            for (std::size_t x = 0; x < A.atoms.size(); ++x) {
                const Letter b = Letter{1} << x;
                if (!(e.guard.must & b) && !(e.guard.mustNot & b)) continue;
                if (!first) os << ',';
                first = false;
                if (e.guard.mustNot & b) os << '!';
                os << A.atoms[x];
            }
            os << "]\n";
        }
    }
    return os.str();
}

std::optional<Lasso> existsSmallerHere(const Lasso& T, const Formula& f)
{
    return smallerSearch(T, f, true, std::nullopt, 0);
}

std::optional<Lasso> existsSmallerClassical(const Lasso& T, const Formula& f)
{
    return smallerSearch(T, f, false, std::nullopt, 0);
}

std::optional<Lasso> existsSmallerSup(const Lasso& T, const Formula& f, std::size_t bound)
{
    const auto info = supInfo(T);
    if (!info.isSup) throw LassoError("lasso is not strongly ultimately periodic");
    if (bound == 0) return std::nullopt;
    const std::size_t from = bound - 1;
    const std::size_t stemLen = std::max(from, info.supSize - 1);
    const Lasso U = unroll(T, stemLen, 1);
    Letter common = U.loop[0];
    for (std::size_t i = from; i < stemLen; ++i) common &= U.stem[i];
    for (Letter c = common;; c = (c - 1) & common) {
        if (auto h = smallerSearch(U, f, true, c, from)) return h;
        if (c == 0) break;
    }
    return std::nullopt;
}

std::optional<Lasso> existsSmallerViaTranslation(const Lasso& T, const Formula& f)
{
    const auto tr = translateToLtl(f, T.atoms);
    const BuchiNfa A = ltlToBuchi(land(tr.axiom, tr.formula), tr.atoms);
    const std::size_t k = T.atoms.size();
    const Letter full = fullLetter(k);
    const std::size_t n = T.window();
    const std::size_t s = T.stem.size();
    const std::size_t na = A.stateCount();
    Graph g;
    auto id = [&](std::size_t q, std::size_t at, int bit) {
        return static_cast<int>((q * n + at) * 2 + static_cast<std::size_t>(bit));
    };
    for (std::size_t i = 0; i < na * n * 2; ++i) g.add(i % 2 == 1);
    for (std::size_t q = 0; q < na; ++q) {
        for (std::size_t at = 0; at < n; ++at) {
            const Letter t = T.at(at);
            const std::size_t succ = at + 1 < n ? at + 1 : s;
            for (const auto& e : A.out[q]) {
                const Letter mT = (e.guard.must >> k) & full, nT = (e.guard.mustNot >> k) & full;
                const Letter mH = e.guard.must & full, nH = e.guard.mustNot & full;
                if ((t & mT) != mT || (t & nT) != 0 || (mH & ~t) != 0 || (mH & nH) != 0) continue;
                for (int bit = 0; bit < 2; ++bit) {
                    const std::uint64_t mask = stateMask(A.accepting[q]);
                    if (mH != t)
                        g.out[static_cast<std::size_t>(id(q, at, bit))].push_back(
                            {id(static_cast<std::size_t>(e.to), succ, 1), mH, mask});
                    if ((nH & t) == 0)
                        g.out[static_cast<std::size_t>(id(q, at, bit))].push_back(
                            {id(static_cast<std::size_t>(e.to), succ, bit), t, mask});
                }
            }
        }
    }
    std::vector<int> init;
    for (int q : A.initial) init.push_back(id(static_cast<std::size_t>(q), 0, 0));
    const auto r = acceptingRun(g, init, 1);
    if (!r) return std::nullopt;
    return toLasso(T.atoms, *r);
}

}  // namespace tel
