#include "tel/tiling.hpp"

#include "tel/measures.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace tel {

namespace {

using Names = std::vector<std::string>;

std::vector<std::string> words(const std::string& line)
{
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::size_t toIndex(const std::string& s, const std::string& what)
{
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used != s.size() || v < 0) throw TilingFormatError("bad " + what + ": " + s);
        return static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
        throw TilingFormatError("bad " + what + ": " + s);
    }
}

}  // namespace

void validate(const TilingInstance& I)
{
    if (I.dominoes.empty()) throw TilingFormatError("no domino types");
    if (I.n < 1) throw TilingFormatError("n must be positive");
    if (I.init >= I.dominoes.size()) throw TilingFormatError("init is not a domino type");
    if (I.final >= I.dominoes.size()) throw TilingFormatError("final is not a domino type");
    const std::set<std::string> colors(I.colors.begin(), I.colors.end());
    for (const auto& d : I.dominoes)
        for (const auto* c : {&d.down, &d.left, &d.up, &d.right})
            if (!colors.count(*c)) throw TilingFormatError("unknown color: " + *c);
}

std::string instanceText(const TilingInstance& I)
{
    std::ostringstream os;
    os << "colors:";
    for (const auto& c : I.colors) os << ' ' << c;
    os << '\n';
    for (const auto& d : I.dominoes) os << "domino: " << d.down << ' ' << d.left << ' ' << d.up << ' ' << d.right << '\n';
    os << "n: " << I.n << '\n' << "init: " << I.init << '\n' << "final: " << I.final << '\n';
    return os.str();
}

TilingInstance parseInstance(const std::string& text)
{
    TilingInstance I;
    bool haveN = false, haveInit = false, haveFinal = false;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto colon = line.find(':');
        if (colon == std::string::npos) {
            if (!words(line).empty()) throw TilingFormatError("expected key: value, got: " + line);
            continue;
        }
        const auto key = words(line.substr(0, colon));
        const auto val = words(line.substr(colon + 1));
        if (key.size() != 1) throw TilingFormatError("bad key in: " + line);
        const std::string& k = key[0];
        if (k == "colors") {
            I.colors.insert(I.colors.end(), val.begin(), val.end());
        } else if (k == "domino") {
            if (val.size() != 4) throw TilingFormatError("domino needs down left up right: " + line);
            I.dominoes.push_back({val[0], val[1], val[2], val[3]});
        } else if (k == "n" || k == "init" || k == "final") {
            if (val.size() != 1) throw TilingFormatError("one value expected: " + line);
            const std::size_t v = toIndex(val[0], k);
            if (k == "n") I.n = static_cast<int>(v), haveN = true;
            if (k == "init") I.init = v, haveInit = true;
            if (k == "final") I.final = v, haveFinal = true;
        } else {
            throw TilingFormatError("unknown key: " + k);
        }
    }
    if (!haveN || !haveInit || !haveFinal) throw TilingFormatError("n, init and final are required");
    validate(I);
    return I;
}

std::string kindName(TilingKind k)
{
    switch (k) {
    case TilingKind::ExpspaceRows: return "expspace-rows-2^n";
    case TilingKind::NexptimeSquare: return "nexptime-square-2^n";
    case TilingKind::PspaceRows: return "pspace-rows-n";
    }
    return "";
}

TilingKind parseKind(const std::string& name)
{
    for (auto k : {TilingKind::ExpspaceRows, TilingKind::NexptimeSquare, TilingKind::PspaceRows})
        if (kindName(k) == name) return k;
    throw std::invalid_argument("unknown tiling kind: " + name);
}

std::size_t tilingWidth(const TilingInstance& I, TilingKind kind)
{
    if (kind == TilingKind::PspaceRows) return static_cast<std::size_t>(I.n);
    return std::size_t{1} << I.n;
}

bool isTiling(const TilingInstance& I, TilingKind kind, const Tiling& f, bool normalize)
{
    const std::size_t W = tilingWidth(I, kind);
    if (f.empty()) return false;
    if (kind == TilingKind::NexptimeSquare && f.size() != W) return false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i].size() != W) return false;
        for (std::size_t j = 0; j < W; ++j) {
            if (f[i][j] >= I.dominoes.size()) return false;
            const Domino& d = I.dominoes[f[i][j]];
            if (j + 1 < W && d.right != I.dominoes[f[i][j + 1]].left) return false;
            if (i + 1 < f.size() && d.up != I.dominoes[f[i + 1][j]].down) return false;
            const bool last = i + 1 == f.size() && j + 1 == W;
            if (normalize && !last && f[i][j] == I.final) return false;
        }
    }
    return f[0][0] == I.init && f.back()[W - 1] == I.final;
}

namespace {

using Row = std::vector<std::size_t>;

// rows with matching horizontal edges; under normalization d_final only as a last cell
std::vector<Row> candidateRows(const TilingInstance& I, std::size_t W, bool normalize)
{
    std::vector<Row> out;
    Row r;
    auto rec = [&](auto&& self) -> void {
        if (r.size() == W) {
            out.push_back(r);
            return;
        }
        for (std::size_t d = 0; d < I.dominoes.size(); ++d) {
            if (!r.empty() && I.dominoes[r.back()].right != I.dominoes[d].left) continue;
            if (normalize && d == I.final && r.size() + 1 < W) continue;
            r.push_back(d);
            self(self);
            r.pop_back();
        }
    };
    rec(rec);
    return out;
}

bool stacks(const TilingInstance& I, const Row& below, const Row& above)
{
    for (std::size_t j = 0; j < below.size(); ++j)
        if (I.dominoes[below[j]].up != I.dominoes[above[j]].down) return false;
    return true;
}

}  // namespace

TilingOutcome solveTiling(const TilingInstance& I, TilingKind kind, std::size_t rowCap, bool normalize)
{
    validate(I);
    const std::size_t W = tilingWidth(I, kind);
    const bool square = kind == TilingKind::NexptimeSquare;
    TilingOutcome out;
    if (rowCap == 0 || (square && W > rowCap)) {
        out.status = TilingStatus::CapReached;
        return out;
    }
    const auto rows = candidateRows(I, W, normalize);
    auto terminal = [&](const Row& r) { return r.back() == I.final; };
    // under normalization a row ending in d_final is the last row
    auto extendable = [&](const Row& r) { return !(normalize && terminal(r)); };

    // node = (depth, row); the square kind needs the depth, the others merge it
    struct Node {
        std::size_t row;
        std::size_t depth;
        int parent;
    };
    std::vector<Node> nodes;
    std::map<std::pair<std::size_t, std::size_t>, int> seen;
    std::deque<int> queue;
    auto push = [&](std::size_t row, std::size_t depth, int parent) {
        const auto key = std::make_pair(square ? depth : 0, row);
        if (seen.count(key)) return;
        seen.emplace(key, static_cast<int>(nodes.size()));
        queue.push_back(static_cast<int>(nodes.size()));
        nodes.push_back({row, depth, parent});
    };
    for (std::size_t k = 0; k < rows.size(); ++k)
        if (rows[k][0] == I.init) push(k, 1, -1);

    bool capped = false;
    while (!queue.empty()) {
        const int id = queue.front();
        queue.pop_front();
        const Node nd = nodes[static_cast<std::size_t>(id)];
        const Row& r = rows[nd.row];
        if (terminal(r) && (!square || nd.depth == W)) {
            Tiling f;
            for (int c = id; c >= 0; c = nodes[static_cast<std::size_t>(c)].parent)
                f.push_back(rows[nodes[static_cast<std::size_t>(c)].row]);
            std::reverse(f.begin(), f.end());
            out.status = TilingStatus::Found;
            out.tiling = std::move(f);
            return out;
        }
        if (!extendable(r) || (square && nd.depth == W)) continue;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (!stacks(I, r, rows[k])) continue;
            if (nd.depth == rowCap) {
                capped = true;
                break;
            }
            push(k, nd.depth + 1, id);
        }
    }
    out.status = capped ? TilingStatus::CapReached : TilingStatus::None;
    return out;
}

std::string statusLabel(const TilingOutcome& o)
{
    switch (o.status) {
    case TilingStatus::Found: return "yes";
    case TilingStatus::None: return "no";
    case TilingStatus::CapReached: return "unknown(cap)";
    }
    return "";
}

std::string dominoAtom(std::size_t d) { return "d_" + std::to_string(d); }
std::string numAtom(int i, int b) { return "num_" + std::to_string(i) + "_" + std::to_string(b); }
std::string tagAtom(int i) { return "tag_" + std::to_string(i); }
std::string rowBitAtom(int i, int b) { return "r_" + std::to_string(i) + "_" + std::to_string(b); }
std::string colBitAtom(int i, int b) { return "c_" + std::to_string(i) + "_" + std::to_string(b); }
std::string barAtom(char axis, int i, int b)
{
    return std::string("bar") + axis + "_" + std::to_string(i) + "_" + std::to_string(b);
}
std::string cellAtom(int i, std::size_t d) { return "cell_" + std::to_string(i) + "_" + std::to_string(d); }

std::string fragmentTag(Reduction r)
{
    switch (r) {
    case Reduction::ExpspaceFG: return "THT_2^1(F,G)";
    case Reduction::ExpspaceG: return "THT_2^2(G)";
    case Reduction::ExpspaceU: return "THT_2^2(U)";
    case Reduction::NexptimeFG: return "THT_1^2(F,G)";
    case Reduction::NexptimeU: return "THT_1^2(U)";
    case Reduction::NexptimeR: return "THT_1^2(R)";
    case Reduction::PspacePositive: return "THT^0(X,F,G)";
    }
    return "";
}

TilingKind reductionKind(Reduction r)
{
    switch (r) {
    case Reduction::ExpspaceFG:
    case Reduction::ExpspaceG:
    case Reduction::ExpspaceU: return TilingKind::ExpspaceRows;
    case Reduction::NexptimeFG:
    case Reduction::NexptimeU:
    case Reduction::NexptimeR: return TilingKind::NexptimeSquare;
    case Reduction::PspacePositive: return TilingKind::PspaceRows;
    }
    return TilingKind::ExpspaceRows;
}

Reduction parseReduction(const std::string& fragment)
{
    for (auto r : {Reduction::ExpspaceFG, Reduction::ExpspaceG, Reduction::ExpspaceU, Reduction::NexptimeFG,
                   Reduction::NexptimeU, Reduction::NexptimeR, Reduction::PspacePositive})
        if (fragmentTag(r) == fragment) return r;
    throw std::invalid_argument("no reduction for fragment: " + fragment);
}

std::vector<std::string> rowMainAtoms(const TilingInstance& I)
{
    Names out;
    for (std::size_t d = 0; d < I.dominoes.size(); ++d) out.push_back(dominoAtom(d));
    out.push_back(kDollarAtom);
    for (int i = 1; i <= I.n; ++i)
        for (int b = 0; b <= 1; ++b) out.push_back(numAtom(i, b));
    return out;
}

namespace {

Formula A(const std::string& s) { return atom(s); }

std::vector<Formula> atomsOfNames(const Names& s)
{
    std::vector<Formula> out;
    for (const auto& n : s) out.push_back(A(n));
    return out;
}

Formula anyOf(const Names& s) { return disj(atomsOfNames(s)); }
Formula allOf(const Names& s) { return conj(atomsOfNames(s)); }

Names minus(const Names& s, const Names& drop)
{
    Names out;
    for (const auto& x : s)
        if (std::find(drop.begin(), drop.end(), x) == drop.end()) out.push_back(x);
    return out;
}

Names plus(Names s, const Names& more)
{
    for (const auto& x : more)
        if (std::find(s.begin(), s.end(), x) == s.end()) s.push_back(x);
    return s;
}

// exactly one atom of s holds
Formula exactlyOne(const Names& s)
{
    std::vector<Formula> parts;
    for (const auto& p : s) {
        std::vector<Formula> c{A(p)};
        for (const auto& q : s)
            if (q != p) c.push_back(lnot(A(q)));
        parts.push_back(conj(c));
    }
    return disj(parts);
}

// p & p' over ordered pairs of distinct atoms
std::vector<Formula> distinctPairs(const Names& s)
{
    std::vector<Formula> out;
    for (const auto& p : s)
        for (const auto& q : s)
            if (p != q) out.push_back(land(A(p), A(q)));
    return out;
}

// exponential-row encodings over P_main = dominoes, dollar, num bits
class RowEncoding {
public:
    RowEncoding(const TilingInstance& I, Reduction r) : I_(I), r_(r)
    {
        main_ = rowMainAtoms(I);
        for (std::size_t d = 0; d < I.dominoes.size(); ++d) delta_.push_back(dominoAtom(d));
        for (int i = 1; i <= I.n; ++i)
            for (int b = 0; b <= 1; ++b) num_.push_back(numAtom(i, b));
        for (int t = 1; t <= 9; ++t) tags_.push_back(tagAtom(t));
        all_ = plus(plus(main_, tags_), {kMarkAtom});
        u_ = A(kMarkAtom);
        dfinal_ = dominoAtom(I.final);
        dinit_ = dominoAtom(I.init);
    }

    Formula pseudo() const
    {
        const Formula dollar = A(kDollarAtom);
        const Formula fullTags = land(u_, allOf(tags_));
        if (r_ == Reduction::ExpspaceFG) {
            return conj({always(eventually(u_)), dollar, always(exactlyOne(main_)), eventually(A(dfinal_)),
                         always(anyOf(tags_)),
                         implies(lor(u_, eventually(disj(distinctPairs(tags_)))), always(fullTags))});
        }
        if (r_ == Reduction::ExpspaceG) {
            return conj({dollar, always(exactlyOne(main_)), lnot(always(anyOf(minus(main_, {dfinal_})))),
                         implies(lnot(u_), u_), always(anyOf(tags_)),
                         always(implies(disj(distinctPairs(tags_)), u_)), always(implies(u_, always(fullTags)))});
        }
        std::vector<Formula> somePair;
        for (const auto& pq : distinctPairs(tags_)) somePair.push_back(until(top(), pq));
        return conj({dollar, until(exactlyOne(main_), empty()),
                     lnot(until(anyOf(minus(main_, {dfinal_})), empty())), until(anyOf(tags_), empty()),
                     implies(until(anyOf(all_), disj(somePair)), u_), implies(lnot(u_), u_),
                     implies(until(anyOf(all_), u_), until(fullTags, empty()))});
    }

    // theta(i_1|P_1, ..., i_k|P_k); nullopt when some P_j is empty
    std::optional<Formula> theta(const std::vector<Mark>& marks) const
    {
        for (const auto& m : marks)
            if (m.allowed.empty()) return std::nullopt;
        Names used;
        for (const auto& m : marks) used.push_back(tagAtom(m.tag));
        const Names unused = minus(tags_, used);
        auto t = [&](std::size_t j) { return A(tagAtom(marks[j].tag)); };
        const std::size_t k = marks.size();

        if (r_ == Reduction::ExpspaceFG) {
            std::vector<Formula> psiParts;
            for (const auto& p : tags_) psiParts.push_back(always(A(p)));
            const Formula psi = conj(psiParts);
            std::vector<Formula> parts;
            std::vector<Formula> other;
            for (const auto& p : unused) other.push_back(eventually(A(p)));
            if (!other.empty()) parts.push_back(implies(disj(other), psi));
            for (std::size_t j = 0; j < k; ++j) parts.push_back(eventually(t(j)));
            std::vector<Formula> wrong;
            for (std::size_t j = 0; j < k; ++j)
                for (const auto& p : minus(main_, marks[j].allowed)) wrong.push_back(eventually(land(t(j), A(p))));
            if (!wrong.empty()) parts.push_back(implies(disj(wrong), psi));
            std::vector<Formula> order;
            for (std::size_t rr = 0; rr < k; ++rr)
                for (std::size_t s = 0; s < rr; ++s) order.push_back(eventually(land(t(rr), eventually(t(s)))));
            if (!order.empty()) parts.push_back(implies(disj(order), psi));
            return conj(parts);
        }
        if (r_ == Reduction::ExpspaceG) {
            std::vector<Formula> parts;
            for (const auto& p : unused) parts.push_back(always(implies(A(p), u_)));
            for (std::size_t j = 0; j < k; ++j) parts.push_back(implies(always(implies(t(j), u_)), u_));
            for (std::size_t j = 0; j < k; ++j)
                parts.push_back(always(lor(implies(t(j), u_), anyOf(marks[j].allowed))));
            for (std::size_t j = 0; j < k; ++j) {
                std::vector<Formula> later;
                for (std::size_t rr = j; rr < k; ++rr) later.push_back(t(rr));
                parts.push_back(always(implies(t(j), always(disj(later)))));
            }
            return conj(parts);
        }
        std::vector<Formula> order;
        for (std::size_t j = 0; j + 1 < k; ++j) order.push_back(follows(t(j), t(j + 1)));
        std::vector<Formula> broken;
        for (const auto& p : unused) broken.push_back(somewhere(A(p)));
        for (const auto& p : tags_)
            for (const auto& q : tags_)
                if (p != q) broken.push_back(land(follows(A(p), A(q)), follows(A(q), A(p))));
        for (std::size_t j = 0; j < k; ++j)
            for (const auto& p : minus(main_, marks[j].allowed)) broken.push_back(somewhere(land(t(j), A(p))));
        order.push_back(implies(disj(broken), u_));
        return conj(order);
    }

    Formula bad() const
    {
        const Names Rmain = minus(main_, {dfinal_});
        const Names Rcell = minus(main_, {kDollarAtom, dfinal_});
        const Names deltaR = minus(delta_, {dfinal_});
        const Names dollar{kDollarAtom};
        const Names dfin{dfinal_};
        std::vector<Formula> out;
        auto add = [&](std::vector<Mark> m) {
            if (auto f = theta(m)) out.push_back(*f);
        };
        auto addWith = [&](std::vector<std::vector<Mark>> alts, const Formula& rest) {
            std::vector<Formula> d;
            for (auto& m : alts)
                if (auto f = theta(m)) d.push_back(*f);
            out.push_back(land(disj(d), rest));
        };
        const int n = I_.n;

        // bad_in
        add({{1, dollar}, {2, num_}, {3, minus(delta_, {dinit_})}, {4, main_}});
        // bad_ord
        add({{1, Rmain}, {2, dollar}, {3, delta_}, {4, main_}});
        add({{2, dollar}, {3, delta_}, {4, main_}});
        add({{1, Rmain}, {2, num_}, {3, dollar}, {4, main_}});
        // bad_acc
        for (int i = 1; i <= n; ++i) {
            add({{1, Rmain}, {2, {numAtom(i, 0)}}, {3, num_}, {4, dfin}, {5, main_}});
            add({{1, Rmain}, {2, {numAtom(i, 0)}}, {4, dfin}, {5, main_}});
        }
        // bad_cell
        for (const auto& d : deltaR)
            for (const auto& e : delta_)
                if (d != e) add({{1, Rmain}, {2, {d}}, {3, {e}}, {4, main_}});
        for (int i = 1; i <= n; ++i)
            for (int b = 0; b <= 1; ++b) {
                add({{1, Rmain}, {2, {numAtom(i, b)}}, {3, {numAtom(i, 1 - b)}}, {4, main_}});
                add({{1, Rmain}, {2, {numAtom(i, b)}}, {3, num_}, {4, {numAtom(i, 1 - b)}}, {5, main_}});
            }
        for (int i = 1; i <= n; ++i)
            for (int b = 0; b <= 1; ++b)
                for (int j = 1; j < i; ++j)
                    for (int c = 0; c <= 1; ++c) {
                        add({{1, Rmain}, {2, {numAtom(i, b)}}, {3, {numAtom(j, c)}}, {4, main_}});
                        add({{1, Rmain}, {2, {numAtom(i, b)}}, {3, num_}, {4, {numAtom(j, c)}}, {5, main_}});
                    }
        for (int i = 1; i <= n; ++i) {
            const Names rest = minus(num_, {numAtom(i, 0), numAtom(i, 1)});
            add({{1, Rmain}, {2, plus(deltaR, dollar)}, {3, rest}, {4, delta_}, {5, main_}});
            add({{1, dollar}, {3, rest}, {4, delta_}, {5, main_}});
        }
        // bad_first
        for (int i = 1; i <= n; ++i) {
            add({{1, Rmain}, {2, dollar}, {3, num_}, {4, {numAtom(i, 1)}}, {5, main_}});
            add({{1, Rmain}, {2, dollar}, {4, {numAtom(i, 1)}}, {5, main_}});
            add({{2, dollar}, {3, num_}, {4, {numAtom(i, 1)}}, {5, main_}});
            add({{2, dollar}, {4, {numAtom(i, 1)}}, {5, main_}});
        }
        // bad_last
        add({{1, Rmain}, {2, {numAtom(n, 0)}}, {3, delta_}, {4, dollar}, {5, main_}});
        for (int i = 1; i <= n; ++i) add({{1, Rmain}, {2, {numAtom(i, 0)}}, {3, num_}, {4, delta_}, {5, dollar}, {6, main_}});
        // bad_inc
        {
            const Formula t3 = A(tagAtom(3)), t5 = A(tagAtom(5));
            std::vector<Formula> allWrap;
            for (int i = 1; i <= n; ++i) allWrap.push_back(land(marked(numAtom(i, 1), t3), marked(numAtom(i, 0), t5)));
            std::vector<Formula> alts{conj(allWrap)};
            for (int i = 1; i <= n; ++i) {
                std::vector<Formula> witness;
                for (int j = 1; j < i; ++j)
                    witness.push_back(land(marked(numAtom(j, 0), t3), marked(numAtom(j, 1), t5)));
                for (int j = i + 1; j <= n; ++j)
                    for (int b = 0; b <= 1; ++b)
                        witness.push_back(land(marked(numAtom(j, b), t3), marked(numAtom(j, 1 - b), t5)));
                alts.push_back(conj({marked(numAtom(i, 0), t3), marked(numAtom(i, 1), t5), disj(witness)}));
            }
            addWith({{{1, Rmain}, {2, plus(deltaR, dollar)}, {3, num_}, {4, deltaR}, {5, num_}, {6, delta_}, {7, main_}},
                     {{1, dollar}, {3, num_}, {4, deltaR}, {5, num_}, {6, delta_}, {7, main_}}},
                    disj(alts));
        }
        // bad_rr
        for (std::size_t d = 0; d < I_.dominoes.size(); ++d)
            for (std::size_t e = 0; e < I_.dominoes.size(); ++e)
                if (d != I_.final && I_.dominoes[d].right != I_.dominoes[e].left)
                    add({{1, Rmain}, {2, {dominoAtom(d)}}, {3, num_}, {4, {dominoAtom(e)}}, {5, main_}});
        // bad_cr
        {
            const Formula t2 = A(tagAtom(2)), t3 = A(tagAtom(3)), t7 = A(tagAtom(7)), t8 = A(tagAtom(8));
            std::vector<Formula> same;
            for (int i = 1; i <= n; ++i)
                same.push_back(lor(land(marked(numAtom(i, 0), t2), marked(numAtom(i, 0), t7)),
                                   land(marked(numAtom(i, 1), t2), marked(numAtom(i, 1), t7))));
            std::vector<Formula> clash;
            for (std::size_t d = 0; d < I_.dominoes.size(); ++d)
                for (std::size_t e = 0; e < I_.dominoes.size(); ++e)
                    if (I_.dominoes[d].up != I_.dominoes[e].down)
                        clash.push_back(land(marked(dominoAtom(d), t3), marked(dominoAtom(e), t8)));
            addWith({{{1, Rmain}, {2, num_}, {3, deltaR}, {4, Rcell}, {5, dollar}, {6, Rcell}, {7, num_}, {8, delta_}, {9, main_}},
                     {{1, Rmain}, {2, num_}, {3, deltaR}, {4, Rcell}, {5, dollar}, {7, num_}, {8, delta_}, {9, main_}},
                     {{1, Rmain}, {2, num_}, {3, deltaR}, {5, dollar}, {6, Rcell}, {7, num_}, {8, delta_}, {9, main_}}},
                    land(conj(same), disj(clash)));
        }
        return disj(out);
    }

private:
    Formula empty() const
    {
        std::vector<Formula> parts;
        for (const auto& p : all_) parts.push_back(lnot(A(p)));
        return conj(parts);
    }
    Formula somewhere(const Formula& xi) const { return until(anyOf(all_), xi); }
    Formula follows(const Formula& t, const Formula& t2) const
    {
        return until(anyOf(all_), land(t, until(anyOf(all_), t2)));
    }

    // some position of the slice marked by t carries p
    Formula marked(const std::string& p, const Formula& t) const
    {
        if (r_ == Reduction::ExpspaceFG) return eventually(land(A(p), t));
        if (r_ == Reduction::ExpspaceG) return implies(always(lor(implies(t, u_), anyOf(minus(main_, {p})))), u_);
        return somewhere(land(A(p), t));
    }

    const TilingInstance& I_;
    Reduction r_;
    Names main_, delta_, num_, tags_, all_;
    Formula u_;
    std::string dfinal_, dinit_;
};

// square encodings over cell codes with row and column counters
class SquareEncoding {
public:
    SquareEncoding(const TilingInstance& I, Reduction r) : I_(I), r_(r)
    {
        for (std::size_t d = 0; d < I.dominoes.size(); ++d) delta_.push_back(dominoAtom(d));
        for (int t = 1; t <= 3; ++t) marks_.push_back(tagAtom(t));
        for (char axis : {'r', 'c'})
            for (int i = 1; i <= I.n; ++i)
                for (int b = 0; b <= 1; ++b) {
                    bits_.push_back(bit(axis, i, b));
                    bars_.push_back(barAtom(axis, i, b));
                }
        all_ = plus(plus(plus(delta_, bits_), plus(marks_, bars_)), {kMarkAtom});
        u_ = A(kMarkAtom);
        std::vector<Formula> none;
        for (const auto& p : all_) none.push_back(lnot(A(p)));
        empty_ = conj(none);
    }

    Formula pseudo() const
    {
        const int n = I_.n;
        std::vector<Formula> counters;
        for (char axis : {'r', 'c'})
            for (int i = 1; i <= n; ++i)
                counters.push_back(lor(land(B(axis, i, 0), lnot(B(axis, i, 1))), land(B(axis, i, 1), lnot(B(axis, i, 0)))));
        std::vector<Formula> zero{A(dominoAtom(I_.init))}, ones{A(dominoAtom(I_.final))};
        for (char axis : {'r', 'c'})
            for (int i = 1; i <= n; ++i) {
                zero.push_back(B(axis, i, 0));
                ones.push_back(B(axis, i, 1));
            }
        const Formula init = conj(zero), acc = conj(ones);
        const Formula fullTags = land(u_, allOf(plus(marks_, bars_)));

        std::vector<Formula> barCode;
        for (char axis : {'r', 'c'})
            for (int i = 1; i <= n; ++i) barCode.push_back(lor(A(barAtom(axis, i, 0)), A(barAtom(axis, i, 1))));
        const Formula tagged = disj({A(tagAtom(1)), A(tagAtom(2)), A(tagAtom(3)), conj(barCode)});

        std::vector<Formula> twoMarks;
        for (const auto& p : marks_)
            for (const auto& q : marks_)
                if (p != q) twoMarks.push_back(land(A(p), A(q)));
        std::vector<Formula> badH{land(ev(anyOf(marks_)), ev(anyOf(bars_))), ev(disj(twoMarks))};
        for (char axis : {'r', 'c'})
            for (int i = 1; i <= n; ++i)
                badH.push_back(land(ev(A(barAtom(axis, i, 0))), ev(A(barAtom(axis, i, 1)))));
        const Formula phiH = land(every(tagged), implies(disj(badH), u_));

        Formula phiT, phiFull;
        if (r_ == Reduction::NexptimeFG) {
            std::vector<Formula> parts{always(exactlyOne(delta_))};
            for (const auto& c : counters) parts.push_back(always(c));
            parts.push_back(eventually(init));
            parts.push_back(eventually(acc));
            phiT = conj(parts);
            phiFull = implies(eventually(u_), always(fullTags));
        } else if (r_ == Reduction::NexptimeU) {
            phiT = conj({until(exactlyOne(delta_), empty_), until(conj(counters), empty_), ev(init), ev(acc)});
            phiFull = implies(ev(u_), until(fullTags, empty_));
        } else {
            phiT = conj({lnot(G(anyOf(all_))), every(exactlyOne(delta_)), every(conj(counters)), ev(init), ev(acc)});
            phiFull = implies(ev(u_), every(fullTags));
        }
        return conj({implies(lnot(u_), u_), phiT, phiFull, phiH});
    }

    Formula bad() const
    {
        const int n = I_.n;
        const Formula t1 = A(tagAtom(1)), t2 = A(tagAtom(2));
        auto same = [&](const Formula& t, const Formula& t2b, char axis) {
            const Formula either = equal(t, t2b) ? t : lor(t, t2b);
            std::vector<Formula> split;
            for (int i = 1; i <= n; ++i)
                split.push_back(land(ev(land(either, B(axis, i, 0))), ev(land(either, B(axis, i, 1)))));
            return implies(disj(split), u_);
        };
        auto consecutive = [&](char axis) {
            std::vector<Formula> alts;
            for (int i = 1; i <= n; ++i) {
                std::vector<Formula> parts{ev(land(B(axis, i, 0), t1)), ev(land(B(axis, i, 1), t2))};
                for (int j = 1; j < i; ++j)
                    parts.push_back(land(ev(land(B(axis, j, 1), t1)), ev(land(B(axis, j, 0), t2))));
                for (int j = i + 1; j <= n; ++j)
                    parts.push_back(lor(land(ev(land(B(axis, j, 0), t1)), ev(land(B(axis, j, 0), t2))),
                                        land(ev(land(B(axis, j, 1), t1)), ev(land(B(axis, j, 1), t2)))));
                alts.push_back(conj(parts));
            }
            return disj(alts);
        };
        auto clash = [&](bool vertical) {
            std::vector<Formula> out;
            for (std::size_t d = 0; d < I_.dominoes.size(); ++d)
                for (std::size_t e = 0; e < I_.dominoes.size(); ++e) {
                    const Domino &x = I_.dominoes[d], &y = I_.dominoes[e];
                    if (vertical ? x.up == y.down : x.right == y.left) continue;
                    out.push_back(land(ev(land(t1, A(dominoAtom(d)))), ev(land(t2, A(dominoAtom(e))))));
                }
            return disj(out);
        };

        std::vector<Formula> wrongNumber;
        for (char axis : {'r', 'c'})
            for (int i = 1; i <= n; ++i)
                for (int b = 0; b <= 1; ++b) wrongNumber.push_back(land(B(axis, i, b), A(barAtom(axis, i, 1 - b))));
        std::vector<Formula> someBar;
        for (const auto& p : bars_) someBar.push_back(ev(A(p)));
        const Formula missing = land(disj(someBar), every(disj(wrongNumber)));

        std::vector<Formula> twoContents;
        for (std::size_t d = 0; d < I_.dominoes.size(); ++d)
            for (std::size_t e = 0; e < I_.dominoes.size(); ++e)
                if (d != e) twoContents.push_back(land(ev(land(t1, A(dominoAtom(d)))), ev(land(t1, A(dominoAtom(e))))));
        const Formula conflict = conj({ev(t1), same(t1, t1, 'r'), same(t1, t1, 'c'), disj(twoContents)});

        const Formula column = conj({ev(t1), ev(t2), same(t1, t1, 'r'), same(t2, t2, 'r'), same(t1, t2, 'c'),
                                     consecutive('r'), clash(true)});
        const Formula row = conj({ev(t1), ev(t2), same(t1, t1, 'c'), same(t2, t2, 'c'), same(t1, t2, 'r'),
                                  consecutive('c'), clash(false)});
        return disj({missing, conflict, column, row});
    }

private:
    static std::string bit(char axis, int i, int b) { return axis == 'r' ? rowBitAtom(i, b) : colBitAtom(i, b); }
    static Formula B(char axis, int i, int b) { return A(bit(axis, i, b)); }

    // some slice position satisfies xi
    Formula ev(const Formula& xi) const
    {
        if (r_ == Reduction::NexptimeFG) return eventually(xi);
        if (r_ == Reduction::NexptimeU) return until(anyOf(all_), xi);
        return release(xi, anyOf(all_));
    }
    // every slice position satisfies xi
    Formula every(const Formula& xi) const
    {
        if (r_ == Reduction::NexptimeFG) return always(xi);
        if (r_ == Reduction::NexptimeU) return until(xi, empty_);
        return G(lor(empty_, xi));
    }
    static Formula G(const Formula& xi) { return release(bottom(), xi); }

    const TilingInstance& I_;
    Reduction r_;
    Names delta_, marks_, bits_, bars_, all_;
    Formula u_, empty_;
};

Formula pspacePositive(const TilingInstance& I)
{
    const int n = I.n;
    const std::size_t m = I.dominoes.size();
    Names P;
    for (int i = 1; i <= n; ++i)
        for (std::size_t d = 0; d < m; ++d) P.push_back(cellAtom(i, d));
    auto C = [](int i, std::size_t d) { return A(cellAtom(i, d)); };
    const Formula boundary = land(C(n, I.final), next(C(1, I.init)));

    std::vector<Formula> sequence;
    for (std::size_t d = 0; d < m; ++d)
        for (std::size_t e = 0; e < m; ++e) {
            std::vector<Formula> steps{land(C(n, d), next(C(1, e)))};
            for (int i = 1; i < n; ++i) steps.push_back(land(C(i, d), next(C(i + 1, e))));
            sequence.push_back(disj(steps));
        }
    std::vector<Formula> rowAdj;
    for (std::size_t d = 0; d < m; ++d) {
        std::vector<Formula> alts{C(n, d)};
        for (int i = 1; i < n; ++i)
            for (std::size_t e = 0; e < m; ++e)
                if (I.dominoes[e].left == I.dominoes[d].right) alts.push_back(land(C(i, d), next(C(i + 1, e))));
        rowAdj.push_back(disj(alts));
    }
    std::vector<Formula> colAdj;
    for (int j = 0; j < n; ++j) colAdj.push_back(nextPow(boundary, j));
    for (std::size_t d = 0; d < m; ++d)
        for (std::size_t e = 0; e < m; ++e)
            if (I.dominoes[e].down == I.dominoes[d].up)
                for (int i = 1; i <= n; ++i) colAdj.push_back(land(C(i, d), nextPow(C(i, e), n)));
    const Formula psiI =
        land(always(eventually(boundary)), eventually(always(conj({disj(sequence), disj(rowAdj), disj(colAdj)}))));
    const Formula noCell = disj(distinctPairs(P));
    return land(always(anyOf(P)), lor(always(eventually(noCell)), psiI));
}

}  // namespace

ReductionParts reductionParts(const TilingInstance& I, Reduction r)
{
    validate(I);
    ReductionParts out;
    const Formula u = atom(kMarkAtom);
    switch (reductionKind(r)) {
    case TilingKind::ExpspaceRows: {
        const RowEncoding e(I, r);
        out.pseudo = e.pseudo();
        out.bad = e.bad();
        out.formula = land(out.pseudo, lor(u, out.bad));
        break;
    }
    case TilingKind::NexptimeSquare: {
        const SquareEncoding e(I, r);
        out.pseudo = e.pseudo();
        out.bad = e.bad();
        out.formula = land(out.pseudo, lor(u, out.bad));
        break;
    }
    case TilingKind::PspaceRows: out.formula = pspacePositive(I); break;
    }
    return out;
}

Formula encodeExpspaceFG(const TilingInstance& I) { return reductionParts(I, Reduction::ExpspaceFG).formula; }
Formula encodeNexptimeFG(const TilingInstance& I) { return reductionParts(I, Reduction::NexptimeFG).formula; }
Formula encodePspacePositive(const TilingInstance& I) { return reductionParts(I, Reduction::PspacePositive).formula; }

Formula encodeVariant(const TilingInstance& I, const std::string& fragment)
{
    const Reduction r = parseReduction(fragment);
    if (r != Reduction::ExpspaceG && r != Reduction::ExpspaceU && r != Reduction::NexptimeU && r != Reduction::NexptimeR)
        throw std::invalid_argument("not a variant fragment: " + fragment);
    return reductionParts(I, r).formula;
}

Formula theta(const TilingInstance& I, Reduction r, const std::vector<Mark>& marks)
{
    if (reductionKind(r) != TilingKind::ExpspaceRows) throw std::invalid_argument("theta needs a row encoding");
    validate(I);
    auto f = RowEncoding(I, r).theta(marks);
    if (!f) throw std::invalid_argument("theta needs non-empty atom sets");
    return *f;
}

}  // namespace tel
