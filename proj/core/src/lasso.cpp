#include "tel/lasso.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <utility>

namespace tel {

bool Lasso::operator<(const Lasso& o) const
{
    if (window() != o.window()) return window() < o.window();
    if (stem.size() != o.stem.size()) return stem.size() < o.stem.size();
    if (stem != o.stem) return stem < o.stem;
    if (loop != o.loop) return loop < o.loop;
    return atoms < o.atoms;
}

Letter fullLetter(std::size_t atomCount)
{
    return atomCount >= 64 ? ~Letter{0} : ((Letter{1} << atomCount) - 1);
}

Lasso makeLasso(std::vector<std::string> atoms, std::vector<Letter> stem, std::vector<Letter> loop)
{
    if (atoms.size() > kMaxAtoms) throw LassoError("too many atoms for a lasso letter");
    if (loop.empty()) throw LassoError("loop must be nonempty");
    const Letter mask = fullLetter(atoms.size());
    for (Letter a : stem)
        if (a & ~mask) throw LassoError("letter uses an undeclared atom");
    for (Letter a : loop)
        if (a & ~mask) throw LassoError("letter uses an undeclared atom");
    return Lasso{std::move(atoms), std::move(stem), std::move(loop)};
}

Lasso normalize(const Lasso& l)
{
    Lasso n = l;
    const std::size_t k = n.loop.size();
    for (std::size_t d = 1; d <= k; ++d) {
        if (k % d) continue;
        bool periodic = true;
        for (std::size_t i = d; i < k && periodic; ++i) periodic = n.loop[i] == n.loop[i - d];
        if (periodic) {
            n.loop.resize(d);
            break;
        }
    }
    while (!n.stem.empty() && n.stem.back() == n.loop.back()) {
        std::rotate(n.loop.rbegin(), n.loop.rbegin() + 1, n.loop.rend());
        n.stem.pop_back();
    }
    return n;
}

bool isCanonical(const Lasso& l) { return normalize(l) == l; }

Lasso unroll(const Lasso& l, std::size_t stemLen, std::size_t loopLen)
{
    if (stemLen < l.stem.size() || loopLen == 0 || loopLen % l.loop.size())
        throw LassoError("invalid unrolling");
    Lasso u;
    u.atoms = l.atoms;
    u.stem.reserve(stemLen);
    for (std::size_t i = 0; i < stemLen; ++i) u.stem.push_back(l.at(i));
    u.loop.reserve(loopLen);
    for (std::size_t i = 0; i < loopLen; ++i) u.loop.push_back(l.at(stemLen + i));
    return u;
}

namespace {

std::pair<std::size_t, std::size_t> commonShape(const Lasso& a, const Lasso& b)
{
    if (a.atoms != b.atoms) throw LassoError("lassos over different atom sets");
    return {std::max(a.stem.size(), b.stem.size()), std::lcm(a.loop.size(), b.loop.size())};
}

}  // namespace

ThtPair align(const Lasso& H, const Lasso& T)
{
    const auto [s, l] = commonShape(H, T);
    ThtPair m{unroll(H, s, l), unroll(T, s, l)};
    for (std::size_t i = 0; i < s + l; ++i) {
        if (m.H.at(i) & ~m.T.at(i))
            throw ContainmentError("H is not contained in T at position " + std::to_string(i), i);
    }
    return m;
}

ThtPair totalPair(const Lasso& T) { return ThtPair{T, T}; }

bool below(const Lasso& H, const Lasso& T)
{
    const auto [s, l] = commonShape(H, T);
    for (std::size_t i = 0; i < s + l; ++i)
        if (H.at(i) & ~T.at(i)) return false;
    return true;
}

bool strictlyBelow(const Lasso& H, const Lasso& T)
{
    const auto [s, l] = commonShape(H, T);
    bool strict = false;
    for (std::size_t i = 0; i < s + l; ++i) {
        if (H.at(i) & ~T.at(i)) return false;
        if (H.at(i) != T.at(i)) strict = true;
    }
    return strict;
}

SupInfo supInfo(const Lasso& l)
{
    const Lasso n = normalize(l);
    SupInfo s;
    s.isSup = n.loop.size() == 1;
    if (s.isSup) s.supSize = n.stem.size() + 1;
    return s;
}

AlmostEmptyInfo almostEmptyInfo(const Lasso& l)
{
    const Lasso n = normalize(l);
    AlmostEmptyInfo a;
    a.isAlmostEmpty = n.loop.size() == 1 && n.loop[0] == 0;
    if (a.isAlmostEmpty) {
        a.size = n.stem.size() + 1;
        a.nonEmptyCount = static_cast<std::size_t>(std::count_if(n.stem.begin(), n.stem.end(), [](Letter x) {
            return x != 0;
        }));
    }
    return a;
}

Lasso supLasso(std::vector<std::string> atoms, std::vector<Letter> prefix, Letter tail)
{
    return normalize(makeLasso(std::move(atoms), std::move(prefix), {tail}));
}

namespace {

// W = {0, 1} plus the first occurrence of every letter; tail is a recurring letter after max W
template <class Key>
std::pair<std::vector<std::size_t>, std::size_t> contractionPositions(const std::vector<Key>& window,
                                                                      std::size_t stemLen)
{
    std::vector<std::size_t> w{0, 1};
    std::map<Key, std::size_t> first;
    const std::size_t n = window.size();
    for (std::size_t i = 0; i < n; ++i) first.emplace(window[i], i);
    for (const auto& [k, i] : first) w.push_back(i);
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    const std::size_t tailPos = std::max(w.back() + 1, stemLen);
    return {w, tailPos};
}

// Pre(i) is the set of letters strictly before i; the simulation test only needs first occurrences
template <class Key>
bool simulates(const std::vector<Key>& a, const std::vector<Key>& b)
{
    // b simulates a
    if (a[0] != b[0] || a[1] != b[1]) return false;
    auto firstPre = [](const std::vector<Key>& w) {
        std::map<Key, std::set<Key>> out;
        std::set<Key> pre;
        for (const auto& k : w) {
            if (!out.count(k)) out.emplace(k, pre);
            pre.insert(k);
        }
        return out;
    };
    const auto fa = firstPre(a);
    const auto fb = firstPre(b);
    for (const auto& [k, preA] : fa) {
        auto it = fb.find(k);
        if (it == fb.end()) return false;
        if (!std::includes(preA.begin(), preA.end(), it->second.begin(), it->second.end())) return false;
    }
    return true;
}

}  // namespace

Lasso contraction(const Lasso& M)
{
    const std::size_t len = M.window();
    std::vector<Letter> window;
    for (std::size_t i = 0; i < len + 2; ++i) window.push_back(M.at(i));
    const auto [w, tailPos] = contractionPositions(window, M.stem.size());
    std::vector<Letter> prefix;
    for (std::size_t i : w) prefix.push_back(M.at(i));
    return supLasso(M.atoms, prefix, M.at(tailPos));
}

ThtPair contraction(const ThtPair& M)
{
    const std::size_t len = M.T.window();
    std::vector<std::pair<Letter, Letter>> window;
    for (std::size_t i = 0; i < len + 2; ++i) window.emplace_back(M.H.at(i), M.T.at(i));
    const auto [w, tailPos] = contractionPositions(window, M.T.stem.size());
    std::vector<Letter> hp, tp;
    for (std::size_t i : w) {
        hp.push_back(M.H.at(i));
        tp.push_back(M.T.at(i));
    }
    Lasso H = makeLasso(M.H.atoms, hp, {M.H.at(tailPos)});
    Lasso T = makeLasso(M.T.atoms, tp, {M.T.at(tailPos)});
    return ThtPair{H, T};
}

bool bisimilar(const Lasso& a, const Lasso& b)
{
    if (a.atoms != b.atoms) return false;
    const std::size_t len = std::max(a.window(), b.window()) + 2;
    std::vector<Letter> wa, wb;
    for (std::size_t i = 0; i < len; ++i) {
        wa.push_back(a.at(i));
        wb.push_back(b.at(i));
    }
    return simulates(wa, wb) && simulates(wb, wa);
}

bool bisimilar(const ThtPair& a, const ThtPair& b)
{
    if (a.T.atoms != b.T.atoms) return false;
    const std::size_t len = std::max(a.T.window(), b.T.window()) + 2;
    std::vector<std::pair<Letter, Letter>> wa, wb;
    for (std::size_t i = 0; i < len; ++i) {
        wa.emplace_back(a.H.at(i), a.T.at(i));
        wb.emplace_back(b.H.at(i), b.T.at(i));
    }
    return simulates(wa, wb) && simulates(wb, wa);
}

std::vector<Lasso> enumerateLassos(const std::vector<std::string>& atoms, std::size_t stemBound,
                                   std::size_t loopBound)
{
    std::vector<Lasso> out;
    const std::size_t bits = atoms.size();
    const Letter alphabet = Letter{1} << bits;
    for (std::size_t total = 1; total <= stemBound + loopBound; ++total) {
        for (std::size_t s = 0; s <= stemBound && s < total; ++s) {
            const std::size_t l = total - s;
            if (l > loopBound) continue;
            std::vector<Letter> word(total, 0);
            while (true) {
                Lasso c{atoms, std::vector<Letter>(word.begin(), word.begin() + static_cast<long>(s)),
                        std::vector<Letter>(word.begin() + static_cast<long>(s), word.end())};
                if (isCanonical(c)) out.push_back(std::move(c));
                std::size_t k = 0;
                while (k < total && ++word[k] == alphabet) word[k++] = 0;
                if (k == total) break;
            }
        }
    }
    return out;
}

std::string letterText(const std::vector<std::string>& atoms, Letter a)
{
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!(a >> i & 1)) continue;
        if (!first) out += ',';
        out += atoms[i];
        first = false;
    }
    return out + "}";
}

std::string inlineText(const Lasso& l)
{
    std::string out = "stem=";
    for (Letter a : l.stem) out += letterText(l.atoms, a);
    out += ";loop=";
    for (Letter a : l.loop) out += letterText(l.atoms, a);
    return out;
}

std::string blockText(const Lasso& l)
{
    std::string out = "atoms:";
    for (const auto& a : l.atoms) out += " " + a;
    out += "\nstem:";
    for (Letter a : l.stem) out += " " + letterText(l.atoms, a);
    out += "\nloop:";
    for (Letter a : l.loop) out += " " + letterText(l.atoms, a);
    return out + "\n";
}

std::string pairText(const ThtPair& m) { return "H:\n" + blockText(m.H) + "T:\n" + blockText(m.T); }

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::vector<std::string>> parseLetters(const std::string& text)
{
    std::vector<std::vector<std::string>> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == ',') {
            ++i;
            continue;
        }
        if (c != '{') throw LassoError("expected '{' in letter list: " + text);
        const auto close = text.find('}', i);
        if (close == std::string::npos) throw LassoError("unterminated letter: " + text);
        std::vector<std::string> names;
        std::string cur;
        for (std::size_t j = i + 1; j < close; ++j) {
            const char d = text[j];
            if (d == ',' || d == ' ' || d == '\t') {
                if (!cur.empty()) names.push_back(cur);
                cur.clear();
            } else {
                cur += d;
            }
        }
        if (!cur.empty()) names.push_back(cur);
        out.push_back(names);
        i = close + 1;
    }
    return out;
}

Letter toLetter(const std::vector<std::string>& atoms, const std::vector<std::string>& names)
{
    Letter a = 0;
    for (const auto& n : names) {
        auto it = std::find(atoms.begin(), atoms.end(), n);
        if (it == atoms.end()) throw LassoError("undeclared atom '" + n + "' in letter");
        a |= Letter{1} << static_cast<std::size_t>(it - atoms.begin());
    }
    return a;
}

struct RawLasso {
    std::vector<std::string> atoms;
    bool hasAtoms = false;
    std::vector<std::vector<std::string>> stem, loop;
    bool hasLoop = false;
};

Lasso finish(const RawLasso& r, const std::vector<std::string>* fallbackAtoms)
{
    std::vector<std::string> atoms;
    if (r.hasAtoms) {
        atoms = r.atoms;
    } else if (fallbackAtoms) {
        atoms = *fallbackAtoms;
    } else {
        std::set<std::string> seen;
        for (const auto& l : r.stem) seen.insert(l.begin(), l.end());
        for (const auto& l : r.loop) seen.insert(l.begin(), l.end());
        atoms.assign(seen.begin(), seen.end());
    }
    if (!r.hasLoop) throw LassoError("missing 'loop:' line");
    std::vector<Letter> stem, loop;
    for (const auto& l : r.stem) stem.push_back(toLetter(atoms, l));
    for (const auto& l : r.loop) loop.push_back(toLetter(atoms, l));
    return makeLasso(atoms, stem, loop);
}

void absorbLine(RawLasso& r, const std::string& line)
{
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw LassoError("expected 'key: value' line: " + line);
    const std::string key = trim(line.substr(0, colon));
    const std::string value = line.substr(colon + 1);
    if (key == "atoms") {
        std::istringstream in(value);
        std::string a;
        r.atoms.clear();
        while (in >> a) r.atoms.push_back(a);
        r.hasAtoms = true;
    } else if (key == "stem") {
        r.stem = parseLetters(trim(value));
    } else if (key == "loop") {
        r.loop = parseLetters(trim(value));
        r.hasLoop = true;
    } else {
        throw LassoError("unknown key '" + key + "'");
    }
}

std::vector<std::string> contentLines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

}  // namespace

Lasso parseLasso(const std::string& text)
{
    RawLasso r;
    for (const auto& line : contentLines(text)) absorbLine(r, line);
    return finish(r, nullptr);
}

Lasso parseInlineLasso(const std::string& text, const std::vector<std::string>& atoms)
{
    RawLasso r;
    std::string rest = text;
    std::size_t start = 0;
    while (start <= rest.size()) {
        const auto semi = rest.find(';', start);
        const std::string part = trim(rest.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
        if (!part.empty()) {
            const auto eq = part.find('=');
            if (eq == std::string::npos) throw LassoError("expected stem=... or loop=...");
            absorbLine(r, part.substr(0, eq) + ":" + part.substr(eq + 1));
        }
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return finish(r, &atoms);
}

ThtPair parsePair(const std::string& text)
{
    RawLasso shared, h, t;
    RawLasso* cur = &shared;
    for (const auto& line : contentLines(text)) {
        if (line == "H:") {
            cur = &h;
            continue;
        }
        if (line == "T:") {
            cur = &t;
            continue;
        }
        absorbLine(*cur, line);
    }
    for (RawLasso* r : {&h, &t}) {
        if (!r->hasAtoms && shared.hasAtoms) {
            r->atoms = shared.atoms;
            r->hasAtoms = true;
        }
    }
    if (!h.hasAtoms && !t.hasAtoms) {
        std::set<std::string> seen;
        for (const RawLasso* r : {&h, &t}) {
            for (const auto& l : r->stem) seen.insert(l.begin(), l.end());
            for (const auto& l : r->loop) seen.insert(l.begin(), l.end());
        }
        h.atoms = t.atoms = std::vector<std::string>(seen.begin(), seen.end());
        h.hasAtoms = t.hasAtoms = true;
    }
    if (!h.hasAtoms) {
        h.atoms = t.atoms;
        h.hasAtoms = true;
    }
    if (!t.hasAtoms) {
        t.atoms = h.atoms;
        t.hasAtoms = true;
    }
    return align(finish(h, nullptr), finish(t, nullptr));
}

Lasso widen(const Lasso& l, const std::vector<std::string>& atoms)
{
    std::vector<std::size_t> map;
    for (const auto& a : l.atoms) {
        auto it = std::find(atoms.begin(), atoms.end(), a);
        if (it == atoms.end()) throw LassoError("atom '" + a + "' missing from the target atom list");
        map.push_back(static_cast<std::size_t>(it - atoms.begin()));
    }
    auto conv = [&](Letter x) {
        Letter y = 0;
        for (std::size_t i = 0; i < map.size(); ++i)
            if (x >> i & 1) y |= Letter{1} << map[i];
        return y;
    };
    Lasso out;
    out.atoms = atoms;
    for (Letter x : l.stem) out.stem.push_back(conv(x));
    for (Letter x : l.loop) out.loop.push_back(conv(x));
    return out;
}

}  // namespace tel
