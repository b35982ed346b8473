#include "tel/semantics.hpp"

#include <algorithm>
#include <unordered_map>

namespace tel {

int Compiled::indexOf(const Formula& g) const
{
    for (std::size_t i = 0; i < forms.size(); ++i)
        if (equal(forms[i], g)) return static_cast<int>(i);
    return -1;
}

Compiled compile(const Formula& f)
{
    Compiled c;
    std::unordered_map<Formula, int, FormulaHash, FormulaEq> index;
    std::unordered_map<std::string, int> atomIndex;
    for (const auto& g : subformulas(f)) {
        Compiled::N n;
        n.op = g->op;
        if (g->lhs) n.a = index.at(g->lhs);
        if (g->rhs) n.b = index.at(g->rhs);
        if (g->op == Op::Atom) {
            auto it = atomIndex.find(g->name);
            if (it == atomIndex.end()) {
                it = atomIndex.emplace(g->name, static_cast<int>(c.atoms.size())).first;
                c.atoms.push_back(g->name);
            }
            n.atom = it->second;
        }
        index.emplace(g, static_cast<int>(c.nodes.size()));
        c.nodes.push_back(n);
        c.forms.push_back(g);
    }
    c.root = static_cast<int>(c.nodes.size()) - 1;
    return c;
}

std::vector<int> bindAtoms(const Compiled& c, const std::vector<std::string>& lassoAtoms)
{
    std::vector<int> bits;
    for (const auto& a : c.atoms) {
        auto it = std::find(lassoAtoms.begin(), lassoAtoms.end(), a);
        if (it == lassoAtoms.end()) throw AtomError("atom '" + a + "' is not in the declared atom set");
        bits.push_back(static_cast<int>(it - lassoAtoms.begin()));
    }
    return bits;
}

Evaluator::Evaluator(Compiled c) : c_(std::move(c)) {}

void Evaluator::run(const ThtPair& m)
{
    const auto bits = bindAtoms(c_, m.T.atoms);
    std::vector<Letter> h(m.H.window()), t(m.T.window());
    for (std::size_t i = 0; i < h.size(); ++i) {
        h[i] = m.H.at(i);
        t[i] = m.T.at(i);
    }
    run(h.data(), t.data(), m.T.stem.size(), m.T.loop.size(), bits);
}

void Evaluator::runTotal(const Lasso& T)
{
    const auto bits = bindAtoms(c_, T.atoms);
    std::vector<Letter> t(T.window());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = T.at(i);
    run(t.data(), t.data(), T.stem.size(), T.loop.size(), bits);
}

void Evaluator::run(const Letter* H, const Letter* T, std::size_t stem, std::size_t loop,
                    const std::vector<int>& bits)
{
    stem_ = stem;
    loop_ = loop;
    const std::size_t n = stem + loop;
    for (auto& level : tables_) {
        level.resize(c_.nodes.size());
        for (auto& row : level) row.assign(n, 0);
    }
    runLevel(0, T, bits);
    if (H == T) {
        tables_[1] = tables_[0];
    } else {
        runLevel(1, H, bits);
    }
}

void Evaluator::runLevel(int level, const Letter* L, const std::vector<int>& bits)
{
    const std::size_t n = stem_ + loop_;
    const std::size_t s = stem_;
    auto& tab = tables_[level];
    const auto& tot = tables_[0];
    for (std::size_t k = 0; k < c_.nodes.size(); ++k) {
        const auto& nd = c_.nodes[k];
        auto& out = tab[k];
        switch (nd.op) {
        case Op::Atom: {
            const int bit = bits[static_cast<std::size_t>(nd.atom)];
            for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>((L[i] >> bit) & 1);
            break;
        }
        case Op::Bottom: break;
        case Op::Top: std::fill(out.begin(), out.end(), 1); break;
        case Op::Not: {
            const auto& a = tot[static_cast<std::size_t>(nd.a)];
            for (std::size_t i = 0; i < n; ++i) out[i] = !a[i];
            break;
        }
        case Op::And: {
            const auto& a = tab[static_cast<std::size_t>(nd.a)];
            const auto& b = tab[static_cast<std::size_t>(nd.b)];
            for (std::size_t i = 0; i < n; ++i) out[i] = a[i] && b[i];
            break;
        }
        case Op::Or: {
            const auto& a = tab[static_cast<std::size_t>(nd.a)];
            const auto& b = tab[static_cast<std::size_t>(nd.b)];
            for (std::size_t i = 0; i < n; ++i) out[i] = a[i] || b[i];
            break;
        }
        case Op::Implies: {
            const auto& a = tab[static_cast<std::size_t>(nd.a)];
            const auto& b = tab[static_cast<std::size_t>(nd.b)];
            if (level == 0) {
                for (std::size_t i = 0; i < n; ++i) out[i] = !a[i] || b[i];
            } else {
                const auto& t = tot[k];
                for (std::size_t i = 0; i < n; ++i) out[i] = t[i] && (!a[i] || b[i]);
            }
            break;
        }
        case Op::Next: {
            const auto& a = tab[static_cast<std::size_t>(nd.a)];
            for (std::size_t i = 0; i + 1 < n; ++i) out[i] = a[i + 1];
            out[n - 1] = a[s];
            break;
        }
        case Op::Until:
        case Op::Eventually:
        case Op::Release:
        case Op::Always: {
            const bool isUntil = nd.op == Op::Until || nd.op == Op::Eventually;
            const std::vector<std::uint8_t>* a = nullptr;
            const std::vector<std::uint8_t>* b = nullptr;
            if (nd.op == Op::Until || nd.op == Op::Release) {
                a = &tab[static_cast<std::size_t>(nd.a)];
                b = &tab[static_cast<std::size_t>(nd.b)];
            } else {
                b = &tab[static_cast<std::size_t>(nd.a)];
            }
            auto step = [&](std::size_t i, bool carry) -> std::uint8_t {
                const bool av = a ? (*a)[i] != 0 : isUntil;
                const bool bv = (*b)[i] != 0;
                return isUntil ? (bv || (av && carry)) : (bv && (av || carry));
            };
            // two backward passes over the loop settle witnesses that wrap around
            bool carry = !isUntil;
            for (std::size_t i = n; i-- > s;) carry = out[i] = step(i, carry);
            carry = out[s];
            for (std::size_t i = n; i-- > s;) carry = out[i] = step(i, carry);
            for (std::size_t i = s; i-- > 0;) carry = out[i] = step(i, carry);
            break;
        }
        }
    }
}

bool thtSat(const ThtPair& m, std::size_t i, const Formula& f)
{
    Evaluator ev(f);
    ev.run(m);
    return ev.holds(i);
}

bool ltlSat(const Lasso& T, const Formula& f) { return ltlSatAt(T, 0, f); }

bool ltlSatAt(const Lasso& T, std::size_t i, const Formula& f)
{
    Evaluator ev(f);
    ev.runTotal(T);
    return ev.holdsTotal(i);
}

std::string primedName(const std::string& name, const std::set<std::string>& taken)
{
    std::string p = name + "__t";
    while (taken.count(p)) p += "_";
    return p;
}

namespace {

Formula prime(const Formula& f, const std::map<std::string, std::string>& names)
{
    switch (f->op) {
    case Op::Atom: return atom(names.at(f->name));
    case Op::Bottom:
    case Op::Top: return f;
    case Op::Not: return lnot(prime(f->lhs, names));
    case Op::Next: return next(prime(f->lhs, names));
    case Op::Eventually: return eventually(prime(f->lhs, names));
    case Op::Always: return always(prime(f->lhs, names));
    case Op::And: return land(prime(f->lhs, names), prime(f->rhs, names));
    case Op::Or: return lor(prime(f->lhs, names), prime(f->rhs, names));
    case Op::Implies: return implies(prime(f->lhs, names), prime(f->rhs, names));
    case Op::Until: return until(prime(f->lhs, names), prime(f->rhs, names));
    case Op::Release: return release(prime(f->lhs, names), prime(f->rhs, names));
    }
    return f;
}

Formula star(const Formula& f, const std::map<std::string, std::string>& names)
{
    switch (f->op) {
    case Op::Atom:
    case Op::Bottom:
    case Op::Top: return f;
    case Op::Not:
        return land(implies(star(f->lhs, names), bottom()), implies(prime(f->lhs, names), bottom()));
    case Op::Implies:
        return land(implies(star(f->lhs, names), star(f->rhs, names)),
                    implies(prime(f->lhs, names), prime(f->rhs, names)));
    case Op::Next: return next(star(f->lhs, names));
    case Op::Eventually: return eventually(star(f->lhs, names));
    case Op::Always: return always(star(f->lhs, names));
    case Op::And: return land(star(f->lhs, names), star(f->rhs, names));
    case Op::Or: return lor(star(f->lhs, names), star(f->rhs, names));
    case Op::Until: return until(star(f->lhs, names), star(f->rhs, names));
    case Op::Release: return release(star(f->lhs, names), star(f->rhs, names));
    }
    return f;
}

}  // namespace

LtlTranslation translateToLtl(const Formula& f, const std::vector<std::string>& atoms)
{
    const std::set<std::string> taken(atoms.begin(), atoms.end());
    for (const auto& a : atomsOf(f))
        if (!taken.count(a)) throw AtomError("atom '" + a + "' is not in the declared atom set");
    std::map<std::string, std::string> names;
    std::set<std::string> used = taken;
    LtlTranslation tr;
    tr.base = atoms;
    tr.atoms = atoms;
    for (const auto& a : atoms) {
        const std::string p = primedName(a, used);
        used.insert(p);
        names[a] = p;
        tr.atoms.push_back(p);
    }
    tr.formula = star(f, names);
    std::vector<Formula> ax;
    for (const auto& a : atoms) ax.push_back(implies(atom(a), atom(names[a])));
    tr.axiom = always(conj(ax));
    return tr;
}

LtlTranslation translateToLtl(const Formula& f)
{
    const auto s = atomsOf(f);
    return translateToLtl(f, std::vector<std::string>(s.begin(), s.end()));
}

Lasso encodePair(const ThtPair& m, const LtlTranslation& tr)
{
    const Lasso H = widen(m.H, tr.base);
    const Lasso T = widen(m.T, tr.base);
    const std::size_t k = tr.base.size();
    Lasso v;
    v.atoms = tr.atoms;
    for (std::size_t i = 0; i < H.stem.size(); ++i) v.stem.push_back(H.stem[i] | (T.stem[i] << k));
    for (std::size_t i = 0; i < H.loop.size(); ++i) v.loop.push_back(H.loop[i] | (T.loop[i] << k));
    return v;
}

ThtPair decodePair(const Lasso& v, const LtlTranslation& tr)
{
    const std::size_t k = tr.base.size();
    const Letter mask = fullLetter(k);
    Lasso H{tr.base, {}, {}}, T{tr.base, {}, {}};
    for (Letter x : v.stem) {
        H.stem.push_back(x & mask);
        T.stem.push_back((x >> k) & mask);
    }
    for (Letter x : v.loop) {
        H.loop.push_back(x & mask);
        T.loop.push_back((x >> k) & mask);
    }
    return ThtPair{H, T};
}

}  // namespace tel
