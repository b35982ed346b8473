#include "tel/measures.hpp"

#include <algorithm>
#include <regex>
#include <stdexcept>
#include <unordered_map>

namespace tel {

namespace {

unsigned modalityOf(Op op)
{
    switch (op) {
    case Op::Next: return ModX;
    case Op::Eventually: return ModF;
    case Op::Always: return ModG;
    case Op::Until: return ModU;
    case Op::Release: return ModR;
    default: return 0;
    }
}

struct Heights {
    int temporal = 0;
    int implication = 0;
    int next = 0;
};

}  // namespace

FragmentProfile measures(const Formula& f)
{
    FragmentProfile p;
    const auto subs = subformulas(f);
    std::unordered_map<Formula, Heights, FormulaHash, FormulaEq> byValue;
    for (const auto& g : subs) {
        Heights a, b;
        if (g->lhs) a = byValue.at(g->lhs);
        if (g->rhs) b = byValue.at(g->rhs);
        Heights r;
        r.temporal = std::max(a.temporal, b.temporal);
        r.implication = std::max(a.implication, b.implication);
        r.next = std::max(a.next, b.next);
        if (isTemporal(g->op)) r.temporal += 1;
        if (g->op == Op::Implies || g->op == Op::Not) r.implication += 1;
        if (g->op == Op::Next) r.next += 1;
        if (g->op == Op::Until || g->op == Op::Eventually) p.untilCount += 1;
        p.modalities |= modalityOf(g->op);
        byValue.emplace(g, r);
    }
    const Heights root = byValue.at(f);
    p.temporalHeight = root.temporal;
    p.implicationHeight = root.implication;
    p.nextDepth = root.next;
    p.size = static_cast<int>(subs.size());
    return p;
}

bool inFragment(const FragmentProfile& p, const FragmentSpec& spec)
{
    if ((p.modalities & ~spec.modalities) != 0) return false;
    if (spec.maxTemporal && p.temporalHeight > *spec.maxTemporal) return false;
    if (spec.maxImplication && p.implicationHeight > *spec.maxImplication) return false;
    return true;
}

bool inFragment(const Formula& f, const FragmentSpec& spec) { return inFragment(measures(f), spec); }

bool inFamily(const FragmentProfile& p, const FragmentSpec& spec)
{
    unsigned allowed = spec.modalities;
    if (allowed & ModU) allowed |= ModF;
    if (allowed & ModR) allowed |= ModG;
    FragmentSpec widened = spec;
    widened.modalities = allowed;
    return inFragment(p, widened);
}

std::string modalityList(unsigned mods)
{
    static const char* names[] = {"X", "F", "G", "U", "R"};
    std::string out;
    for (int i = 0; i < 5; ++i) {
        if (!(mods & (1u << i))) continue;
        if (!out.empty()) out += ',';
        out += names[i];
    }
    return out;
}

std::string fragmentName(const FragmentProfile& p)
{
    if (p.temporalHeight == 0) return "THT_0 = HT";
    return "THT_" + std::to_string(p.temporalHeight) + "^" + std::to_string(p.implicationHeight) + "(" +
           modalityList(p.modalities) + ")";
}

FragmentSpec parseFragment(const std::string& name)
{
    if (name == "HT" || name == "THT_0") return FragmentSpec{ModAll, 0, std::nullopt};
    static const std::regex re(R"(THT(?:_(\d+))?(?:\^(\d+))?(?:_(\d+))?(?:\(([XFGUR,]*)\))?)");
    std::smatch m;
    if (!std::regex_match(name, m, re)) throw std::invalid_argument("unknown fragment '" + name + "'");
    FragmentSpec s;
    if (m[1].matched) s.maxTemporal = std::stoi(m[1]);
    if (m[3].matched) s.maxTemporal = std::stoi(m[3]);
    if (m[2].matched) s.maxImplication = std::stoi(m[2]);
    if (m[4].matched) {
        s.modalities = 0;
        for (char c : m[4].str()) {
            switch (c) {
            case 'X': s.modalities |= ModX; break;
            case 'F': s.modalities |= ModF; break;
            case 'G': s.modalities |= ModG; break;
            case 'U': s.modalities |= ModU; break;
            case 'R': s.modalities |= ModR; break;
            default: break;
            }
        }
    }
    return s;
}

}  // namespace tel
