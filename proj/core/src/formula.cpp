#include "tel/formula.hpp"

#include <cctype>
#include <functional>
#include <unordered_set>

namespace tel {

namespace {

std::size_t mix(std::size_t seed, std::size_t v)
{
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

Formula make(Op op, std::string name, Formula lhs, Formula rhs)
{
    std::size_t h = mix(static_cast<std::size_t>(op) + 1, std::hash<std::string>{}(name));
    if (lhs) h = mix(h, lhs->hash);
    if (rhs) h = mix(h, rhs->hash);
    return std::make_shared<const Node>(Node{op, std::move(name), std::move(lhs), std::move(rhs), h});
}

}  // namespace

Formula atom(const std::string& name) { return make(Op::Atom, name, nullptr, nullptr); }
Formula bottom() { return make(Op::Bottom, "", nullptr, nullptr); }
Formula top() { return make(Op::Top, "", nullptr, nullptr); }
Formula lnot(Formula a) { return make(Op::Not, "", std::move(a), nullptr); }
Formula land(Formula a, Formula b) { return make(Op::And, "", std::move(a), std::move(b)); }
Formula lor(Formula a, Formula b) { return make(Op::Or, "", std::move(a), std::move(b)); }
Formula implies(Formula a, Formula b) { return make(Op::Implies, "", std::move(a), std::move(b)); }
Formula next(Formula a) { return make(Op::Next, "", std::move(a), nullptr); }
Formula until(Formula a, Formula b) { return make(Op::Until, "", std::move(a), std::move(b)); }
Formula release(Formula a, Formula b) { return make(Op::Release, "", std::move(a), std::move(b)); }
Formula eventually(Formula a) { return make(Op::Eventually, "", std::move(a), nullptr); }
Formula always(Formula a) { return make(Op::Always, "", std::move(a), nullptr); }

Formula conj(const std::vector<Formula>& parts)
{
    if (parts.empty()) return top();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = land(acc, parts[i]);
    return acc;
}

Formula disj(const std::vector<Formula>& parts)
{
    if (parts.empty()) return bottom();
    Formula acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = lor(acc, parts[i]);
    return acc;
}

Formula nextPow(Formula a, int k)
{
    for (int i = 0; i < k; ++i) a = next(a);
    return a;
}

bool isUnary(Op op)
{
    return op == Op::Not || op == Op::Next || op == Op::Eventually || op == Op::Always;
}

bool isBinary(Op op)
{
    return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::Until || op == Op::Release;
}

bool isTemporal(Op op)
{
    return op == Op::Next || op == Op::Until || op == Op::Release || op == Op::Eventually || op == Op::Always;
}

bool equal(const Formula& a, const Formula& b)
{
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->op != b->op || a->name != b->name) return false;
    if (a->lhs && !equal(a->lhs, b->lhs)) return false;
    if (a->rhs && !equal(a->rhs, b->rhs)) return false;
    return true;
}

namespace {

int level(Op op)
{
    switch (op) {
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Until:
    case Op::Release: return 4;
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Always: return 5;
    default: return 6;
    }
}

void printRec(const Formula& f, int ctx, std::string& out)
{
    const int lv = level(f->op);
    const bool paren = lv < ctx;
    if (paren) out += '(';
    switch (f->op) {
    case Op::Atom: out += f->name; break;
    case Op::Bottom: out += "false"; break;
    case Op::Top: out += "true"; break;
    case Op::Not:
        out += '~';
        printRec(f->lhs, 5, out);
        break;
    case Op::Next:
    case Op::Eventually:
    case Op::Always: {
        out += f->op == Op::Next ? 'X' : (f->op == Op::Eventually ? 'F' : 'G');
        if (level(f->lhs->op) >= 5) out += ' ';
        printRec(f->lhs, 5, out);
        break;
    }
    case Op::And:
    case Op::Or:
        printRec(f->lhs, lv, out);
        out += f->op == Op::And ? " & " : " | ";
        printRec(f->rhs, lv + 1, out);
        break;
    case Op::Implies:
    case Op::Until:
    case Op::Release:
        printRec(f->lhs, lv + 1, out);
        out += f->op == Op::Implies ? " -> " : (f->op == Op::Until ? " U " : " R ");
        printRec(f->rhs, lv, out);
        break;
    }
    if (paren) out += ')';
}

}  // namespace

std::string print(const Formula& f)
{
    std::string out;
    printRec(f, 0, out);
    return out;
}

Formula desugar(const Formula& f)
{
    switch (f->op) {
    case Op::Atom:
    case Op::Bottom: return f;
    case Op::Top: return implies(bottom(), bottom());
    case Op::Not: return implies(desugar(f->lhs), bottom());
    case Op::Next: return next(desugar(f->lhs));
    case Op::Eventually: return until(implies(bottom(), bottom()), desugar(f->lhs));
    case Op::Always: return release(bottom(), desugar(f->lhs));
    case Op::And: return land(desugar(f->lhs), desugar(f->rhs));
    case Op::Or: return lor(desugar(f->lhs), desugar(f->rhs));
    case Op::Implies: return implies(desugar(f->lhs), desugar(f->rhs));
    case Op::Until: return until(desugar(f->lhs), desugar(f->rhs));
    case Op::Release: return release(desugar(f->lhs), desugar(f->rhs));
    }
    return f;
}

std::set<std::string> atomsOf(const Formula& f)
{
    std::set<std::string> out;
    for (const auto& g : subformulas(f))
        if (g->op == Op::Atom) out.insert(g->name);
    return out;
}

std::vector<Formula> subformulas(const Formula& f)
{
    std::vector<Formula> order;
    std::unordered_set<Formula, FormulaHash, FormulaEq> seen;
    std::function<void(const Formula&)> visit = [&](const Formula& g) {
        if (seen.count(g)) return;
        if (g->lhs) visit(g->lhs);
        if (g->rhs) visit(g->rhs);
        if (seen.insert(g).second) order.push_back(g);
    };
    visit(f);
    return order;
}

ParseError::ParseError(const std::string& what, std::size_t offset)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset)
{
}

namespace {

enum class Tok { Ident, True, False, Not, X, F, G, U, R, And, Or, Arrow, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

std::vector<Token> lex(const std::string& s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            std::string w = s.substr(i, j - i);
            Tok k = Tok::Ident;
            if (w == "true") k = Tok::True;
            else if (w == "false") k = Tok::False;
            else if (w == "X") k = Tok::X;
            else if (w == "F") k = Tok::F;
            else if (w == "G") k = Tok::G;
            else if (w == "U") k = Tok::U;
            else if (w == "R") k = Tok::R;
            out.push_back({k, w, i});
            i = j;
            continue;
        }
        switch (c) {
        case '~': out.push_back({Tok::Not, "~", i}); ++i; break;
        case '&': out.push_back({Tok::And, "&", i}); ++i; break;
        case '|': out.push_back({Tok::Or, "|", i}); ++i; break;
        case '(': out.push_back({Tok::LParen, "(", i}); ++i; break;
        case ')': out.push_back({Tok::RParen, ")", i}); ++i; break;
        case '-':
            if (i + 1 < s.size() && s[i + 1] == '>') {
                out.push_back({Tok::Arrow, "->", i});
                i += 2;
                break;
            }
            throw ParseError("expected '->'", i);
        default: throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class Parser {
public:
    Parser(const std::string& text, const std::set<std::string>* declared)
        : toks_(lex(text)), declared_(declared)
    {
    }

    Formula run()
    {
        Formula f = implication();
        if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    Formula implication()
    {
        Formula lhs = disjunction();
        if (peek().kind == Tok::Arrow) {
            take();
            return implies(lhs, implication());
        }
        return lhs;
    }

    Formula disjunction()
    {
        Formula acc = conjunction();
        while (peek().kind == Tok::Or) {
            take();
            acc = lor(acc, conjunction());
        }
        return acc;
    }

    Formula conjunction()
    {
        Formula acc = binaryTemporal();
        while (peek().kind == Tok::And) {
            take();
            acc = land(acc, binaryTemporal());
        }
        return acc;
    }

    Formula binaryTemporal()
    {
        Formula lhs = unary();
        if (peek().kind == Tok::U) {
            take();
            return until(lhs, binaryTemporal());
        }
        if (peek().kind == Tok::R) {
            take();
            return release(lhs, binaryTemporal());
        }
        return lhs;
    }

    Formula unary()
    {
        switch (peek().kind) {
        case Tok::Not: take(); return lnot(unary());
        case Tok::X: take(); return next(unary());
        case Tok::F: take(); return eventually(unary());
        case Tok::G: take(); return always(unary());
        default: return primary();
        }
    }

    Formula primary()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Ident: {
            take();
            if (declared_ && !declared_->count(t.text))
                throw ParseError("undeclared atom '" + t.text + "'", t.pos);
            return atom(t.text);
        }
        case Tok::True: take(); return top();
        case Tok::False: take(); return bottom();
        case Tok::LParen: {
            take();
            Formula f = implication();
            if (peek().kind != Tok::RParen) throw ParseError("expected ')'", peek().pos);
            take();
            return f;
        }
        case Tok::End: throw ParseError("unexpected end of input", t.pos);
        default: throw ParseError("unexpected '" + t.text + "'", t.pos);
        }
    }

    std::vector<Token> toks_;
    const std::set<std::string>* declared_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse(const std::string& text) { return Parser(text, nullptr).run(); }

Formula parse(const std::string& text, const std::set<std::string>& declared)
{
    return Parser(text, &declared).run();
}

}  // namespace tel
