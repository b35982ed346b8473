#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tel {

enum class Op : unsigned char {
    Atom,
    Bottom,
    Top,
    Not,
    And,
    Or,
    Implies,
    Next,
    Until,
    Release,
    Eventually,
    Always
};

struct Node;
using Formula = std::shared_ptr<const Node>;

struct Node {
    Op op;
    std::string name;
    Formula lhs;
    Formula rhs;
    std::size_t hash;
};

Formula atom(const std::string& name);
Formula bottom();
Formula top();
Formula lnot(Formula a);
Formula land(Formula a, Formula b);
Formula lor(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula next(Formula a);
Formula until(Formula a, Formula b);
Formula release(Formula a, Formula b);
Formula eventually(Formula a);
Formula always(Formula a);

// n-ary helpers; empty conjunction is Top, empty disjunction is Bottom
Formula conj(const std::vector<Formula>& parts);
Formula disj(const std::vector<Formula>& parts);
Formula nextPow(Formula a, int k);

bool isUnary(Op op);
bool isBinary(Op op);
bool isTemporal(Op op);

bool equal(const Formula& a, const Formula& b);

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f->hash; }
};
struct FormulaEq {
    bool operator()(const Formula& a, const Formula& b) const { return equal(a, b); }
};

std::string print(const Formula& f);

// rewrites Not, Top, Eventually and Always into the core constructors
Formula desugar(const Formula& f);

std::set<std::string> atomsOf(const Formula& f);

// distinct subformulas in post-order (children before parents), root last
std::vector<Formula> subformulas(const Formula& f);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

Formula parse(const std::string& text);
Formula parse(const std::string& text, const std::set<std::string>& declared);

}  // namespace tel
