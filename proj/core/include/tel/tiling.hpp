#pragma once

#include "tel/formula.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tel {

struct Domino {
    std::string down, left, up, right;
    bool operator==(const Domino& o) const
    {
        return down == o.down && left == o.left && up == o.up && right == o.right;
    }
};

// dominoes are referred to by index; d_init and d_final index into them
struct TilingInstance {
    std::vector<std::string> colors;
    std::vector<Domino> dominoes;
    int n = 1;
    std::size_t init = 0;
    std::size_t final = 0;
};

class TilingFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void validate(const TilingInstance& I);

// colors: a b / domino: down left up right / n: k / init: i / final: j
std::string instanceText(const TilingInstance& I);
TilingInstance parseInstance(const std::string& text);

enum class TilingKind { ExpspaceRows, NexptimeSquare, PspaceRows };

std::string kindName(TilingKind k);
TilingKind parseKind(const std::string& name);

// columns of the grid: 2^n for the exponential kinds, n otherwise
std::size_t tilingWidth(const TilingInstance& I, TilingKind kind);

// rows of domino indices, first row first
using Tiling = std::vector<std::vector<std::size_t>>;

enum class TilingStatus { Found, None, CapReached };

struct TilingOutcome {
    TilingStatus status = TilingStatus::None;
    std::optional<Tiling> tiling;
};

// adjacency, initialization and acceptance; with normalize, d_final occurs only in the last cell
bool isTiling(const TilingInstance& I, TilingKind kind, const Tiling& f, bool normalize = true);

// breadth-first over rows, so the tiling found has the fewest rows;
// CapReached only when rows beyond rowCap could still lead to a tiling
TilingOutcome solveTiling(const TilingInstance& I, TilingKind kind, std::size_t rowCap, bool normalize = true);

std::string statusLabel(const TilingOutcome& o);

// generated formulas use these atom names
std::string dominoAtom(std::size_t d);                   // d_<index>
std::string numAtom(int i, int b);                       // num_<i>_<b>
std::string tagAtom(int i);                              // tag_<i>
std::string rowBitAtom(int i, int b);                    // r_<i>_<b>
std::string colBitAtom(int i, int b);                    // c_<i>_<b>
std::string barAtom(char axis, int i, int b);            // barr_<i>_<b>, barc_<i>_<b>
std::string cellAtom(int i, std::size_t d);              // cell_<i>_<d>
inline const char* const kDollarAtom = "dollar";
inline const char* const kMarkAtom = "u";

enum class Reduction { ExpspaceFG, ExpspaceG, ExpspaceU, NexptimeFG, NexptimeU, NexptimeR, PspacePositive };

std::string fragmentTag(Reduction r);
TilingKind reductionKind(Reduction r);
// "THT_2^1(F,G)", "THT_2^2(G)", "THT_2^2(U)", "THT_1^2(F,G)", "THT_1^2(U)", "THT_1^2(R)", "THT^0(X,F,G)"
Reduction parseReduction(const std::string& fragment);

struct ReductionParts {
    Formula pseudo;
    Formula bad;
    Formula formula;  // pseudo & (u | bad), or the positive formula
};

ReductionParts reductionParts(const TilingInstance& I, Reduction r);

Formula encodeExpspaceFG(const TilingInstance& I);
Formula encodeNexptimeFG(const TilingInstance& I);
Formula encodePspacePositive(const TilingInstance& I);
// THT_2^2(G), THT_2^2(U), THT_1^2(U), THT_1^2(R); throws std::invalid_argument otherwise
Formula encodeVariant(const TilingInstance& I, const std::string& fragment);

// segment marker theta(i_1|P_1, ..., i_k|P_k) over main atoms of the exponential-row encodings
struct Mark {
    int tag;
    std::vector<std::string> allowed;
};
Formula theta(const TilingInstance& I, Reduction r, const std::vector<Mark>& marks);

// P_main of the exponential-row encodings: dominoes, dollar, num bits
std::vector<std::string> rowMainAtoms(const TilingInstance& I);

}  // namespace tel
