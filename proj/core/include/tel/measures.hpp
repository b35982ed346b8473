#pragma once

#include "tel/formula.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace tel {

// modality bits, in display order X F G U R
enum Modality : unsigned {
    ModX = 1u << 0,
    ModF = 1u << 1,
    ModG = 1u << 2,
    ModU = 1u << 3,
    ModR = 1u << 4,
    ModAll = 0x1f
};

struct FragmentProfile {
    unsigned modalities = 0;
    int temporalHeight = 0;
    int implicationHeight = 0;
    int nextDepth = 0;
    int size = 1;
    int untilCount = 0;  // distinct U and F subformulas
};

FragmentProfile measures(const Formula& f);

class FragmentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// THT_m^k(O...): absent bound means unbounded
struct FragmentSpec {
    unsigned modalities = ModAll;
    std::optional<int> maxTemporal;
    std::optional<int> maxImplication;
};

bool inFragment(const Formula& f, const FragmentSpec& spec);
bool inFragment(const FragmentProfile& p, const FragmentSpec& spec);

// membership where F counts as U and G counts as R; used by the solver dispatch
bool inFamily(const FragmentProfile& p, const FragmentSpec& spec);

std::string modalityList(unsigned mods);
std::string fragmentName(const FragmentProfile& p);

// parses names such as "THT_2^1(F,G)", "THT^1(X,R)", "THT_1", "HT"
FragmentSpec parseFragment(const std::string& name);

}  // namespace tel
