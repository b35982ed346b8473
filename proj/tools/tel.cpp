#include "tel/equilibrium.hpp"
#include "tel/formula.hpp"
#include "tel/lasso.hpp"
#include "tel/measures.hpp"
#include "tel/semantics.hpp"
#include "tel/solvers.hpp"
#include "tel/tiling.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

using namespace tel;

namespace {

constexpr int kExitFalse = 1;
constexpr int kExitParse = 2;
constexpr int kExitFragment = 3;
constexpr int kExitCap = 4;

std::string readFile(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// a path to an existing file is read, anything else is taken literally
std::string fileOrText(const std::string& arg)
{
    std::error_code ec;
    return std::filesystem::is_regular_file(arg, ec) ? readFile(arg) : arg;
}

Formula loadFormula(const std::string& arg) { return parse(fileOrText(arg)); }

std::vector<std::string> mergeAtoms(std::vector<std::string> a, const Formula& f)
{
    for (const auto& p : atomsOf(f)) a.push_back(p);
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

Lasso loadLasso(const std::string& arg, const Formula& f)
{
    const std::string text = fileOrText(arg);
    if (text.find("stem=") != std::string::npos || text.find("loop=") != std::string::npos) {
        std::set<std::string> names(atomsOf(f));
        std::string cur;
        for (char c : text) {
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
                cur += c;
            } else {
                if (!cur.empty() && cur != "stem" && cur != "loop") names.insert(cur);
                cur.clear();
            }
        }
        if (!cur.empty() && cur != "stem" && cur != "loop") names.insert(cur);
        return parseInlineLasso(text, {names.begin(), names.end()});
    }
    const Lasso l = parseLasso(text);
    return widen(l, mergeAtoms(l.atoms, f));
}

struct Caps {
    std::string spec;

    SolveConfig apply(SolveConfig c) const
    {
        std::istringstream in(spec);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("cap '" + item + "' is not key=value");
            const std::string key = item.substr(0, eq);
            const std::size_t v = std::stoul(item.substr(eq + 1));
            if (key == "sup") c.supCap = v;
            else if (key == "stem") c.stemBound = v;
            else if (key == "loop") c.loopBound = v;
            else if (key == "descent") c.descentCap = v;
            else if (key == "configs") c.configCap = v;
            else if (key == "candidates") c.candidateCap = v;
            else throw std::invalid_argument("unknown cap '" + key + "'");
        }
        return c;
    }
};

std::pair<std::size_t, std::size_t> parseBounds(const std::string& s)
{
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bounds must be S,L");
    return {std::stoul(s.substr(0, comma)), std::stoul(s.substr(comma + 1))};
}

int runClassify(const std::string& formula)
{
    const Formula f = loadFormula(formula);
    const auto p = measures(f);
    std::cout << "size=" << p.size << " m=" << p.temporalHeight << " k=" << p.implicationHeight
              << " dX=" << p.nextDepth << " modalities=" << modalityList(p.modalities) << "\n"
              << classifyLine(f) << "\n";
    return 0;
}

int runEval(const std::string& formula, const std::string& pair, std::size_t pos)
{
    const Formula f = loadFormula(formula);
    ThtPair m = parsePair(fileOrText(pair));
    const auto atoms = mergeAtoms(m.T.atoms, f);
    m = align(widen(m.H, atoms), widen(m.T, atoms));
    const bool v = thtSat(m, pos, f);
    std::cout << (v ? "true" : "false") << "\n";
    return v ? 0 : kExitFalse;
}

int runEquilibrium(const std::string& formula, const std::string& lasso)
{
    const Formula f = loadFormula(formula);
    const Lasso T = loadLasso(lasso, f);
    const auto v = isEquilibrium(T, f);
    std::cout << "equilibrium=" << (v.yes ? "yes" : "no") << " model=" << (v.model ? "yes" : "no")
              << " counterexample=" << (v.counterexample ? inlineText(*v.counterexample) : std::string("none")) << "\n";
    return v.yes ? 0 : kExitFalse;
}

int runSolve(const std::string& formula, const Caps& caps, unsigned jobs, bool showModel)
{
    const Formula f = loadFormula(formula);
    SolveConfig c;
    c.jobs = jobs;
    const auto v = solveCon(f, caps.apply(c));
    std::cout << verdictLine(v) << "\n";
    if (showModel && v.model) std::cout << blockText(*v.model);
    if (v.status == Status::Consistent) return 0;
    return v.status == Status::Inconsistent ? kExitFalse : kExitCap;
}

int runMinimal(const std::string& formula, const std::string& bounds, std::size_t descentCap, bool showModel)
{
    const Formula f = loadFormula(formula);
    const auto [s, l] = parseBounds(bounds);
    const auto v = minimalLtlExists(f, s, l, descentCap);
    std::cout << minimalLine(v) << "\n";
    if (showModel && v.model) std::cout << blockText(*v.model);
    if (v.status == MinimalStatus::Exists) return 0;
    return v.status == MinimalStatus::None ? kExitFalse : kExitCap;
}

int runOracle(const std::string& formula, std::size_t stem, std::size_t loop, unsigned jobs)
{
    const Formula f = loadFormula(formula);
    const auto models = bruteForceEquilibria(atomList(f), f, stem, loop, jobs);
    std::cout << "equilibria=" << models.size() << " bounds=" << stem << "," << loop << "\n";
    for (const auto& m : models) std::cout << inlineText(m) << "\n";
    return 0;
}

int runGenTiling(const std::string& instance, const std::string& kindName, const std::string& fragment,
                 std::size_t rowCap, const std::string& outDir)
{
    const TilingInstance I = parseInstance(fileOrText(instance));
    const TilingKind kind = parseKind(kindName);
    const Reduction r = parseReduction(fragment);
    if (reductionKind(r) != kind)
        throw FragmentError("fragment " + fragment + " encodes " + tel::kindName(reductionKind(r)) + ", not " + kindName);
    const Formula f = reductionParts(I, r).formula;
    const auto p = measures(f);
    const std::string label = statusLabel(solveTiling(I, kind, rowCap));
    std::cout << "kind: " << kindName << "\nfragment: " << fragmentTag(r) << "\nsize: " << p.size << "\n"
              << instanceText(I) << "formula: " << print(f) << "\nsolvable: " << label << "\n";
    if (!outDir.empty()) {
        std::filesystem::create_directories(outDir);
        std::ofstream(std::filesystem::path(outDir) / "instance.txt") << instanceText(I);
        std::ofstream(std::filesystem::path(outDir) / "formula.txt") << print(f) << "\n";
        std::ofstream(std::filesystem::path(outDir) / "label.txt") << "solvable: " << label << "\n";
    }
    return 0;
}

template <class Fn>
int guarded(Fn&& fn)
{
    try {
        return fn();
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const LassoError& e) {
        std::cerr << "lasso error: " << e.what() << "\n";
        return kExitParse;
    } catch (const ContainmentError& e) {
        std::cerr << "containment error: " << e.what() << "\n";
        return kExitParse;
    } catch (const AtomError& e) {
        std::cerr << "atom error: " << e.what() << "\n";
        return kExitParse;
    } catch (const TilingFormatError& e) {
        std::cerr << "instance error: " << e.what() << "\n";
        return kExitParse;
    } catch (const FragmentError& e) {
        std::cerr << "fragment error: " << e.what() << "\n";
        return kExitFragment;
    } catch (const std::length_error& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitFragment;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"temporal equilibrium logic toolkit"};
    app.require_subcommand(1);
    int code = 0;

    std::string formula, second, bounds = "3,3", kind, fragment, caps, outDir;
    std::size_t pos = 0, stem = 2, loop = 2, descentCap = kDescentWindow, rowCap = 8;
    unsigned jobs = 1;
    bool showModel = false;

    auto* classify = app.add_subcommand("classify", "print the fragment profile of a formula");
    classify->add_option("formula", formula, "formula file or text")->required();
    classify->callback([&] { code = guarded([&] { return runClassify(formula); }); });

    auto* eval = app.add_subcommand("eval", "evaluate a formula on a THT pair");
    eval->add_option("formula", formula, "formula file or text")->required();
    eval->add_option("pair", second, "pair file")->required();
    eval->add_option("--pos", pos, "position");
    eval->callback([&] { code = guarded([&] { return runEval(formula, second, pos); }); });

    auto* equilibrium = app.add_subcommand("equilibrium", "check whether a lasso is an equilibrium model");
    equilibrium->add_option("formula", formula, "formula file or text")->required();
    equilibrium->add_option("lasso", second, "lasso file or stem=...;loop=...")->required();
    equilibrium->callback([&] { code = guarded([&] { return runEquilibrium(formula, second); }); });

    auto* solve = app.add_subcommand("solve", "decide consistency");
    solve->add_option("formula", formula, "formula file or text")->required();
    solve->add_option("--caps", caps, "comma-separated key=value: sup, stem, loop, descent, configs, candidates");
    solve->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    solve->add_flag("--print-model", showModel, "print the model in block form");
    solve->callback([&] { code = guarded([&] { return runSolve(formula, Caps{caps}, jobs, showModel); }); });

    auto* minimal = app.add_subcommand("minimal-ltl", "search for a minimal LTL model");
    minimal->add_option("formula", formula, "formula file or text")->required();
    minimal->add_option("--bounds", bounds, "stem,loop");
    minimal->add_option("--descent-cap", descentCap, "steps of the descent to a minimal model");
    minimal->add_flag("--print-model", showModel, "print the model in block form");
    minimal->callback([&] { code = guarded([&] { return runMinimal(formula, bounds, descentCap, showModel); }); });

    auto* oracle = app.add_subcommand("oracle", "enumerate equilibrium models up to lasso bounds");
    oracle->add_option("formula", formula, "formula file or text")->required();
    oracle->add_option("--stem", stem, "stem bound");
    oracle->add_option("--loop", loop, "loop bound");
    oracle->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    oracle->callback([&] { code = guarded([&] { return runOracle(formula, stem, loop, jobs); }); });

    auto* gen = app.add_subcommand("gen-tiling", "emit a reduction formula for a tiling instance");
    gen->add_option("instance", second, "instance file")->required();
    gen->add_option("--kind", kind, "expspace-rows-2^n, nexptime-square-2^n or pspace-rows-n")->required();
    gen->add_option("--fragment", fragment, "target fragment tag")->required();
    gen->add_option("--row-cap", rowCap, "row cap of the tiling search");
    gen->add_option("--out", outDir, "directory for instance.txt, formula.txt and label.txt");
    gen->callback([&] { code = guarded([&] { return runGenTiling(second, kind, fragment, rowCap, outDir); }); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    return code;
}
