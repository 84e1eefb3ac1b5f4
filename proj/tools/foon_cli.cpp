#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>

#include "foon/core.hpp"
#include "foon/exporter.hpp"
#include "foon/parse.hpp"
#include "foon/retrieval.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitRetrieval = 3;

void emit(const std::string &payload, const std::string &outputPath) {
    if (outputPath.empty())
        std::cout << payload;
    else
        foon::write_file(outputPath, payload);
}

std::vector<foon::FunctionalUnit> loadUnits(const std::string &path) {
    std::string text = foon::read_file(path);
    auto firstByte = text.find_first_not_of(" \t\r\n");
    if (firstByte != std::string::npos && text[firstByte] == '{')
        return foon::from_json(text);
    return foon::parse_subgraph(text);
}

void printStats(const foon::GraphStats &stats) {
    std::cout << "units: " << stats.unitCount
              << "\nobject nodes: " << stats.objectNodeCount
              << "\nmotions: " << stats.motionCount << "\n";
}

int cmdMerge(const std::vector<std::string> &inputs, const std::string &output) {
    foon::UniversalFOON foon;
    for (const auto &path : inputs) {
        try {
            foon.mergeSubgraph(loadUnits(path));
        } catch (const std::exception &err) {
            std::cerr << path << ": " << err.what() << "\n";
            return kExitParse;
        }
    }
    if (!output.empty()) foon::write_file(output, foon::serialize_subgraph(foon.units()));
    printStats(foon.stats());
    return kExitOk;
}

int cmdStats(const std::string &input) {
    foon::UniversalFOON foon;
    try {
        foon.mergeSubgraph(loadUnits(input));
    } catch (const std::exception &err) {
        std::cerr << input << ": " << err.what() << "\n";
        return kExitParse;
    }
    printStats(foon.stats());
    return kExitOk;
}

int cmdExport(const std::string &input, const std::string &format,
              const std::string &output) {
    std::vector<foon::FunctionalUnit> units;
    try {
        units = loadUnits(input);
    } catch (const std::exception &err) {
        std::cerr << input << ": " << err.what() << "\n";
        return kExitParse;
    }
    if (format == "dot")
        emit(foon::to_dot(units), output);
    else if (format == "json")
        emit(foon::to_json(units), output);
    else
        emit(foon::serialize_subgraph(units), output);
    return kExitOk;
}

struct RetrieveArgs {
    std::string foonFile;
    std::string kitchenFile;
    std::string goalName;
    std::vector<std::string> goalStates;
    std::string algo = "ids";
    int depth = 64;
    std::string ratesFile;
    double defaultRate = 0.0;
    std::string format = "foon";
    std::string output;
};

// A name-only goal is resolved against the graph and kitchen; it must match
// exactly one node key, otherwise the candidates are listed and the call
// fails.
foon::ObjectNode resolveGoal(const foon::UniversalFOON &graph,
                             const foon::Kitchen &kitchen,
                             const RetrieveArgs &args) {
    foon::ObjectNode goal;
    goal.name = foon::normalize(args.goalName);
    if (!args.goalStates.empty()) {
        for (const auto &spec : args.goalStates)
            goal.states.insert(foon::parse_state_spec(spec));
        return goal;
    }
    std::vector<foon::ObjectNode> matches;
    std::unordered_set<std::string> seen;
    for (const auto &[key, node] : graph.nodesByKey())
        if (node.name == goal.name && seen.insert(key).second) matches.push_back(node);
    for (const auto &node : kitchen.items())
        if (node.name == goal.name && seen.insert(foon::node_key(node)).second)
            matches.push_back(node);
    if (matches.size() == 1) return matches[0];
    if (matches.empty())
        throw foon::RetrievalError(foon::RetrievalErrorCode::GoalUnknown,
                                   "no node named '" + goal.name + "'");
    std::ostringstream os;
    os << "goal name '" << goal.name << "' is ambiguous; candidates:";
    for (const auto &node : matches) os << "\n  " << foon::node_key(node);
    os << "\nuse --goal-state to pick one";
    throw std::runtime_error(os.str());
}

int cmdRetrieve(const RetrieveArgs &args) {
    foon::UniversalFOON graph;
    foon::RetrievalRequest request;
    try {
        graph.mergeSubgraph(loadUnits(args.foonFile));
        request.kitchen = foon::parse_kitchen(foon::read_file(args.kitchenFile));
        if (!args.ratesFile.empty())
            request.rates = foon::parse_motion_rates(foon::read_file(args.ratesFile),
                                                     args.defaultRate);
    } catch (const std::exception &err) {
        std::cerr << err.what() << "\n";
        return kExitParse;
    }

    request.depthLimit = args.depth;
    if (args.algo == "ids")
        request.algorithm = foon::Algorithm::IDS;
    else if (args.algo == "h1")
        request.algorithm = foon::Algorithm::GBFS_H1;
    else
        request.algorithm = foon::Algorithm::GBFS_H2;

    try {
        request.goal = resolveGoal(graph, request.kitchen, args);
        foon::TaskTree tree = foon::retrieve(graph, request);
        if (args.format == "json")
            emit(foon::to_json(tree.steps), args.output);
        else if (args.format == "dot")
            emit(foon::to_dot(tree.steps), args.output);
        else
            emit(foon::serialize_subgraph(tree.steps), args.output);
        std::cerr << "task tree size: " << foon::tree_size(tree) << "\n";
    } catch (const foon::RetrievalError &err) {
        std::cerr << err.what() << "\n";
        return kExitRetrieval;
    } catch (const std::exception &err) {
        std::cerr << err.what() << "\n";
        return kExitRetrieval;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"FOON toolkit: merge subgraphs, inspect the universal graph, "
                 "and retrieve task trees"};
    app.require_subcommand(1);

    std::vector<std::string> mergeInputs;
    std::string mergeOutput;
    auto *merge = app.add_subcommand("merge", "Merge subgraph files into one FOON");
    merge->add_option("inputs", mergeInputs, "subgraph files")->required();
    merge->add_option("-o,--output", mergeOutput, "write the merged FOON here");

    std::string statsInput;
    auto *stats = app.add_subcommand("stats", "Print unit/node/motion counts");
    stats->add_option("input", statsInput, "FOON file")->required();

    std::string exportInput, exportFormat = "dot", exportOutput;
    auto *exp = app.add_subcommand("export", "Render a FOON or task tree");
    exp->add_option("input", exportInput, "FOON text or JSON file")->required();
    exp->add_option("-f,--format", exportFormat, "dot, json or foon")
        ->check(CLI::IsMember({"dot", "json", "foon"}));
    exp->add_option("-o,--output", exportOutput, "output file (default stdout)");

    RetrieveArgs r;
    if (const char *env = std::getenv("FOON_DEFAULT_RATE")) r.defaultRate = std::atof(env);
    auto *retrieve = app.add_subcommand("retrieve", "Retrieve a task tree for a goal");
    retrieve->add_option("foon", r.foonFile, "universal FOON file")->required();
    retrieve->add_option("-k,--kitchen", r.kitchenFile, "kitchen inventory file")
        ->required();
    retrieve->add_option("-g,--goal-name", r.goalName, "goal object name")->required();
    retrieve->add_option("-s,--goal-state", r.goalStates,
                         "goal state, e.g. 'contains {a, b}' or 'in [bowl]'");
    retrieve->add_option("-a,--algo", r.algo, "ids, h1 or h2")
        ->check(CLI::IsMember({"ids", "h1", "h2"}));
    retrieve->add_option("-d,--depth", r.depth, "IDS depth limit")
        ->check(CLI::PositiveNumber);
    retrieve->add_option("--rates", r.ratesFile, "motion success rates file (h1)");
    retrieve->add_option("--default-rate", r.defaultRate,
                         "rate for motions missing from the rates file");
    retrieve->add_option("-f,--format", r.format, "foon, json or dot")
        ->check(CLI::IsMember({"foon", "json", "dot"}));
    retrieve->add_option("-o,--output", r.output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &err) {
        app.exit(err);
        return err.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    if (merge->parsed()) return cmdMerge(mergeInputs, mergeOutput);
    if (stats->parsed()) return cmdStats(statsInput);
    if (exp->parsed()) return cmdExport(exportInput, exportFormat, exportOutput);
    if (retrieve->parsed()) {
        if (r.algo == "h1" && r.ratesFile.empty()) {
            std::cerr << "--algo h1 requires --rates\n";
            return kExitUsage;
        }
        return cmdRetrieve(r);
    }
    return kExitUsage;
}
