#ifndef FOON_TESTS_SUPPORT_HPP
#define FOON_TESTS_SUPPORT_HPP

#include <random>
#include <set>
#include <string>
#include <vector>

#include "foon/core.hpp"
#include "foon/parse.hpp"
#include "foon/retrieval.hpp"

namespace foon::testing {

inline std::string dataPath(const std::string &name) {
    return std::string(FOON_DATA_DIR) + "/" + name;
}

inline UniversalFOON loadGraph(const std::string &name) {
    UniversalFOON graph;
    graph.mergeSubgraph(parse_subgraph(read_file(dataPath(name))));
    return graph;
}

inline Kitchen loadKitchen(const std::string &name) {
    return parse_kitchen(read_file(dataPath(name)));
}

inline ObjectNode makeNode(const std::string &name,
                           const std::vector<ObjectState> &states) {
    ObjectNode node{name, {}};
    for (const auto &s : states) node.states.insert(s);
    return node;
}

inline std::set<std::string> unitKeySet(const std::vector<FunctionalUnit> &units) {
    std::set<std::string> keys;
    for (const auto &u : units) keys.insert(unit_key(u));
    return keys;
}

// A randomly generated solvable FOON: layered units whose inputs are always
// drawn from already-producible nodes, so the last unit's output is a
// reachable goal.
struct SyntheticFoon {
    UniversalFOON graph;
    Kitchen kitchen;
    ObjectNode goal;
    MotionRates rates{0.0};
    std::vector<FunctionalUnit> rawUnits;
};

inline SyntheticFoon makeRandomFoon(std::mt19937 &rng, int maxUnits = 12) {
    SyntheticFoon f;
    std::uniform_int_distribution<int> baseCount(2, 4);
    std::uniform_int_distribution<int> unitCount(3, maxUnits);
    std::uniform_real_distribution<double> rate(0.05, 1.0);

    std::vector<ObjectNode> available;
    int nBase = baseCount(rng);
    for (int i = 0; i < nBase; ++i) {
        ObjectNode node = makeNode("base " + std::to_string(i), {{"ready", {}, {}}});
        f.kitchen.add(node);
        available.push_back(node);
    }

    int nUnits = unitCount(rng);
    int produced = 0;
    for (int u = 0; u < nUnits; ++u) {
        FunctionalUnit unit;
        std::uniform_int_distribution<int> inCount(1, 3);
        int nIn = std::min<int>(inCount(rng), static_cast<int>(available.size()));
        std::set<std::string> used;
        std::size_t newestInput = 0;
        for (int i = 0; i < nIn; ++i) {
            std::uniform_int_distribution<std::size_t> pick(0, available.size() - 1);
            std::size_t at = pick(rng);
            const ObjectNode &node = available[at];
            if (!used.insert(node_key(node)).second) continue;
            unit.inputs.emplace_back(node, rng() % 2);
            newestInput = std::max(newestInput, at);
        }
        // Shared motion names give H1 real choices between candidates.
        std::uniform_int_distribution<int> motionPick(0, 5);
        unit.motion.name = "motion " + std::to_string(motionPick(rng));
        unit.motion.assumed = true;

        std::uniform_int_distribution<int> outCount(1, 2);
        int nOut = outCount(rng);
        for (int i = 0; i < nOut; ++i) {
            // Sometimes re-produce an existing node so goals have several
            // candidate producers. Only nodes created after every input are
            // eligible, which keeps production layered the way annotated
            // recipes are.
            if (rng() % 4 == 0 && newestInput + 1 < available.size()) {
                std::uniform_int_distribution<std::size_t> pick(newestInput + 1,
                                                                available.size() - 1);
                const ObjectNode &node = available[pick(rng)];
                if (!f.kitchen.containsNode(node)) {
                    unit.outputs.emplace_back(node, 0);
                    continue;
                }
            }
            ObjectNode node =
                makeNode("item " + std::to_string(produced++), {{"done", {}, {}}});
            unit.outputs.emplace_back(node, 0);
            available.push_back(node);
        }
        f.rawUnits.push_back(unit);
    }
    f.graph.mergeSubgraph(f.rawUnits);
    f.goal = f.rawUnits.back().outputs.front().first;

    for (int m = 0; m <= 5; ++m)
        f.rates.set("motion " + std::to_string(m), rate(rng));
    return f;
}

// Random functional units with the full range of state shapes, for
// serialization round-trip properties.
inline FunctionalUnit makeRandomUnit(std::mt19937 &rng) {
    std::uniform_int_distribution<int> small(1, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    auto randomNode = [&](int tag) {
        ObjectNode node;
        node.name = "obj " + std::to_string(rng() % 50) + " " + std::to_string(tag);
        int nStates = small(rng);
        for (int s = 0; s < nStates; ++s) {
            ObjectState state;
            state.label = "state " + std::to_string(rng() % 8);
            int nIng = static_cast<int>(rng() % 3);
            for (int i = 0; i < nIng; ++i)
                state.ingredients.insert("ing " + std::to_string(rng() % 10));
            if (coin(rng)) state.container = "box " + std::to_string(rng() % 5);
            node.states.insert(state);
        }
        return node;
    };
    FunctionalUnit unit;
    int nIn = small(rng);
    for (int i = 0; i < nIn; ++i) unit.inputs.emplace_back(randomNode(i), coin(rng));
    unit.motion.name = "motion " + std::to_string(rng() % 12);
    if (coin(rng)) {
        unit.motion.assumed = true;
    } else {
        int start = static_cast<int>(rng() % 300);
        int end = start + static_cast<int>(rng() % 120);
        auto text = [](int sec) {
            return std::to_string(sec / 60) + ":" +
                   (sec % 60 < 10 ? "0" : "") + std::to_string(sec % 60);
        };
        unit.motion.start = Timestamp{start, text(start)};
        unit.motion.end = Timestamp{end, text(end)};
    }
    int nOut = small(rng);
    for (int i = 0; i < nOut; ++i) unit.outputs.emplace_back(randomNode(100 + i), coin(rng));
    return unit;
}

}  // namespace foon::testing

#endif
