#include "foon/retrieval.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <set>
#include <sstream>

namespace foon {

namespace {
constexpr int kUnreachable = INT_MAX / 4;
}

const char *to_string(RetrievalErrorCode code) {
    switch (code) {
        case RetrievalErrorCode::GoalUnknown: return "GoalUnknown";
        case RetrievalErrorCode::NotFoundWithinDepth: return "NotFoundWithinDepth";
        case RetrievalErrorCode::DeadEnd: return "DeadEnd";
        case RetrievalErrorCode::BudgetExceeded: return "BudgetExceeded";
    }
    return "RetrievalError";
}

RetrievalError::RetrievalError(RetrievalErrorCode code, const std::string &detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

namespace {

// Minimal resolvable depth per node key: 0 for kitchen items, otherwise
// 1 + max over the inputs of the best producing unit. Fixpoint over all
// units; chains are bounded by the unit count.
std::unordered_map<std::string, int> computeMinDepths(const UniversalFOON &foon,
                                                      const Kitchen &kitchen) {
    std::unordered_map<std::string, int> depth;
    for (const auto &[key, node] : foon.nodesByKey())
        depth[key] = kitchen.contains(key) ? 0 : kUnreachable;
    for (const auto &item : kitchen.items()) depth[node_key(item)] = 0;

    const auto &units = foon.units();
    bool changed = true;
    std::size_t sweeps = 0;
    while (changed && sweeps <= units.size() + 1) {
        changed = false;
        ++sweeps;
        for (const auto &unit : units) {
            int worstInput = 0;
            for (const auto &[node, flag] : unit.inputs)
                worstInput = std::max(worstInput, depth.at(node_key(node)));
            if (worstInput >= kUnreachable) continue;
            int cost = worstInput + 1;
            for (const auto &[node, flag] : unit.outputs) {
                int &d = depth.at(node_key(node));
                if (cost < d) {
                    d = cost;
                    changed = true;
                }
            }
        }
    }
    return depth;
}

bool goalKnown(const UniversalFOON &foon, const Kitchen &kitchen,
               const std::string &goalKey) {
    return kitchen.contains(goalKey) || foon.producesKey(goalKey) ||
           foon.consumesKey(goalKey);
}

std::string describeNode(const UniversalFOON &foon, const std::string &key) {
    auto it = foon.nodesByKey().find(key);
    if (it != foon.nodesByKey().end())
        return "'" + it->second.name + "' (" + key + ")";
    return "(" + key + ")";
}

// Node keys reachable backward from the goal through producing units.
std::vector<std::string> backwardReachable(const UniversalFOON &foon,
                                           const Kitchen &kitchen,
                                           const std::string &goalKey) {
    std::vector<std::string> order;
    std::unordered_set<std::string> seen{goalKey};
    std::deque<std::string> queue{goalKey};
    while (!queue.empty()) {
        std::string key = queue.front();
        queue.pop_front();
        order.push_back(key);
        if (kitchen.contains(key)) continue;
        for (std::size_t idx : foon.unitsProducing(key)) {
            for (const auto &[node, flag] : foon.units()[idx].inputs) {
                std::string inKey = node_key(node);
                if (seen.insert(inKey).second) queue.push_back(inKey);
            }
        }
    }
    return order;
}

}  // namespace

TaskTree retrieve_ids(const UniversalFOON &foon, const RetrievalRequest &request,
                      int *foundAtDepth) {
    const std::string goalKey = node_key(request.goal);
    TaskTree tree{{}, request.goal, request.kitchen};
    if (request.kitchen.contains(goalKey)) {
        if (foundAtDepth) *foundAtDepth = 0;
        return tree;
    }
    if (!goalKnown(foon, request.kitchen, goalKey))
        throw RetrievalError(RetrievalErrorCode::GoalUnknown,
                             "goal node " + goalKey +
                                 " appears nowhere in the FOON or kitchen");

    auto depth = computeMinDepths(foon, request.kitchen);
    auto depthOf = [&](const std::string &key) {
        auto it = depth.find(key);
        return it == depth.end() ? kUnreachable : it->second;
    };

    int found = depthOf(goalKey);
    if (found > request.depthLimit) {
        std::ostringstream os;
        os << "no solution within depth limit " << request.depthLimit
           << "; unresolved frontier:";
        for (const auto &key : backwardReachable(foon, request.kitchen, goalKey))
            if (depthOf(key) > request.depthLimit)
                os << ' ' << describeNode(foon, key);
        throw RetrievalError(RetrievalErrorCode::NotFoundWithinDepth, os.str());
    }
    if (foundAtDepth) *foundAtDepth = found;

    // Unit cost within the current resolution: 1 + the deepest input.
    auto unitCost = [&](const FunctionalUnit &unit) {
        int worst = 0;
        for (const auto &[node, flag] : unit.inputs)
            worst = std::max(worst, depthOf(node_key(node)));
        return worst >= kUnreachable ? kUnreachable : worst + 1;
    };

    // Resolve each needed node with the first producing unit (insertion
    // order) that achieves its minimal depth; emit producers before
    // consumers. Depths strictly decrease along inputs, so this cannot loop.
    std::vector<std::size_t> steps;
    std::unordered_set<std::size_t> emitted;
    std::unordered_set<std::string> resolved;
    auto resolve = [&](auto &&self, const std::string &key) -> void {
        if (request.kitchen.contains(key)) return;
        if (!resolved.insert(key).second) return;
        for (std::size_t idx : foon.unitsProducing(key)) {
            const FunctionalUnit &unit = foon.units()[idx];
            if (unitCost(unit) != depthOf(key)) continue;
            for (const auto &[node, flag] : unit.inputs) self(self, node_key(node));
            if (emitted.insert(idx).second) steps.push_back(idx);
            return;
        }
    };
    resolve(resolve, goalKey);

    for (std::size_t idx : steps) tree.steps.push_back(foon.units()[idx]);
    return tree;
}

namespace {

// Execution-order linearization of the selected units. Prefers the
// latest-selected runnable unit, which reproduces the reversed discovery
// order on layered graphs.
std::vector<std::size_t> linearize(const UniversalFOON &foon,
                                   const Kitchen &kitchen,
                                   const std::vector<std::size_t> &discovered) {
    std::unordered_set<std::string> available;
    for (const auto &item : kitchen.items()) available.insert(node_key(item));
    std::vector<std::size_t> order;
    std::vector<bool> done(discovered.size(), false);
    for (std::size_t emittedCount = 0; emittedCount < discovered.size();) {
        bool progress = false;
        for (std::size_t i = discovered.size(); i-- > 0;) {
            if (done[i]) continue;
            const FunctionalUnit &unit = foon.units()[discovered[i]];
            bool ready = true;
            for (const auto &[node, flag] : unit.inputs)
                if (!available.count(node_key(node))) {
                    ready = false;
                    break;
                }
            if (!ready) continue;
            done[i] = true;
            order.push_back(discovered[i]);
            for (const auto &[node, flag] : unit.outputs)
                available.insert(node_key(node));
            ++emittedCount;
            progress = true;
            break;
        }
        if (!progress) {
            std::ostringstream os;
            os << "selected units form an unexecutable cycle; stuck on motions:";
            for (std::size_t i = 0; i < discovered.size(); ++i)
                if (!done[i]) os << " '" << foon.units()[discovered[i]].motion.name << "'";
            throw RetrievalError(RetrievalErrorCode::DeadEnd, os.str());
        }
    }
    return order;
}

}  // namespace

TaskTree retrieve_gbfs(const UniversalFOON &foon, const RetrievalRequest &request,
                       std::vector<GbfsSelection> *trace) {
    if (request.algorithm == Algorithm::GBFS_H1 && !request.rates)
        throw std::invalid_argument("GBFS-H1 requires motion success rates");

    const std::string goalKey = node_key(request.goal);
    TaskTree tree{{}, request.goal, request.kitchen};
    if (request.kitchen.contains(goalKey)) return tree;
    if (!goalKnown(foon, request.kitchen, goalKey))
        throw RetrievalError(RetrievalErrorCode::GoalUnknown,
                             "goal node " + goalKey +
                                 " appears nowhere in the FOON or kitchen");

    MotionRates noRates(0.0);
    const MotionRates &rates = request.rates ? *request.rates : noRates;
    const bool preferRate = request.algorithm == Algorithm::GBFS_H1;

    std::deque<std::string> queue{goalKey};
    std::unordered_set<std::string> visited{goalKey};
    std::vector<std::size_t> discovered;
    std::unordered_set<std::size_t> chosen;
    std::unordered_set<std::string> produced;

    while (!queue.empty()) {
        std::string key = queue.front();
        queue.pop_front();
        if (request.kitchen.contains(key)) continue;
        if (produced.count(key)) continue;  // already covered by a selection

        const auto &candidates = foon.unitsProducing(key);
        if (candidates.empty()) {
            std::ostringstream os;
            os << "node " << describeNode(foon, key)
               << " is neither in the kitchen nor produced by any unit;"
               << " partial tree has " << discovered.size() << " step(s):";
            for (std::size_t idx : discovered)
                os << " '" << foon.units()[idx].motion.name << "'";
            throw RetrievalError(RetrievalErrorCode::DeadEnd, os.str());
        }

        // H1: highest success rate, then fewer inputs. H2: fewest inputs,
        // then higher success rate. Insertion order breaks remaining ties.
        std::size_t best = candidates[0];
        auto better = [&](std::size_t a, std::size_t b) {
            const FunctionalUnit &ua = foon.units()[a];
            const FunctionalUnit &ub = foon.units()[b];
            double ra = rates.get(ua.motion.name);
            double rb = rates.get(ub.motion.name);
            std::size_t ia = ua.inputs.size();
            std::size_t ib = ub.inputs.size();
            if (preferRate) {
                if (ra != rb) return ra > rb;
                return ia < ib;
            }
            if (ia != ib) return ia < ib;
            return ra > rb;
        };
        for (std::size_t idx : candidates)
            if (better(idx, best)) best = idx;

        if (trace)
            trace->push_back(GbfsSelection{
                key, best, std::vector<std::size_t>(candidates.begin(), candidates.end())});

        if (chosen.insert(best).second) {
            discovered.push_back(best);
            const FunctionalUnit &unit = foon.units()[best];
            // A node this unit both consumes and produces (e.g. a container
            // that passes through) is not covered by the unit itself.
            std::unordered_set<std::string> ownInputs;
            for (const auto &[node, flag] : unit.inputs) ownInputs.insert(node_key(node));
            for (const auto &[node, flag] : unit.outputs)
                if (!ownInputs.count(node_key(node))) produced.insert(node_key(node));
            for (const auto &[node, flag] : unit.inputs) {
                std::string inKey = node_key(node);
                if (visited.insert(inKey).second) queue.push_back(inKey);
            }
        }
    }

    for (std::size_t idx : linearize(foon, request.kitchen, discovered))
        tree.steps.push_back(foon.units()[idx]);
    return tree;
}

TaskTree retrieve(const UniversalFOON &foon, const RetrievalRequest &request) {
    if (request.algorithm == Algorithm::IDS) return retrieve_ids(foon, request);
    return retrieve_gbfs(foon, request);
}

ValidationReport validate_task_tree(const TaskTree &tree, const Kitchen &kitchen) {
    ValidationReport report;
    std::unordered_set<std::string> available;
    for (const auto &item : kitchen.items()) available.insert(node_key(item));
    for (std::size_t i = 0; i < tree.steps.size(); ++i) {
        for (const auto &[node, flag] : tree.steps[i].inputs) {
            std::string key = node_key(node);
            if (!available.count(key)) {
                report.ok = false;
                report.violatingStep = i;
                report.violatingInputKey = key;
                report.message = "step " + std::to_string(i) + " ('" +
                                 tree.steps[i].motion.name + "') consumes '" + key +
                                 "' before it is available";
                return report;
            }
        }
        for (const auto &[node, flag] : tree.steps[i].outputs)
            available.insert(node_key(node));
    }
    if (!available.count(node_key(tree.goal))) {
        report.ok = false;
        report.message = "goal node is never produced";
    }
    return report;
}

namespace {

struct OracleState {
    std::vector<std::string> pending;
    std::size_t head = 0;
    std::unordered_set<std::string> visited;
    std::vector<std::size_t> chosen;
    std::unordered_set<std::size_t> chosenSet;
    std::unordered_set<std::string> produced;
};

class OracleSearch {
public:
    OracleSearch(const UniversalFOON &foon, const Kitchen &kitchen,
                 const OracleOptions &options)
        : foon_(foon), kitchen_(kitchen), options_(options) {}

    void run(const std::string &goalKey) {
        OracleState start;
        start.pending.push_back(goalKey);
        start.visited.insert(goalKey);
        expand(start);
    }

    std::set<std::vector<std::size_t>> results;

private:
    void expand(OracleState state) {
        while (true) {
            if (++expansions_ > options_.expansionBudget)
                throw RetrievalError(RetrievalErrorCode::BudgetExceeded,
                                     "oracle enumeration exceeded " +
                                         std::to_string(options_.expansionBudget) +
                                         " expansions");
            if (state.head == state.pending.size()) {
                record(state);
                return;
            }
            std::string key = state.pending[state.head++];
            if (kitchen_.contains(key)) continue;

            bool satisfied = state.produced.count(key) > 0;
            const auto &candidates = foon_.unitsProducing(key);
            if (!satisfied && candidates.empty()) return;  // dead branch

            // Branch over every producer; when the node is already covered
            // by an earlier choice, also branch on adding nothing.
            for (std::size_t idx : candidates) {
                if (state.chosenSet.count(idx)) continue;
                if (state.chosen.size() >= options_.maxUnits) continue;
                OracleState child = state;
                child.chosen.push_back(idx);
                child.chosenSet.insert(idx);
                const FunctionalUnit &unit = foon_.units()[idx];
                std::unordered_set<std::string> ownInputs;
                for (const auto &[node, flag] : unit.inputs)
                    ownInputs.insert(node_key(node));
                for (const auto &[node, flag] : unit.outputs)
                    if (!ownInputs.count(node_key(node)))
                        child.produced.insert(node_key(node));
                for (const auto &[node, flag] : unit.inputs) {
                    std::string inKey = node_key(node);
                    if (child.visited.insert(inKey).second)
                        child.pending.push_back(inKey);
                }
                expand(std::move(child));
            }
            if (!satisfied) return;
        }
    }

    void record(const OracleState &state) {
        std::vector<std::size_t> sorted = state.chosen;
        std::sort(sorted.begin(), sorted.end());
        results.insert(std::move(sorted));
    }

    const UniversalFOON &foon_;
    const Kitchen &kitchen_;
    const OracleOptions &options_;
    std::size_t expansions_ = 0;
};

}  // namespace

std::vector<TaskTree> oracle_enumerate(const UniversalFOON &foon,
                                       const ObjectNode &goal,
                                       const Kitchen &kitchen,
                                       const OracleOptions &options) {
    std::vector<TaskTree> trees;
    const std::string goalKey = node_key(goal);
    if (kitchen.contains(goalKey)) {
        trees.push_back(TaskTree{{}, goal, kitchen});
        return trees;
    }

    OracleSearch search(foon, kitchen, options);
    search.run(goalKey);

    for (const auto &unitSet : search.results) {
        // Deterministic execution order: repeatedly run the lowest-index
        // runnable unit. Unexecutable sets (circular selections) are not
        // valid task trees and are dropped.
        std::unordered_set<std::string> available;
        for (const auto &item : kitchen.items()) available.insert(node_key(item));
        std::vector<std::size_t> remaining = unitSet;
        TaskTree tree{{}, goal, kitchen};
        bool stuck = false;
        while (!remaining.empty() && !stuck) {
            stuck = true;
            for (auto it = remaining.begin(); it != remaining.end(); ++it) {
                const FunctionalUnit &unit = foon.units()[*it];
                bool ready = true;
                for (const auto &[node, flag] : unit.inputs)
                    if (!available.count(node_key(node))) {
                        ready = false;
                        break;
                    }
                if (!ready) continue;
                for (const auto &[node, flag] : unit.outputs)
                    available.insert(node_key(node));
                tree.steps.push_back(unit);
                remaining.erase(it);
                stuck = false;
                break;
            }
        }
        if (!stuck && available.count(goalKey)) trees.push_back(std::move(tree));
    }
    return trees;
}

int tree_chain_depth(const TaskTree &tree) {
    std::unordered_map<std::string, int> depth;
    auto keyDepth = [&](const std::string &key) {
        if (tree.kitchen.contains(key)) return 0;
        auto it = depth.find(key);
        return it == depth.end() ? kUnreachable : it->second;
    };
    bool changed = true;
    std::size_t sweeps = 0;
    while (changed && sweeps <= tree.steps.size() + 1) {
        changed = false;
        ++sweeps;
        for (const auto &unit : tree.steps) {
            int worst = 0;
            for (const auto &[node, flag] : unit.inputs)
                worst = std::max(worst, keyDepth(node_key(node)));
            if (worst >= kUnreachable) continue;
            for (const auto &[node, flag] : unit.outputs) {
                std::string key = node_key(node);
                if (tree.kitchen.contains(key)) continue;
                if (worst + 1 < keyDepth(key)) {
                    depth[key] = worst + 1;
                    changed = true;
                }
            }
        }
    }
    return keyDepth(node_key(tree.goal));
}

}  // namespace foon
