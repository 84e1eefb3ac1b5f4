#ifndef FOON_RETRIEVAL_HPP
#define FOON_RETRIEVAL_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "foon/core.hpp"
#include "foon/parse.hpp"

namespace foon {

enum class Algorithm { IDS, GBFS_H1, GBFS_H2 };

enum class RetrievalErrorCode {
    GoalUnknown,
    NotFoundWithinDepth,
    DeadEnd,
    BudgetExceeded,
};

const char *to_string(RetrievalErrorCode code);

class RetrievalError : public std::runtime_error {
public:
    RetrievalError(RetrievalErrorCode code, const std::string &detail);
    RetrievalErrorCode code() const { return code_; }

private:
    RetrievalErrorCode code_;
};

// Units in execution order: each step's inputs are either in the kitchen or
// outputs of an earlier step.
struct TaskTree {
    std::vector<FunctionalUnit> steps;
    ObjectNode goal;
    Kitchen kitchen;
};

inline std::size_t tree_size(const TaskTree &tree) { return tree.steps.size(); }

struct RetrievalRequest {
    ObjectNode goal;
    Kitchen kitchen;
    Algorithm algorithm = Algorithm::IDS;
    int depthLimit = 64;                  // IDS only
    std::optional<MotionRates> rates;     // required for GBFS_H1
};

// One greedy selection: the node that triggered it and the unit chosen among
// its candidates. Exposed so tests can re-check the argmax/argmin invariant.
struct GbfsSelection {
    std::string nodeKey;
    std::size_t unitIndex;
    std::vector<std::size_t> candidateIndices;
};

// Iterative-deepening retrieval over the backward dependency graph. Runs
// depth-limited resolution at bounds 0..depthLimit; a node resolves when it
// is in the kitchen or a producing unit resolves all its inputs within the
// remaining bound. Returns the tree found at the smallest successful bound,
// linearized into execution order. If foundAtDepth is given it receives that
// bound.
TaskTree retrieve_ids(const UniversalFOON &foon, const RetrievalRequest &request,
                      int *foundAtDepth = nullptr);

// Greedy best-first retrieval per the queue procedure: dequeue a node, and
// if it is not yet satisfied pick the best producing unit (H1: highest
// motion success rate; H2: fewest inputs) and enqueue its unvisited inputs.
TaskTree retrieve_gbfs(const UniversalFOON &foon, const RetrievalRequest &request,
                       std::vector<GbfsSelection> *trace = nullptr);

TaskTree retrieve(const UniversalFOON &foon, const RetrievalRequest &request);

struct ValidationReport {
    bool ok = true;
    std::string message = "OK";
    // Set when a step consumes a node that is neither in the kitchen nor
    // produced by an earlier step.
    std::optional<std::size_t> violatingStep;
    std::optional<std::string> violatingInputKey;
};

ValidationReport validate_task_tree(const TaskTree &tree, const Kitchen &kitchen);

struct OracleOptions {
    std::size_t maxUnits = 10;
    std::size_t expansionBudget = 2'000'000;
};

// Brute-force enumeration of all valid task trees (up to step-set equality)
// for desk-scale graphs. Ground truth for IDS minimality and GBFS
// membership checks.
std::vector<TaskTree> oracle_enumerate(const UniversalFOON &foon,
                                       const ObjectNode &goal,
                                       const Kitchen &kitchen,
                                       const OracleOptions &options = {});

// Longest goal-to-leaf unit chain achievable with the tree's own units
// (shorter chains win when a node has several in-tree producers). Used to
// cross-check the IDS first-success bound.
int tree_chain_depth(const TaskTree &tree);

}  // namespace foon

#endif
