#ifndef FOON_CORE_HPP
#define FOON_CORE_HPP

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace foon {

// Trim, collapse internal whitespace runs to one space, lowercase (ASCII).
std::string normalize(const std::string &text);

// One state attached to an object node, e.g. "off", "contains {a, b}",
// "in [bowl]".
struct ObjectState {
    std::string label;
    std::set<std::string> ingredients;
    std::optional<std::string> container;

    bool operator==(const ObjectState &other) const = default;
    bool operator<(const ObjectState &other) const;
};

struct ObjectNode {
    std::string name;
    std::set<ObjectState> states;

    bool operator==(const ObjectNode &other) const = default;
};

// Timestamp from the source demonstration, kept both as seconds and as the
// original text so files re-emit faithfully.
struct Timestamp {
    int seconds = 0;
    std::string text;
};

struct MotionNode {
    std::string name;
    std::optional<Timestamp> start;
    std::optional<Timestamp> end;
    bool assumed = false;
};

struct FunctionalUnit {
    // The int is the motion flag (0/1) from the object line; it annotates a
    // demonstration instance and never takes part in node identity.
    std::vector<std::pair<ObjectNode, int>> inputs;
    MotionNode motion;
    std::vector<std::pair<ObjectNode, int>> outputs;
};

// Canonical identity of an object node: name plus the full state set, all
// normalized. Motion flags and timestamps never influence the key.
std::string node_key(const ObjectNode &node);

// Structural identity of a unit: input key set + motion name + output key
// set, order-insensitive.
std::string unit_key(const FunctionalUnit &unit);

struct GraphStats {
    std::size_t unitCount = 0;
    std::size_t objectNodeCount = 0;
    std::size_t motionCount = 0;

    bool operator==(const GraphStats &) const = default;
};

// Deduplicated, insertion-ordered store of functional units with
// producer/consumer indexes. Built single-writer, then treated as frozen;
// concurrent reads are safe once mutation stops.
class UniversalFOON {
public:
    // Appends every unit of the subgraph not already structurally present,
    // preserving order. Returns the number of units actually added.
    std::size_t mergeSubgraph(const std::vector<FunctionalUnit> &subgraph);

    const std::vector<FunctionalUnit> &units() const { return units_; }

    // Indices of units whose outputs contain the given node key, in
    // insertion order.
    const std::vector<std::size_t> &unitsProducing(const std::string &key) const;
    const std::vector<std::size_t> &unitsConsuming(const std::string &key) const;

    std::vector<FunctionalUnit> unitsProducingNode(const ObjectNode &goal) const;

    bool producesKey(const std::string &key) const;
    bool consumesKey(const std::string &key) const;

    GraphStats stats() const;

    // Every distinct object node in the graph, keyed canonically.
    const std::unordered_map<std::string, ObjectNode> &nodesByKey() const {
        return nodes_;
    }

private:
    std::vector<FunctionalUnit> units_;
    std::unordered_set<std::string> unitKeys_;
    std::unordered_map<std::string, std::vector<std::size_t>> producedBy_;
    std::unordered_map<std::string, std::vector<std::size_t>> consumedBy_;
    std::unordered_map<std::string, ObjectNode> nodes_;
};

}  // namespace foon

#endif
