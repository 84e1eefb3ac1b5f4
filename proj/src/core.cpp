#include "foon/core.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace foon {

std::string normalize(const std::string &text) {
    std::string out;
    out.reserve(text.size());
    bool pendingSpace = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!out.empty()) pendingSpace = true;
            continue;
        }
        if (pendingSpace) {
            out.push_back(' ');
            pendingSpace = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

bool ObjectState::operator<(const ObjectState &other) const {
    if (label != other.label) return label < other.label;
    if (ingredients != other.ingredients) return ingredients < other.ingredients;
    return container < other.container;
}

static void appendStateKey(std::ostream &os, const ObjectState &s) {
    os << '|' << s.label;
    for (const auto &ing : s.ingredients) os << '{' << ing;
    if (s.container) os << '[' << *s.container;
}

std::string node_key(const ObjectNode &node) {
    std::ostringstream os;
    os << node.name;
    for (const auto &s : node.states) appendStateKey(os, s);
    return os.str();
}

std::string unit_key(const FunctionalUnit &unit) {
    std::set<std::string> in, out;
    for (const auto &[n, flag] : unit.inputs) in.insert(node_key(n));
    for (const auto &[n, flag] : unit.outputs) out.insert(node_key(n));
    std::ostringstream os;
    for (const auto &k : in) os << k << '\x1e';
    os << "#M#" << unit.motion.name;
    for (const auto &k : out) os << '\x1e' << k;
    return os.str();
}

std::size_t UniversalFOON::mergeSubgraph(const std::vector<FunctionalUnit> &subgraph) {
    std::size_t added = 0;
    for (const auto &unit : subgraph) {
        auto [it, fresh] = unitKeys_.insert(unit_key(unit));
        if (!fresh) continue;
        std::size_t idx = units_.size();
        units_.push_back(unit);
        auto indexSide = [&](const std::vector<std::pair<ObjectNode, int>> &nodes,
                             std::unordered_map<std::string, std::vector<std::size_t>> &index) {
            for (const auto &[node, flag] : nodes) {
                std::string key = node_key(node);
                auto &slots = index[key];
                if (slots.empty() || slots.back() != idx) slots.push_back(idx);
                nodes_.emplace(key, node);
            }
        };
        indexSide(unit.inputs, consumedBy_);
        indexSide(unit.outputs, producedBy_);
        ++added;
    }
    return added;
}

const std::vector<std::size_t> &UniversalFOON::unitsProducing(const std::string &key) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = producedBy_.find(key);
    return it == producedBy_.end() ? kEmpty : it->second;
}

const std::vector<std::size_t> &UniversalFOON::unitsConsuming(const std::string &key) const {
    static const std::vector<std::size_t> kEmpty;
    auto it = consumedBy_.find(key);
    return it == consumedBy_.end() ? kEmpty : it->second;
}

std::vector<FunctionalUnit> UniversalFOON::unitsProducingNode(const ObjectNode &goal) const {
    std::vector<FunctionalUnit> result;
    for (std::size_t idx : unitsProducing(node_key(goal))) result.push_back(units_[idx]);
    return result;
}

bool UniversalFOON::producesKey(const std::string &key) const {
    return producedBy_.count(key) > 0;
}

bool UniversalFOON::consumesKey(const std::string &key) const {
    return consumedBy_.count(key) > 0;
}

GraphStats UniversalFOON::stats() const {
    GraphStats s;
    s.unitCount = units_.size();
    s.objectNodeCount = nodes_.size();
    std::unordered_set<std::string> motions;
    for (const auto &u : units_) motions.insert(u.motion.name);
    s.motionCount = motions.size();
    return s;
}

}  // namespace foon
