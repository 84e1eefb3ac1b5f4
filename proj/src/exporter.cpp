#include "foon/exporter.hpp"

#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace foon {

namespace {

std::string stateSummary(const ObjectNode &node) {
    std::ostringstream os;
    os << node.name;
    for (const auto &state : node.states) {
        os << "\\n" << state.label;
        if (!state.ingredients.empty()) {
            os << " {";
            bool first = true;
            for (const auto &ing : state.ingredients) {
                if (!first) os << ", ";
                os << ing;
                first = false;
            }
            os << '}';
        }
        if (state.container) os << " [" << *state.container << ']';
    }
    return os.str();
}

std::string escapeLabel(const std::string &text) {
    std::string out;
    for (char c : text) {
        if (c == '"') out += "\\\"";
        else out.push_back(c);
    }
    return out;
}

}  // namespace

std::string to_dot(const std::vector<FunctionalUnit> &units) {
    std::ostringstream os;
    os << "digraph foon {\n";
    os << "  rankdir=TB;\n";
    std::unordered_map<std::string, std::string> objectIds;
    auto objectId = [&](const ObjectNode &node) {
        std::string key = node_key(node);
        auto it = objectIds.find(key);
        if (it != objectIds.end()) return it->second;
        std::string id = "o" + std::to_string(objectIds.size());
        objectIds.emplace(key, id);
        os << "  " << id << " [shape=box, label=\"" << escapeLabel(stateSummary(node))
           << "\"];\n";
        return id;
    };
    for (std::size_t i = 0; i < units.size(); ++i) {
        const FunctionalUnit &unit = units[i];
        std::string motionId = "m" + std::to_string(i);
        os << "  " << motionId << " [shape=ellipse, label=\""
           << escapeLabel(unit.motion.name) << "\"];\n";
        for (const auto &[node, flag] : unit.inputs)
            os << "  " << objectId(node) << " -> " << motionId << ";\n";
        for (const auto &[node, flag] : unit.outputs)
            os << "  " << motionId << " -> " << objectId(node) << ";\n";
    }
    os << "}\n";
    return os.str();
}

namespace {

nlohmann::ordered_json nodeToJson(const std::pair<ObjectNode, int> &entry) {
    const auto &[node, flag] = entry;
    nlohmann::ordered_json j;
    j["name"] = node.name;
    j["states"] = nlohmann::ordered_json::array();
    for (const auto &state : node.states) {
        nlohmann::ordered_json s;
        s["label"] = state.label;
        s["ingredients"] = state.ingredients;
        if (state.container) s["container"] = *state.container;
        j["states"].push_back(s);
    }
    j["moving"] = flag == 1;
    return j;
}

std::pair<ObjectNode, int> nodeFromJson(const nlohmann::json &j) {
    ObjectNode node;
    node.name = normalize(j.at("name").get<std::string>());
    for (const auto &s : j.at("states")) {
        ObjectState state;
        state.label = normalize(s.at("label").get<std::string>());
        if (s.contains("ingredients"))
            for (const auto &ing : s.at("ingredients"))
                state.ingredients.insert(normalize(ing.get<std::string>()));
        if (s.contains("container"))
            state.container = normalize(s.at("container").get<std::string>());
        node.states.insert(std::move(state));
    }
    return {node, j.value("moving", false) ? 1 : 0};
}

}  // namespace

std::string to_json(const std::vector<FunctionalUnit> &units) {
    nlohmann::ordered_json doc;
    doc["formatVersion"] = 1;
    doc["units"] = nlohmann::ordered_json::array();
    for (const auto &unit : units) {
        nlohmann::ordered_json j;
        j["inputs"] = nlohmann::ordered_json::array();
        for (const auto &entry : unit.inputs) j["inputs"].push_back(nodeToJson(entry));
        nlohmann::ordered_json m;
        m["name"] = unit.motion.name;
        if (unit.motion.start) m["start"] = unit.motion.start->text;
        if (unit.motion.end) m["end"] = unit.motion.end->text;
        m["assumed"] = unit.motion.assumed;
        j["motion"] = m;
        j["outputs"] = nlohmann::ordered_json::array();
        for (const auto &entry : unit.outputs) j["outputs"].push_back(nodeToJson(entry));
        doc["units"].push_back(j);
    }
    return doc.dump(2) + "\n";
}

namespace {

int timestampSeconds(const std::string &text) {
    int seconds = 0;
    int piece = 0;
    for (char c : text) {
        if (c == ':') {
            seconds = seconds * 60 + piece;
            piece = 0;
        } else {
            piece = piece * 10 + (c - '0');
        }
    }
    return seconds * 60 + piece;
}

}  // namespace

std::vector<FunctionalUnit> from_json(const std::string &text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    if (doc.value("formatVersion", 0) != 1)
        throw std::runtime_error("unsupported formatVersion");
    std::vector<FunctionalUnit> units;
    for (const auto &j : doc.at("units")) {
        FunctionalUnit unit;
        for (const auto &entry : j.at("inputs")) unit.inputs.push_back(nodeFromJson(entry));
        const auto &m = j.at("motion");
        unit.motion.name = normalize(m.at("name").get<std::string>());
        unit.motion.assumed = m.value("assumed", false);
        if (m.contains("start")) {
            std::string t = m.at("start").get<std::string>();
            unit.motion.start = Timestamp{timestampSeconds(t), t};
        }
        if (m.contains("end")) {
            std::string t = m.at("end").get<std::string>();
            unit.motion.end = Timestamp{timestampSeconds(t), t};
        }
        for (const auto &entry : j.at("outputs")) unit.outputs.push_back(nodeFromJson(entry));
        units.push_back(std::move(unit));
    }
    return units;
}

}  // namespace foon
