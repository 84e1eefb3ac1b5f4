#include "foon/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace foon {

const char *to_string(ParseErrorCode code) {
    switch (code) {
        case ParseErrorCode::MalformedLine: return "MalformedLine";
        case ParseErrorCode::StateBeforeObject: return "StateBeforeObject";
        case ParseErrorCode::UnitWithoutMotion: return "UnitWithoutMotion";
        case ParseErrorCode::UnitWithoutInputs: return "UnitWithoutInputs";
        case ParseErrorCode::UnitWithoutOutputs: return "UnitWithoutOutputs";
        case ParseErrorCode::BadTimestamp: return "BadTimestamp";
        case ParseErrorCode::BadMotionFlag: return "BadMotionFlag";
        case ParseErrorCode::BadRate: return "BadRate";
    }
    return "ParseError";
}

ParseError::ParseError(ParseErrorCode code, int line, const std::string &detail)
    : std::runtime_error("line " + std::to_string(line) + ": " +
                         to_string(code) + ": " + detail),
      code_(code),
      line_(line) {}

void MotionRates::set(const std::string &motionName, double rate) {
    rates_[normalize(motionName)] = rate;
}

double MotionRates::get(const std::string &motionName) const {
    auto it = rates_.find(normalize(motionName));
    if (it != rates_.end()) return it->second;
    misses_.insert(normalize(motionName));
    return defaultRate_;
}

bool MotionRates::has(const std::string &motionName) const {
    return rates_.count(normalize(motionName)) > 0;
}

void Kitchen::add(const ObjectNode &node) {
    if (keys_.insert(node_key(node)).second) items_.push_back(node);
}

namespace {

std::string rstrip(const std::string &s) {
    std::size_t end = s.size();
    while (end > 0 && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(0, end);
}

// Fields are separated by runs of tabs, or leniently by runs of two or more
// spaces. A single space stays inside the field (motion names and object
// names may contain spaces).
std::vector<std::string> splitFields(const std::string &line) {
    std::vector<std::string> fields;
    std::string current;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '\t' || c == ' ') {
            std::size_t j = i;
            bool hasTab = false;
            while (j < line.size() && (line[j] == '\t' || line[j] == ' ')) {
                if (line[j] == '\t') hasTab = true;
                ++j;
            }
            if (hasTab || j - i >= 2) {
                if (!current.empty()) fields.push_back(current);
                current.clear();
            } else {
                current.push_back(' ');
            }
            i = j;
        } else {
            current.push_back(c);
            ++i;
        }
    }
    if (!current.empty()) fields.push_back(current);
    return fields;
}

std::string joinFrom(const std::vector<std::string> &fields, std::size_t start) {
    std::string out;
    for (std::size_t i = start; i < fields.size(); ++i) {
        if (!out.empty()) out.push_back(' ');
        out += fields[i];
    }
    return out;
}

std::string lastToken(const std::string &text) {
    auto pos = text.find_last_of(' ');
    return pos == std::string::npos ? text : text.substr(pos + 1);
}

std::string dropLastToken(const std::string &text) {
    auto pos = text.find_last_of(' ');
    return pos == std::string::npos ? std::string() : text.substr(0, pos);
}

bool allDigits(const std::string &s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

bool looksLikeTimestamp(const std::string &s) {
    return s.find(':') != std::string::npos;
}

// "M:SS", "MM:SS" or "H:MM:SS" -> total seconds.
Timestamp parseTimestamp(const std::string &text, int line) {
    std::vector<int> parts;
    std::string piece;
    for (char c : text) {
        if (c == ':') {
            if (!allDigits(piece))
                throw ParseError(ParseErrorCode::BadTimestamp, line, "'" + text + "'");
            parts.push_back(std::stoi(piece));
            piece.clear();
        } else {
            piece.push_back(c);
        }
    }
    if (!allDigits(piece))
        throw ParseError(ParseErrorCode::BadTimestamp, line, "'" + text + "'");
    parts.push_back(std::stoi(piece));
    if (parts.size() < 2 || parts.size() > 3)
        throw ParseError(ParseErrorCode::BadTimestamp, line, "'" + text + "'");
    int seconds = 0;
    for (int p : parts) seconds = seconds * 60 + p;
    return Timestamp{seconds, text};
}

// Pulls "{a, b}" and "[x]" segments out of the remainder of an S line; the
// rest is the state label.
ObjectState parseStateFields(const std::string &raw, int line) {
    ObjectState state;
    std::string label;
    std::size_t i = 0;
    while (i < raw.size()) {
        char c = raw[i];
        if (c == '{') {
            auto close = raw.find('}', i);
            if (close == std::string::npos)
                throw ParseError(ParseErrorCode::MalformedLine, line, "unclosed '{'");
            std::string inner = raw.substr(i + 1, close - i - 1);
            std::string item;
            std::stringstream ss(inner);
            while (std::getline(ss, item, ',')) {
                std::string ing = normalize(item);
                if (!ing.empty()) state.ingredients.insert(ing);
            }
            i = close + 1;
        } else if (c == '[') {
            auto close = raw.find(']', i);
            if (close == std::string::npos)
                throw ParseError(ParseErrorCode::MalformedLine, line, "unclosed '['");
            std::string name = normalize(raw.substr(i + 1, close - i - 1));
            if (name.empty())
                throw ParseError(ParseErrorCode::MalformedLine, line, "empty container");
            state.container = name;
            i = close + 1;
        } else {
            label.push_back(c);
            ++i;
        }
    }
    state.label = normalize(label);
    if (state.label.empty())
        throw ParseError(ParseErrorCode::MalformedLine, line, "state has no label");
    return state;
}

// Object line body: name, optionally ending in the motion flag 0/1.
std::pair<ObjectNode, int> parseObjectFields(const std::vector<std::string> &fields,
                                             int line) {
    if (fields.size() >= 3) {
        const std::string &flagField = fields.back();
        if (flagField != "0" && flagField != "1")
            throw ParseError(ParseErrorCode::BadMotionFlag, line,
                             "'" + flagField + "' is not 0 or 1");
        ObjectNode node{normalize(joinFrom(fields, 1).substr(
                            0, joinFrom(fields, 1).size() - flagField.size())),
                        {}};
        if (node.name.empty())
            throw ParseError(ParseErrorCode::MalformedLine, line, "object has no name");
        return {node, flagField == "1" ? 1 : 0};
    }
    std::string body = joinFrom(fields, 1);
    if (body.empty())
        throw ParseError(ParseErrorCode::MalformedLine, line, "object has no name");
    std::string tail = lastToken(body);
    int flag = 0;
    if (allDigits(tail)) {
        if (tail != "0" && tail != "1")
            throw ParseError(ParseErrorCode::BadMotionFlag, line,
                             "'" + tail + "' is not 0 or 1");
        flag = tail == "1" ? 1 : 0;
        body = dropLastToken(body);
    }
    ObjectNode node{normalize(body), {}};
    if (node.name.empty())
        throw ParseError(ParseErrorCode::MalformedLine, line, "object has no name");
    return {node, flag};
}

MotionNode parseMotionFields(const std::vector<std::string> &fields, int line) {
    std::string body = joinFrom(fields, 1);
    MotionNode motion;
    std::string tail = lastToken(body);
    if (normalize(tail) == "assumed") {
        motion.assumed = true;
        motion.name = normalize(dropLastToken(body));
    } else if (looksLikeTimestamp(tail)) {
        std::string rest = dropLastToken(body);
        std::string prev = lastToken(rest);
        if (!looksLikeTimestamp(prev))
            throw ParseError(ParseErrorCode::BadTimestamp, line,
                             "expected start and end timestamps");
        motion.end = parseTimestamp(tail, line);
        motion.start = parseTimestamp(prev, line);
        motion.name = normalize(dropLastToken(rest));
        if (motion.start->seconds > motion.end->seconds)
            throw ParseError(ParseErrorCode::BadTimestamp, line,
                             "start is after end");
    } else {
        throw ParseError(ParseErrorCode::MalformedLine, line,
                         "motion needs timestamps or Assumed");
    }
    if (motion.name.empty())
        throw ParseError(ParseErrorCode::MalformedLine, line, "motion has no name");
    return motion;
}

class SubgraphBuilder {
public:
    void objectLine(const std::vector<std::string> &fields, int line) {
        auto [node, flag] = parseObjectFields(fields, line);
        auto &side = sawMotion_ ? outputs_ : inputs_;
        side.emplace_back(std::move(node), flag);
        hasContent_ = true;
    }

    void stateLine(const std::vector<std::string> &fields, int line) {
        auto &side = sawMotion_ ? outputs_ : inputs_;
        if (side.empty())
            throw ParseError(ParseErrorCode::StateBeforeObject, line,
                             "state line with no preceding object");
        side.back().first.states.insert(parseStateFields(joinFrom(fields, 1), line));
    }

    void motionLine(const std::vector<std::string> &fields, int line) {
        if (sawMotion_)
            throw ParseError(ParseErrorCode::MalformedLine, line,
                             "second motion line in one unit");
        motion_ = parseMotionFields(fields, line);
        sawMotion_ = true;
        hasContent_ = true;
        motionLineNo_ = line;
    }

    // Closes the current block at a "//" line or EOF.
    void flush(std::vector<FunctionalUnit> &units, int line) {
        if (!hasContent_) return;
        if (!sawMotion_)
            throw ParseError(ParseErrorCode::UnitWithoutMotion, line,
                             "unit has no motion line");
        if (inputs_.empty())
            throw ParseError(ParseErrorCode::UnitWithoutInputs, motionLineNo_,
                             "unit has no input objects");
        if (outputs_.empty())
            throw ParseError(ParseErrorCode::UnitWithoutOutputs, line,
                             "unit has no output objects");
        units.push_back(FunctionalUnit{std::move(inputs_), std::move(motion_),
                                       std::move(outputs_)});
        inputs_.clear();
        outputs_.clear();
        motion_ = MotionNode{};
        sawMotion_ = false;
        hasContent_ = false;
    }

private:
    std::vector<std::pair<ObjectNode, int>> inputs_;
    std::vector<std::pair<ObjectNode, int>> outputs_;
    MotionNode motion_;
    bool sawMotion_ = false;
    bool hasContent_ = false;
    int motionLineNo_ = 0;
};

}  // namespace

std::vector<FunctionalUnit> parse_subgraph(const std::string &text) {
    std::vector<FunctionalUnit> units;
    SubgraphBuilder builder;
    std::istringstream in(text);
    std::string rawLine;
    int lineNo = 0;
    while (std::getline(in, rawLine)) {
        ++lineNo;
        std::string line = rstrip(rawLine);
        if (line.empty()) continue;
        if (line == "//") {
            builder.flush(units, lineNo);
            continue;
        }
        auto fields = splitFields(line);
        const std::string &tag = fields[0];
        if (tag == "O") {
            builder.objectLine(fields, lineNo);
        } else if (tag == "S") {
            builder.stateLine(fields, lineNo);
        } else if (tag == "M") {
            builder.motionLine(fields, lineNo);
        } else {
            throw ParseError(ParseErrorCode::MalformedLine, lineNo,
                             "unknown tag '" + tag + "'");
        }
    }
    builder.flush(units, lineNo + 1);
    return units;
}

namespace {

void serializeNodes(std::ostream &os,
                    const std::vector<std::pair<ObjectNode, int>> &nodes) {
    for (const auto &[node, flag] : nodes) {
        os << "O\t" << node.name << '\t' << flag << '\n';
        for (const auto &state : node.states) {
            os << "S\t" << state.label;
            if (!state.ingredients.empty()) {
                os << "\t{";
                bool first = true;
                for (const auto &ing : state.ingredients) {
                    if (!first) os << ", ";
                    os << ing;
                    first = false;
                }
                os << '}';
            }
            if (state.container) os << "\t[" << *state.container << ']';
            os << '\n';
        }
    }
}

}  // namespace

std::string serialize_subgraph(const std::vector<FunctionalUnit> &units) {
    if (units.empty()) return "";
    std::ostringstream os;
    for (const auto &unit : units) {
        os << "//\n";
        serializeNodes(os, unit.inputs);
        os << "M\t" << unit.motion.name;
        if (unit.motion.assumed)
            os << "\tAssumed";
        else
            os << '\t' << unit.motion.start->text << '\t' << unit.motion.end->text;
        os << '\n';
        serializeNodes(os, unit.outputs);
    }
    os << "//\n";
    return os.str();
}

MotionRates parse_motion_rates(const std::string &text, double defaultRate,
                               std::vector<std::string> *warnings) {
    MotionRates rates(defaultRate);
    std::istringstream in(text);
    std::string rawLine;
    int lineNo = 0;
    while (std::getline(in, rawLine)) {
        ++lineNo;
        std::string line = rstrip(rawLine);
        if (line.empty() || line[0] == '#') continue;
        auto fields = splitFields(line);
        std::string body = joinFrom(fields, 0);
        std::string rateText = lastToken(body);
        std::string name = normalize(dropLastToken(body));
        if (name.empty())
            throw ParseError(ParseErrorCode::BadRate, lineNo,
                             "expected '<motion name>\\t<rate>'");
        double rate = 0.0;
        std::size_t consumed = 0;
        try {
            rate = std::stod(rateText, &consumed);
        } catch (const std::exception &) {
            throw ParseError(ParseErrorCode::BadRate, lineNo, "'" + rateText + "'");
        }
        if (consumed != rateText.size() || rate < 0.0 || rate > 1.0)
            throw ParseError(ParseErrorCode::BadRate, lineNo,
                             "'" + rateText + "' is not in [0, 1]");
        if (rates.has(name) && warnings)
            warnings->push_back("line " + std::to_string(lineNo) +
                                ": duplicate motion '" + name +
                                "', keeping the later rate");
        rates.set(name, rate);
    }
    return rates;
}

Kitchen parse_kitchen(const std::string &text) {
    Kitchen kitchen;
    std::istringstream in(text);
    std::string rawLine;
    int lineNo = 0;
    bool haveItem = false;
    ObjectNode item;
    auto flush = [&] {
        if (haveItem) kitchen.add(item);
        item = ObjectNode{};
        haveItem = false;
    };
    while (std::getline(in, rawLine)) {
        ++lineNo;
        std::string line = rstrip(rawLine);
        if (line.empty() || line == "//") continue;
        auto fields = splitFields(line);
        const std::string &tag = fields[0];
        if (tag == "O") {
            flush();
            item = parseObjectFields(fields, lineNo).first;
            haveItem = true;
        } else if (tag == "S") {
            if (!haveItem)
                throw ParseError(ParseErrorCode::StateBeforeObject, lineNo,
                                 "state line with no preceding object");
            item.states.insert(parseStateFields(joinFrom(fields, 1), lineNo));
        } else if (tag == "M") {
            throw ParseError(ParseErrorCode::MalformedLine, lineNo,
                             "motion lines do not belong in a kitchen file");
        } else {
            throw ParseError(ParseErrorCode::MalformedLine, lineNo,
                             "unknown tag '" + tag + "'");
        }
    }
    flush();
    return kitchen;
}

ObjectState parse_state_spec(const std::string &text) {
    return parseStateFields(text, 0);
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
}

}  // namespace foon
