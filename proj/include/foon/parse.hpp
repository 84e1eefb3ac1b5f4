#ifndef FOON_PARSE_HPP
#define FOON_PARSE_HPP

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "foon/core.hpp"

namespace foon {

enum class ParseErrorCode {
    MalformedLine,
    StateBeforeObject,
    UnitWithoutMotion,
    UnitWithoutInputs,
    UnitWithoutOutputs,
    BadTimestamp,
    BadMotionFlag,
    BadRate,
};

const char *to_string(ParseErrorCode code);

class ParseError : public std::runtime_error {
public:
    ParseError(ParseErrorCode code, int line, const std::string &detail);

    ParseErrorCode code() const { return code_; }
    int line() const { return line_; }

private:
    ParseErrorCode code_;
    int line_;
};

// Success rates per motion name. Lookup is total: unlisted motions fall back
// to defaultRate and are remembered so callers can warn.
class MotionRates {
public:
    explicit MotionRates(double defaultRate = 0.0) : defaultRate_(defaultRate) {}

    void set(const std::string &motionName, double rate);
    double get(const std::string &motionName) const;

    double defaultRate() const { return defaultRate_; }
    void setDefaultRate(double rate) { defaultRate_ = rate; }

    bool has(const std::string &motionName) const;
    const std::unordered_map<std::string, double> &rates() const { return rates_; }

    // Motion names that were looked up but not listed.
    const std::unordered_set<std::string> &misses() const { return misses_; }

private:
    std::unordered_map<std::string, double> rates_;
    double defaultRate_;
    mutable std::unordered_set<std::string> misses_;
};

// The set of object nodes available before execution. Membership is by
// canonical node key.
class Kitchen {
public:
    void add(const ObjectNode &node);
    bool contains(const std::string &key) const { return keys_.count(key) > 0; }
    bool containsNode(const ObjectNode &node) const { return contains(node_key(node)); }

    const std::vector<ObjectNode> &items() const { return items_; }
    std::size_t size() const { return items_.size(); }

private:
    std::unordered_set<std::string> keys_;
    std::vector<ObjectNode> items_;
};

// Parses the line-oriented subgraph format: blocks of O/S lines, one M line,
// O/S lines, delimited by "//". Fail-fast: throws ParseError with the
// offending line number.
std::vector<FunctionalUnit> parse_subgraph(const std::string &text);

// Canonical writer, the inverse of parse_subgraph. Single tabs, "//" before
// each unit plus one trailing "//"; an empty list serializes to empty text.
std::string serialize_subgraph(const std::vector<FunctionalUnit> &units);

// "name<TAB>rate" lines; '#' comments and blank lines skipped; duplicate
// names keep the last occurrence. Warnings (e.g. duplicates) are appended to
// *warnings when given.
MotionRates parse_motion_rates(const std::string &text, double defaultRate = 0.0,
                               std::vector<std::string> *warnings = nullptr);

// O/S lines only; each O line starts a new item. M lines are malformed here.
Kitchen parse_kitchen(const std::string &text);

// Parses a --goal-state style field: "label", optionally followed by
// "{a, b}" and/or "[container]".
ObjectState parse_state_spec(const std::string &text);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &contents);

}  // namespace foon

#endif
