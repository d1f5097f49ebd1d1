#include "distributions/tables.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tunesmith {

ProbabilityTable::ProbabilityTable(std::string name, std::vector<TableEntry> entries)
    : name_(std::move(name)), entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("table '" + name_ + "' has no entries");
  int sum = 0;
  std::set<std::string> seen;
  for (const auto& e : entries_) {
    if (e.weight_percent < 0) {
      throw std::invalid_argument("table '" + name_ + "': negative weight for " + e.label);
    }
    if (!seen.insert(e.label).second) {
      throw std::invalid_argument("table '" + name_ + "': duplicate label " + e.label);
    }
    sum += e.weight_percent;
  }
  if (sum != 100) {
    throw std::invalid_argument("table '" + name_ + "': weights sum to " + std::to_string(sum) +
                                ", expected 100");
  }
}

int ProbabilityTable::weight(std::string_view label) const {
  for (const auto& e : entries_) {
    if (e.label == label) return e.weight_percent;
  }
  throw std::out_of_range("table '" + name_ + "' has no label " + std::string(label));
}

bool ProbabilityTable::contains(std::string_view label) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const TableEntry& e) { return e.label == label; });
}

size_t ProbabilityTable::sample_index(double u) const {
  if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("sample: u must lie in [0, 1)");
  const double scaled = u * 100.0;
  int cumulative = 0;
  for (size_t i = 0; i < entries_.size(); ++i) {
    cumulative += entries_[i].weight_percent;
    if (scaled < cumulative) return i;
  }
  // unreachable for u < 1; keep the last non-empty entry for safety
  for (size_t i = entries_.size(); i-- > 0;) {
    if (entries_[i].weight_percent > 0) return i;
  }
  return entries_.size() - 1;
}

GenerationTables builtin_tables() {
  return GenerationTables{
      ProbabilityTable(std::string(kIntervalTableName),
                       {{"Unison", 25}, {"Octave", 2}, {"Step", 48}, {"Skip", 25}}),
      ProbabilityTable(std::string(kSkipTableName), {{"PerfectFifth", 25},
                                                     {"PerfectFourth", 2},
                                                     {"Third", 48},
                                                     {"Sixth", 25}}),
      ProbabilityTable(std::string(kLengthTableName), {{"Sixteenth", 10},
                                                       {"Eighth", 31},
                                                       {"Quarter", 40},
                                                       {"DottedQuarter", 7},
                                                       {"Half", 9},
                                                       {"Whole", 3}}),
  };
}

namespace {

void require_labels(const ProbabilityTable& table, std::vector<std::string_view> expected) {
  if (table.entries().size() != expected.size()) {
    throw std::invalid_argument("table '" + table.name() + "' must have " +
                                std::to_string(expected.size()) + " entries");
  }
  for (auto label : expected) {
    if (!table.contains(label)) {
      throw std::invalid_argument("table '" + table.name() + "' is missing label " +
                                  std::string(label));
    }
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

void require_interval_labels(const ProbabilityTable& table) {
  require_labels(table, {"Unison", "Octave", "Step", "Skip"});
}

void require_skip_labels(const ProbabilityTable& table) {
  require_labels(table, {"PerfectFifth", "PerfectFourth", "Third", "Sixth"});
}

void require_length_labels(const ProbabilityTable& table) {
  std::vector<std::string_view> labels;
  for (NoteLength kind : kAllNoteLengths) labels.push_back(to_string(kind));
  require_labels(table, labels);
}

NoteLength sample_length(const ProbabilityTable& table, RandomSource& rng) {
  const std::string& label = table.sample(rng);
  for (NoteLength kind : kAllNoteLengths) {
    if (label == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown note length label " + label);
}

ProbabilityTable parse_table(std::istream& in) {
  std::string name;
  std::vector<TableEntry> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto space = line.find_first_of(" \t");
    if (space == std::string_view::npos) {
      throw std::invalid_argument("table line " + std::to_string(line_no) +
                                  ": expected '<label> <value>'");
    }
    std::string_view key = line.substr(0, space);
    std::string_view value = trim(line.substr(space + 1));
    if (name.empty()) {
      if (key != "name" || value.empty()) {
        throw std::invalid_argument("table line " + std::to_string(line_no) +
                                    ": first entry must be 'name <text>'");
      }
      name = std::string(value);
      continue;
    }
    int weight = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), weight);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw std::invalid_argument("table line " + std::to_string(line_no) +
                                  ": weight is not an integer");
    }
    entries.push_back({std::string(key), weight});
  }
  if (name.empty()) throw std::invalid_argument("table has no 'name' header");
  return ProbabilityTable(std::move(name), std::move(entries));
}

ProbabilityTable parse_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_table(in);
}

ProbabilityTable load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table file " + path);
  return parse_table(in);
}

std::string format_table(const ProbabilityTable& table) {
  std::string out = "name " + table.name() + "\n";
  for (const auto& e : table.entries()) {
    out += e.label + " " + std::to_string(e.weight_percent) + "\n";
  }
  return out;
}

}  // namespace tunesmith
