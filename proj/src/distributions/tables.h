// Weighted categorical tables (interval type, skip interval, note length) and
// the sampling primitive every generator uses.

#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/model.h"
#include "core/random.h"

namespace tunesmith {

struct TableEntry {
  std::string label;
  int weight_percent = 0;
  friend bool operator==(const TableEntry&, const TableEntry&) = default;
};

/// A named list of weighted labels. Weights are integer percentages summing
/// to exactly 100; sampling walks the cumulative ranges in listed order.
class ProbabilityTable {
 public:
  /// Throws std::invalid_argument if weights are negative, do not sum to 100,
  /// or labels repeat.
  ProbabilityTable(std::string name, std::vector<TableEntry> entries);

  const std::string& name() const { return name_; }
  const std::vector<TableEntry>& entries() const { return entries_; }

  int weight(std::string_view label) const;
  bool contains(std::string_view label) const;

  /// Index of the entry whose range [c_prev/100, c/100) holds u.
  size_t sample_index(double u) const;
  const std::string& sample(double u) const { return entries_[sample_index(u)].label; }
  const std::string& sample(RandomSource& rng) const { return sample(rng.next_unit()); }

  friend bool operator==(const ProbabilityTable&, const ProbabilityTable&) = default;

 private:
  std::string name_;
  std::vector<TableEntry> entries_;
};

inline constexpr std::string_view kIntervalTableName = "interval";
inline constexpr std::string_view kSkipTableName = "skip";
inline constexpr std::string_view kLengthTableName = "length";

/// The three tables driving melody generation.
struct GenerationTables {
  ProbabilityTable interval;
  ProbabilityTable skip;
  ProbabilityTable length;
};

/// Interval type: Unison 25, Octave 2, Step 48, Skip 25.
/// Skip interval: PerfectFifth 25, PerfectFourth 2, Third 48, Sixth 25.
/// Note length: Sixteenth 10, Eighth 31, Quarter 40, DottedQuarter 7, Half 9, Whole 3.
GenerationTables builtin_tables();

/// Checks that a table carries exactly the labels its role expects.
void require_interval_labels(const ProbabilityTable& table);
void require_skip_labels(const ProbabilityTable& table);
void require_length_labels(const ProbabilityTable& table);

NoteLength sample_length(const ProbabilityTable& table, RandomSource& rng);

// ---------------------------------------------------------------------------
// Table file format
//
//   # comment
//   name interval
//   Unison 25
//   Octave 2
//   ...
//
// Line oriented; blank lines and text after '#' are ignored. The first
// non-comment line must be the `name` header.
// ---------------------------------------------------------------------------

ProbabilityTable parse_table(std::istream& in);
ProbabilityTable parse_table(std::string_view text);
ProbabilityTable load_table(const std::string& path);
std::string format_table(const ProbabilityTable& table);

}  // namespace tunesmith
