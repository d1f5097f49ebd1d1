// Post-composition checks: measure balance, scale conformance and
// syncopation. All functions are read-only over the piece.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/model.h"

namespace tunesmith {

struct UnbalancedMeasure {
  PartKind part = PartKind::Main;
  int measure = 0;

  friend bool operator==(const UnbalancedMeasure&, const UnbalancedMeasure&) = default;
};

struct ValidationReport {
  std::string piece_id;
  std::vector<UnbalancedMeasure> unbalanced_measures;
  int out_of_scale_count = 0;
  int syncopated_note_count = 0;
  std::vector<std::string> messages;

  bool clean() const { return unbalanced_measures.empty() && out_of_scale_count == 0; }
};

/// Measures of measured parts whose events (attributed to the measure of
/// their onset) do not tile the measure exactly. A measure with no onset in a
/// non-empty part is unbalanced too.
std::vector<UnbalancedMeasure> check_measures(const Piece& piece);

/// Pitched notes outside the piece scale, over every non-percussion part.
int check_scale(const Piece& piece);

/// Main-part notes that sound across a downbeat without starting on it.
/// Each such note counts once.
int check_rhythm(const Piece& piece);

/// Runs every check and renders the messages.
ValidationReport validate(const Piece& piece);

/// "Piece <id> has unbalanced measures" and "Piece <id> has <N> out-of-scale
/// notes", each only when applicable.
std::vector<std::string> render_report(const ValidationReport& report);

std::string report_to_json(const ValidationReport& report, int indent = 2);

}  // namespace tunesmith
