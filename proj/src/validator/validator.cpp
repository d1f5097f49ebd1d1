#include "validator/validator.h"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

namespace tunesmith {

std::vector<UnbalancedMeasure> check_measures(const Piece& piece) {
  std::vector<UnbalancedMeasure> out;
  const Tick measure = piece.meter.measure_ticks();
  for (const auto& part : piece.parts) {
    if (!is_measured_part(part.kind) || part.notes.empty()) continue;
    std::map<int, std::vector<const Note*>> by_measure;
    for (const auto& note : part.notes) {
      by_measure[static_cast<int>(note.onset / measure)].push_back(&note);
    }
    const int last = std::max(piece.measure_count, by_measure.rbegin()->first + 1);
    for (int m = 0; m < last; ++m) {
      auto found = by_measure.find(m);
      bool balanced = found != by_measure.end() && m < piece.measure_count;
      if (balanced) {
        auto notes = found->second;
        std::stable_sort(notes.begin(), notes.end(),
                         [](const Note* a, const Note* b) { return a->onset < b->onset; });
        Tick cursor = m * measure;
        for (const Note* note : notes) {
          if (note->onset != cursor) {
            balanced = false;
            break;
          }
          cursor = note->end();
        }
        balanced = balanced && cursor == (m + 1) * measure;
      }
      if (!balanced) out.push_back({part.kind, m});
    }
  }
  return out;
}

int check_scale(const Piece& piece) {
  int count = 0;
  for (const auto& part : piece.parts) {
    if (part.percussion()) continue;
    for (const auto& note : part.notes) {
      if (note.pitch && !in_scale(*note.pitch, piece.scale)) ++count;
    }
  }
  return count;
}

int check_rhythm(const Piece& piece) {
  const Part* main = piece.find(PartKind::Main);
  if (main == nullptr) return 0;
  const Tick measure = piece.meter.measure_ticks();
  int count = 0;
  for (const auto& note : main->notes) {
    if (!note.pitch) continue;
    const Tick first_bar = (note.onset / measure) * measure;
    bool crosses = false;
    for (Tick bar = first_bar; bar < note.end() && !crosses; bar += measure) {
      for (Tick d : piece.meter.downbeats) {
        const Tick at = bar + d;
        if (at > note.onset && at < note.end()) {
          crosses = true;
          break;
        }
      }
    }
    if (crosses) ++count;
  }
  return count;
}

std::vector<std::string> render_report(const ValidationReport& report) {
  std::vector<std::string> lines;
  if (!report.unbalanced_measures.empty()) {
    lines.push_back("Piece " + report.piece_id + " has unbalanced measures");
  }
  if (report.out_of_scale_count > 0) {
    lines.push_back("Piece " + report.piece_id + " has " + std::to_string(report.out_of_scale_count) +
                    " out-of-scale notes");
  }
  return lines;
}

ValidationReport validate(const Piece& piece) {
  ValidationReport report;
  report.piece_id = piece.id;
  report.unbalanced_measures = check_measures(piece);
  report.out_of_scale_count = check_scale(piece);
  report.syncopated_note_count = check_rhythm(piece);
  report.messages = render_report(report);
  return report;
}

std::string report_to_json(const ValidationReport& report, int indent) {
  nlohmann::ordered_json unbalanced = nlohmann::ordered_json::array();
  for (const auto& u : report.unbalanced_measures) {
    unbalanced.push_back({{"part", std::string(to_string(u.part))}, {"measure", u.measure}});
  }
  nlohmann::ordered_json j;
  j["piece_id"] = report.piece_id;
  j["unbalanced_measures"] = unbalanced;
  j["out_of_scale_count"] = report.out_of_scale_count;
  j["syncopated_note_count"] = report.syncopated_note_count;
  j["messages"] = report.messages;
  return j.dump(indent);
}

}  // namespace tunesmith
