#include "analyzer/analyzer.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "midi/piece_io.h"

namespace tunesmith {

namespace {

constexpr std::array<const char*, 4> kIntervalLabels = {"Unison", "Octave", "Step", "Skip"};
constexpr std::array<const char*, 4> kSkipLabels = {"PerfectFifth", "PerfectFourth", "Third",
                                                    "Sixth"};

template <size_t N>
size_t label_index(const std::array<const char*, N>& labels, const std::string& label) {
  for (size_t i = 0; i < N; ++i) {
    if (label == labels[i]) return i;
  }
  throw std::logic_error("unknown label " + label);
}

template <size_t N>
ProbabilityTable make_table(std::string_view name, const std::array<const char*, N>& labels,
                            const std::array<long, N>& counts) {
  const auto percent = largest_remainder_percentages(std::vector<long>(counts.begin(), counts.end()));
  std::vector<TableEntry> entries;
  for (size_t i = 0; i < N; ++i) entries.push_back({labels[i], percent[i]});
  return ProbabilityTable(std::string(name), std::move(entries));
}

}  // namespace

std::vector<MelodyNote> extract_melody(const SmfFile& file) {
  std::vector<TimedNote> best;
  double best_mean = -1.0;
  for (const auto& track : file.tracks) {
    auto notes = collect_notes(track);
    std::erase_if(notes, [](const TimedNote& n) { return n.channel == kPercussionChannel; });
    if (notes.size() < kMinMelodyNotes) continue;
    double sum = 0.0;
    for (const auto& n : notes) sum += n.key;
    const double mean = sum / static_cast<double>(notes.size());
    if (mean > best_mean) {
      best_mean = mean;
      best = std::move(notes);
    }
  }
  std::map<Tick, const TimedNote*> skyline;
  for (const auto& n : best) {
    auto [it, inserted] = skyline.try_emplace(n.onset, &n);
    if (!inserted && n.key > it->second->key) it->second = &n;
  }
  std::vector<MelodyNote> melody;
  melody.reserve(skyline.size());
  for (const auto& [onset, n] : skyline) melody.push_back({n->key, n->duration});
  return melody;
}

std::optional<std::string> interval_class(int semitones) {
  const int size = std::abs(semitones);
  if (size == 0) return "Unison";
  if (size <= 2) return "Step";
  if (size <= 11) return "Skip";
  if (size == 12) return "Octave";
  return std::nullopt;
}

std::optional<std::string> skip_class(int semitones) {
  const int size = std::abs(semitones);
  if (size < 3 || size > 11) return std::nullopt;
  if (size <= 4) return "Third";
  if (size <= 6) return "PerfectFourth";
  if (size == 7) return "PerfectFifth";
  return "Sixth";
}

IntervalCounts& IntervalCounts::operator+=(const IntervalCounts& other) {
  for (size_t i = 0; i < interval.size(); ++i) interval[i] += other.interval[i];
  for (size_t i = 0; i < skip.size(); ++i) skip[i] += other.skip[i];
  for (size_t i = 0; i < semitones.size(); ++i) semitones[i] += other.semitones[i];
  discarded += other.discarded;
  return *this;
}

LengthCounts& LengthCounts::operator+=(const LengthCounts& other) {
  for (size_t i = 0; i < length.size(); ++i) length[i] += other.length[i];
  return *this;
}

IntervalCounts interval_histogram(const std::vector<MelodyNote>& melody) {
  IntervalCounts counts;
  for (size_t i = 1; i < melody.size(); ++i) {
    const int size = std::abs(melody[i].pitch - melody[i - 1].pitch);
    const auto cls = interval_class(size);
    if (!cls) {
      ++counts.discarded;
      continue;
    }
    ++counts.semitones[static_cast<size_t>(size)];
    ++counts.interval[label_index(kIntervalLabels, *cls)];
    if (auto skip = skip_class(size)) ++counts.skip[label_index(kSkipLabels, *skip)];
  }
  return counts;
}

LengthCounts length_histogram(const std::vector<MelodyNote>& melody, int ppq) {
  LengthCounts counts;
  for (const auto& note : melody) {
    ++counts.length[static_cast<size_t>(length_position(nearest_length(note.duration, ppq)))];
  }
  return counts;
}

std::vector<int> largest_remainder_percentages(const std::vector<long>& counts) {
  if (counts.empty()) throw std::invalid_argument("no categories to normalize");
  std::vector<long> c = counts;
  long total = std::accumulate(c.begin(), c.end(), 0L);
  if (total == 0) {
    std::fill(c.begin(), c.end(), 1L);
    total = static_cast<long>(c.size());
  }
  std::vector<int> out(c.size());
  std::vector<long> remainder(c.size());
  int assigned = 0;
  for (size_t i = 0; i < c.size(); ++i) {
    out[i] = static_cast<int>(c[i] * 100 / total);
    remainder[i] = c[i] * 100 % total;
    assigned += out[i];
  }
  std::vector<size_t> order(c.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return remainder[a] > remainder[b]; });
  for (size_t k = 0; assigned < 100; ++k, ++assigned) ++out[order[k % order.size()]];
  return out;
}

ProbabilityTable interval_table(const IntervalCounts& counts) {
  return make_table(kIntervalTableName, kIntervalLabels, counts.interval);
}

ProbabilityTable skip_table(const IntervalCounts& counts) {
  return make_table(kSkipTableName, kSkipLabels, counts.skip);
}

ProbabilityTable length_table(const LengthCounts& counts) {
  std::array<const char*, 6> labels{};
  std::vector<std::string> names;
  for (auto kind : kAllNoteLengths) names.emplace_back(to_string(kind));
  for (size_t i = 0; i < labels.size(); ++i) labels[i] = names[i].c_str();
  return make_table(kLengthTableName, labels, counts.length);
}

CorpusStats analyze_corpus(const std::vector<std::string>& paths) {
  CorpusStats stats;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      stats.warnings.push_back(path + ": cannot open");
      continue;
    }
    const Bytes bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    SmfFile file;
    try {
      file = read_smf(bytes);
    } catch (const ParseError& e) {
      stats.warnings.push_back(path + ": " + e.what());
      continue;
    }
    const auto melody = extract_melody(file);
    if (melody.empty()) {
      stats.warnings.push_back(path + ": no track with at least " +
                               std::to_string(kMinMelodyNotes) + " melodic notes");
      continue;
    }
    ++stats.file_count;
    stats.note_count += static_cast<long>(melody.size());
    stats.intervals += interval_histogram(melody);
    stats.lengths += length_histogram(melody, file.division);
  }
  if (stats.file_count == 0) {
    throw std::runtime_error("no usable MIDI files among " + std::to_string(paths.size()) +
                             " input(s)");
  }
  return stats;
}

std::vector<std::string> list_midi_files(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir);
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".mid" || ext == ".midi") out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string stats_to_json(const CorpusStats& stats, int indent) {
  auto table_json = [](const ProbabilityTable& table) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& e : table.entries()) j[e.label] = e.weight_percent;
    return j;
  };
  auto raw_json = [](const auto& labels, const auto& counts) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (size_t i = 0; i < counts.size(); ++i) j[labels[i]] = counts[i];
    return j;
  };
  std::vector<std::string> length_labels;
  for (auto kind : kAllNoteLengths) length_labels.emplace_back(to_string(kind));

  nlohmann::ordered_json j;
  j["file_count"] = stats.file_count;
  j["note_count"] = stats.note_count;
  j["discarded_intervals"] = stats.intervals.discarded;
  j["tables"] = {{"interval", table_json(stats.interval_table())},
                 {"skip", table_json(stats.skip_table())},
                 {"length", table_json(stats.length_table())}};
  j["raw_counts"] = {{"interval", raw_json(kIntervalLabels, stats.intervals.interval)},
                     {"skip", raw_json(kSkipLabels, stats.intervals.skip)},
                     {"length", raw_json(length_labels, stats.lengths.length)},
                     {"semitones", stats.intervals.semitones}};
  j["warnings"] = stats.warnings;
  return j.dump(indent);
}

}  // namespace tunesmith
