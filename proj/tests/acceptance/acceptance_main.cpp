// Acceptance suite: one PASS/FAIL line per criterion. Expected values come
// from oracles written here (hardcoded mode tables, interval classes, chord
// spelling) rather than from the library's own helpers wherever possible.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "analyzer/analyzer.h"
#include "engine/engine.h"
#include "melody/rules.h"
#include "melody/variations.h"
#include "midi/piece_io.h"
#include "midi/smf.h"
#include "validator/validator.h"

using namespace tunesmith;
namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// Pinned tolerances and sizes
// ---------------------------------------------------------------------------

constexpr int kDeterminismSeeds = 100;
constexpr double kDeterminismSeconds = 60.0;

constexpr long kFidelityIntervals = 100000;
constexpr double kFidelityTolerance = 1.5;  // percentage points
constexpr double kFidelitySeconds = 10.0;

constexpr int kLoopPieces = 200;
constexpr double kLoopTolerance = 2.0;
constexpr double kLoopSeconds = 120.0;

constexpr int kRulePieces = 1000;
constexpr double kRuleSeconds = 300.0;

constexpr int kDurationPieces = 1000;
constexpr double kMinSeconds = 60.0;
constexpr double kMaxSeconds = 300.0;

constexpr int kVariationMotifs = 1000;
constexpr double kVariationSeconds = 10.0;

constexpr int kHarmonyPieces = 500;

constexpr uint32_t kVlqExhaustiveMax = 1u << 16;
constexpr int kVlqRandom = 10000;
constexpr int kRoundTripPieces = 100;

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

// Semitones above the tonic of degrees 1..7, written out independently.
const std::map<Mode, std::array<int, 7>>& oracle_modes() {
  static const std::map<Mode, std::array<int, 7>> kModes = {
      {Mode::Major, {0, 2, 4, 5, 7, 9, 11}},      {Mode::NaturalMinor, {0, 2, 3, 5, 7, 8, 10}},
      {Mode::Lydian, {0, 2, 4, 6, 7, 9, 11}},     {Mode::Dorian, {0, 2, 3, 5, 7, 9, 10}},
      {Mode::Phrygian, {0, 1, 3, 5, 7, 8, 10}},   {Mode::Mixolydian, {0, 2, 4, 5, 7, 9, 10}},
  };
  return kModes;
}

// Degree 1..7 of a pitch, 0 when chromatic.
int oracle_degree(int midi, const Scale& scale) {
  const int offset = ((midi - scale.tonic) % 12 + 12) % 12;
  const auto& steps = oracle_modes().at(scale.mode);
  for (int d = 0; d < 7; ++d) {
    if (steps[static_cast<size_t>(d)] == offset) return d + 1;
  }
  return 0;
}

bool oracle_in_scale(int midi, const Scale& scale) { return oracle_degree(midi, scale) != 0; }

bool oracle_stable(int midi, const Scale& scale) {
  const int d = oracle_degree(midi, scale);
  return d == 1 || d == 3 || d == 5;
}

// Pitch-class set of the diatonic triad on a degree.
std::set<int> oracle_triad(int degree, const Scale& scale) {
  const auto& steps = oracle_modes().at(scale.mode);
  std::set<int> out;
  for (int k : {0, 2, 4}) out.insert((scale.tonic + steps[static_cast<size_t>((degree - 1 + k) % 7)]) % 12);
  return out;
}

std::string oracle_interval_class(int semitones) {
  const int s = std::abs(semitones);
  if (s == 0) return "Unison";
  if (s == 1 || s == 2) return "Step";
  if (s == 12) return "Octave";
  if (s <= 11) return "Skip";
  return "";
}

std::string oracle_skip_class(int semitones) {
  const int s = std::abs(semitones);
  if (s == 3 || s == 4) return "Third";
  if (s == 5 || s == 6) return "PerfectFourth";
  if (s == 7) return "PerfectFifth";
  if (s >= 8 && s <= 11) return "Sixth";
  return "";
}

// Closest of 120, 240, 480, 720, 960, 1920 ticks; ties go to the shorter.
std::string oracle_length_class(Tick duration) {
  static const std::vector<std::pair<Tick, std::string>> kLengths = {
      {120, "Sixteenth"}, {240, "Eighth"}, {480, "Quarter"},
      {720, "DottedQuarter"}, {960, "Half"}, {1920, "Whole"}};
  std::string best;
  Tick best_distance = -1;
  for (const auto& [ticks, name] : kLengths) {
    const Tick d = std::llabs(duration - ticks);
    if (best_distance < 0 || d < best_distance) {
      best_distance = d;
      best = name;
    }
  }
  return best;
}

std::vector<const Note*> pitched(const Part& part) {
  std::vector<const Note*> out;
  for (const auto& n : part.notes) {
    if (n.pitch) out.push_back(&n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Plumbing
// ---------------------------------------------------------------------------

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::string fixed(double v, int digits = 2) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << v;
  return out.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("tunesmith_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

Bytes read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_bytes(const fs::path& path, const Bytes& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

ComposeRequest request_for(uint64_t seed) {
  ComposeRequest r;
  r.seed = seed;
  return r;
}

ComposeRequest test_mode_request(uint64_t seed) {
  ComposeRequest r;
  r.seed = seed;
  r.parts = std::vector<PartKind>{PartKind::Main};
  r.constraints_enabled = false;
  return r;
}

template <typename Map>
std::string distribution_line(const Map& counts, long total, const GenerationTables& tables,
                              const ProbabilityTable& table, double tolerance, Outcome& out) {
  (void)tables;
  std::string line;
  for (const auto& entry : table.entries()) {
    auto it = counts.find(entry.label);
    const long c = it == counts.end() ? 0 : it->second;
    const double pct = 100.0 * static_cast<double>(c) / static_cast<double>(std::max(1L, total));
    if (std::fabs(pct - entry.weight_percent) > tolerance) {
      out.fail(entry.label + " at " + fixed(pct) + "% vs " + std::to_string(entry.weight_percent) + "%");
    }
    line += entry.label + "=" + fixed(pct, 1) + " ";
  }
  return line;
}

// ---------------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------------

Outcome criterion_determinism() {
  Outcome out;
  Timer timer;
  std::mt19937_64 pick(20261015);
  const fs::path dir = scratch_dir() / "determinism";
  fs::create_directories(dir);
  int identical = 0;
  for (int i = 0; i < kDeterminismSeeds; ++i) {
    const uint64_t seed = pick() % 1000000007ULL;
    std::array<Bytes, 2> mid, json;
    for (int k = 0; k < 2; ++k) {
      const fs::path file = dir / ("run" + std::to_string(k) + ".mid");
      const std::string cmd = shell_quote(TS_CLI_PATH) + " compose --seed " + std::to_string(seed) +
                              " -o " + shell_quote(file.string()) + " > /dev/null 2>&1";
      const int code = run(cmd);
      if (code != 0) {
        out.fail("compose exited " + std::to_string(code) + " for seed " + std::to_string(seed));
        return out;
      }
      mid[static_cast<size_t>(k)] = read_bytes(file);
      json[static_cast<size_t>(k)] = read_bytes(fs::path(file).replace_extension(".json"));
    }
    if (mid[0].empty() || mid[0] != mid[1] || json[0].empty() || json[0] != json[1]) {
      out.fail("outputs differ for seed " + std::to_string(seed));
    } else {
      ++identical;
    }
  }
  const double s = timer.seconds();
  if (s >= kDeterminismSeconds) out.fail("took " + fixed(s) + " s");
  if (out.pass) {
    out.detail = std::to_string(identical) + "/" + std::to_string(kDeterminismSeeds) +
                 " seeds byte-identical (.mid and .json) via the CLI in " + fixed(s) + " s";
  }
  return out;
}

struct TestModeSample {
  std::map<std::string, long> intervals;
  long interval_total = 0;
  std::map<std::string, long> lengths;
  long length_total = 0;
  double seconds = 0.0;
};

// Generates constraint-free pieces until 10^5 intervals are collected.
const TestModeSample& test_mode_sample() {
  static const TestModeSample sample = [] {
    TestModeSample s;
    Timer timer;
    for (uint64_t seed = 1; s.interval_total < kFidelityIntervals; ++seed) {
      const auto c = compose(test_mode_request(seed));
      const auto notes = pitched(c.piece.main());
      for (size_t i = 1; i < notes.size(); ++i) {
        ++s.intervals[oracle_interval_class(notes[i]->pitch->midi - notes[i - 1]->pitch->midi)];
        ++s.interval_total;
      }
      // every note but the last
      for (size_t i = 0; i + 1 < notes.size(); ++i) {
        ++s.lengths[oracle_length_class(notes[i]->duration)];
        ++s.length_total;
      }
    }
    s.seconds = timer.seconds();
    return s;
  }();
  return sample;
}

Outcome criterion_interval_fidelity() {
  Outcome out;
  const auto& s = test_mode_sample();
  const auto tables = builtin_tables();
  const std::string line =
      distribution_line(s.intervals, s.interval_total, tables, tables.interval, kFidelityTolerance, out);
  if (s.seconds >= kFidelitySeconds) out.fail("took " + fixed(s.seconds) + " s");
  if (out.pass) {
    out.detail = std::to_string(s.interval_total) + " intervals: " + line + "(tol ±" +
                 fixed(kFidelityTolerance, 1) + ", " + fixed(s.seconds) + " s)";
  }
  return out;
}

Outcome criterion_length_fidelity() {
  Outcome out;
  const auto& s = test_mode_sample();
  const auto tables = builtin_tables();
  const std::string line =
      distribution_line(s.lengths, s.length_total, tables, tables.length, kFidelityTolerance, out);
  if (s.seconds >= kFidelitySeconds) out.fail("took " + fixed(s.seconds) + " s");
  if (out.pass) {
    out.detail = std::to_string(s.length_total) + " lengths: " + line + "(tol ±" +
                 fixed(kFidelityTolerance, 1) + ")";
  }
  return out;
}

Outcome criterion_closing_loop() {
  Outcome out;
  Timer timer;
  const fs::path dir = scratch_dir() / "corpus";
  fs::create_directories(dir);
  for (int i = 0; i < kLoopPieces; ++i) {
    const auto c = compose(test_mode_request(5000 + static_cast<uint64_t>(i)));
    write_bytes(dir / ("piece-" + std::to_string(i) + ".mid"), write_smf(c.piece));
  }
  const CorpusStats stats = analyze_corpus(list_midi_files(dir.string()));
  if (stats.file_count != kLoopPieces) out.fail("analyzed " + std::to_string(stats.file_count) + " files");
  const auto expected = builtin_tables();
  std::string line;
  auto compare = [&](const ProbabilityTable& got, const ProbabilityTable& want) {
    for (const auto& e : want.entries()) {
      const int g = got.weight(e.label);
      if (std::abs(g - e.weight_percent) > kLoopTolerance) {
        out.fail(want.name() + "." + e.label + " recovered " + std::to_string(g) + " vs " +
                 std::to_string(e.weight_percent));
      }
      line += e.label + "=" + std::to_string(g) + " ";
    }
  };
  compare(stats.interval_table(), expected.interval);
  compare(stats.skip_table(), expected.skip);
  compare(stats.length_table(), expected.length);
  const double s = timer.seconds();
  if (s >= kLoopSeconds) out.fail("took " + fixed(s) + " s");
  if (out.pass) {
    out.detail = std::to_string(stats.file_count) + " files, " + std::to_string(stats.note_count) +
                 " notes: " + line + "(tol ±" + fixed(kLoopTolerance, 0) + ", " + fixed(s) + " s)";
  }
  return out;
}

// Independent tiling check of one measured part.
bool oracle_tiles(const Part& part, Tick measure, int measures) {
  Tick cursor = 0;
  for (const auto& n : part.notes) {
    if (n.onset != cursor) return false;
    if (n.onset / measure != (n.end() - 1) / measure) return false;
    cursor = n.end();
  }
  return cursor == measure * measures;
}

Outcome criterion_rule_invariants() {
  Outcome out;
  Timer timer;
  long unbalanced = 0, out_of_scale = 0, unstable_runs = 0, unresolved_jumps = 0, missing_onsets = 0;
  long jumps = 0, downbeats = 0;
  for (int i = 0; i < kRulePieces; ++i) {
    ComposeRequest r = request_for(static_cast<uint64_t>(10000 + i));
    r.dissonance_percent = 0;
    r.syncopation_percent = 0;
    const auto c = compose(r);
    const Piece& p = c.piece;
    const Tick measure = p.meter.measure_ticks();

    unbalanced += static_cast<long>(c.report.unbalanced_measures.size());
    for (const auto& part : p.parts) {
      if (is_measured_part(part.kind) && !oracle_tiles(part, measure, p.measure_count)) ++unbalanced;
      if (part.percussion()) continue;
      for (const auto& n : part.notes) {
        if (n.pitch && !oracle_in_scale(n.pitch->midi, p.scale)) ++out_of_scale;
      }
    }
    if (c.report.out_of_scale_count != 0) ++out_of_scale;

    const auto notes = pitched(p.main());
    int run_length = 0;
    for (size_t k = 0; k < notes.size(); ++k) {
      run_length = oracle_stable(notes[k]->pitch->midi, p.scale) ? 0 : run_length + 1;
      if (run_length >= 3) ++unstable_runs;
      if (k + 1 < notes.size() && k >= 1) {
        const int jump = notes[k]->pitch->midi - notes[k - 1]->pitch->midi;
        if (std::abs(jump) > 7) {
          ++jumps;
          const int next = notes[k + 1]->pitch->midi - notes[k]->pitch->midi;
          const bool opposite_step = std::abs(next) >= 1 && std::abs(next) <= 2 && (next > 0) != (jump > 0);
          if (!opposite_step) ++unresolved_jumps;
        }
      }
    }
    std::set<Tick> onsets;
    for (const auto* n : notes) onsets.insert(n->onset);
    for (int m = 0; m < p.measure_count; ++m) {
      for (Tick d : p.meter.downbeats) {
        ++downbeats;
        if (!onsets.count(m * measure + d)) ++missing_onsets;
      }
    }
  }
  if (unbalanced) out.fail(std::to_string(unbalanced) + " unbalanced measures");
  if (out_of_scale) out.fail(std::to_string(out_of_scale) + " out-of-scale notes");
  if (unstable_runs) out.fail(std::to_string(unstable_runs) + " runs of 3 unstable tones");
  if (unresolved_jumps) out.fail(std::to_string(unresolved_jumps) + " jumps not followed by an opposite step");
  if (missing_onsets) out.fail(std::to_string(missing_onsets) + " downbeats without a new note");
  const double s = timer.seconds();
  if (s >= kRuleSeconds) out.fail("took " + fixed(s) + " s");
  if (out.pass) {
    out.detail = std::to_string(kRulePieces) + " pieces (dissonance 0, syncopation 0): 0 unbalanced, "
                 "0 out-of-scale, 0 unstable triples, " + std::to_string(jumps) +
                 " long jumps all resolved, " + std::to_string(downbeats) + " downbeats all struck (" +
                 fixed(s) + " s)";
  }
  return out;
}

// Default-configuration pieces shared by criteria 6 and 7.
const std::vector<Composition>& default_pieces() {
  static const std::vector<Composition> pieces = [] {
    std::vector<Composition> out;
    out.reserve(kDurationPieces);
    for (int i = 0; i < kDurationPieces; ++i) out.push_back(compose(request_for(static_cast<uint64_t>(i))));
    return out;
  }();
  return pieces;
}

Outcome criterion_duration() {
  Outcome out;
  double lo = 1e9, hi = 0.0;
  for (const auto& c : default_pieces()) {
    const Piece& p = c.piece;
    // quarters in the piece × seconds per quarter
    const double quarters = static_cast<double>(p.measure_count) * p.meter.numerator * 4.0 / p.meter.denominator;
    const double seconds = quarters * 60.0 / p.tempo_bpm;
    const double from_ticks = static_cast<double>(p.main().end_tick()) / kPpq * 60.0 / p.tempo_bpm;
    lo = std::min(lo, seconds);
    hi = std::max(hi, seconds);
    if (seconds < kMinSeconds || seconds > kMaxSeconds) {
      out.fail("seed " + std::to_string(p.seed) + " lasts " + fixed(seconds) + " s");
    }
    if (std::fabs(from_ticks - seconds) > 1e-9) out.fail("seed " + std::to_string(p.seed) + " main part ends early");
  }
  if (out.pass) {
    out.detail = std::to_string(default_pieces().size()) + " default pieces, playing time " + fixed(lo) +
                 "-" + fixed(hi) + " s";
  }
  return out;
}

Outcome criterion_cadence() {
  Outcome out;
  for (const auto& c : default_pieces()) {
    const Piece& p = c.piece;
    const auto notes = pitched(p.main());
    if (notes.empty()) {
      out.fail("seed " + std::to_string(p.seed) + " has no notes");
      continue;
    }
    const Note* last = notes.back();
    if ((last->pitch->midi - p.scale.tonic) % 12 != 0) {
      out.fail("seed " + std::to_string(p.seed) + " ends on " + std::to_string(last->pitch->midi));
    }
    if (last->end() != p.total_ticks()) out.fail("seed " + std::to_string(p.seed) + " last note ends early");
  }
  if (out.pass) out.detail = std::to_string(default_pieces().size()) + " pieces end on the tonic pitch class";
  return out;
}

Outcome criterion_variations() {
  Outcome out;
  Timer timer;
  std::mt19937_64 pick(77);
  const auto tables = builtin_tables();
  const std::vector<Meter> meters = {make_meter(4, 4), make_meter(3, 4), make_meter(2, 4),
                                     make_meter(6, 8), make_meter(5, 8), make_meter(7, 8)};
  std::array<long, 8> checked{};
  for (int i = 0; i < kVariationMotifs; ++i) {
    const Scale scale{static_cast<int>(pick() % 12), kAllModes[pick() % kAllModes.size()]};
    const Meter& meter = meters[pick() % meters.size()];
    MelodySettings settings;
    settings.syncopation_percent = static_cast<int>(pick() % 2) * 5;
    RandomSource rng(pick());
    LocalContext ctx;
    Motif motif;
    motif.length_measures = 1 + static_cast<int>(pick() % 2);
    motif.notes = fill_span(ctx, 0, motif.length_measures * meter.measure_ticks(), meter, scale, tables,
                            settings, rng);
    const VariationEnv env{scale, meter, tables, settings, 80};
    const Tick span = motif.length_measures * meter.measure_ticks();

    const Motif back = retrograde_motif(retrograde_motif(motif));
    if (back.notes != motif.notes) out.fail("retrograde is not an involution (motif " + std::to_string(i) + ")");

    const int k = 1 + static_cast<int>(pick() % 3);
    bool in_scale_motif = std::all_of(motif.notes.begin(), motif.notes.end(), [&](const Note& n) {
      return !n.pitch || oracle_in_scale(n.pitch->midi, scale);
    });
    if (in_scale_motif && transpose_motif(transpose_motif(motif, k, scale), -k, scale).notes != motif.notes) {
      out.fail("transposition by " + std::to_string(k) + " does not round-trip (motif " + std::to_string(i) + ")");
    }

    for (size_t v = 0; v < kAllVariations.size(); ++v) {
      const Motif varied = apply_variation(motif, kAllVariations[v], env, rng);
      Tick total = 0, cursor = 0;
      bool contiguous = true;
      for (const auto& n : varied.notes) {
        total += n.duration;
        if (n.onset != cursor) contiguous = false;
        cursor = n.end();
      }
      if (total != span || !contiguous) {
        out.fail(std::string(to_string(kAllVariations[v])) + " changed the duration (motif " +
                 std::to_string(i) + ")");
      }
      ++checked[v];
    }
  }
  const double s = timer.seconds();
  if (s >= kVariationSeconds) out.fail("took " + fixed(s) + " s");
  if (out.pass) {
    out.detail = std::to_string(kVariationMotifs) + " motifs: retrograde involution, transposition "
                 "round trip, duration kept by all 8 kinds (" + fixed(s) + " s)";
  }
  return out;
}

// Degree of the diatonic triad matching a pitch-class set, 0 when none does.
int oracle_chord_degree(const std::set<int>& classes, const Scale& scale) {
  for (int d = 1; d <= 7; ++d) {
    if (oracle_triad(d, scale) == classes) return d;
  }
  return 0;
}

Outcome criterion_harmony() {
  Outcome out;
  long chords = 0, arpeggio_measures = 0;
  for (PartKind kind : {PartKind::Accompaniment, PartKind::Arpeggio}) {
    for (int i = 0; i < kHarmonyPieces; ++i) {
      ComposeRequest r = request_for(static_cast<uint64_t>(20000 + i));
      r.parts = std::vector<PartKind>{PartKind::Main, kind};
      const auto c = compose(r);
      const Piece& p = c.piece;
      const Tick measure = p.meter.measure_ticks();
      const Part* part = p.find(kind);
      std::vector<std::set<int>> per_measure(static_cast<size_t>(p.measure_count));
      for (const auto& n : part->notes) per_measure[static_cast<size_t>(n.onset / measure)].insert(n.pitch->pitch_class());
      bool prev_unstable = false;
      for (int m = 0; m < p.measure_count; ++m) {
        const int degree = oracle_chord_degree(per_measure[static_cast<size_t>(m)], p.scale);
        if (degree == 0) {
          out.fail("seed " + std::to_string(p.seed) + " measure " + std::to_string(m) + " is not a diatonic triad");
          continue;
        }
        const bool unstable = degree != 1 && degree != 4 && degree != 5;
        if (unstable && prev_unstable) {
          out.fail("seed " + std::to_string(p.seed) + " has consecutive unstable chords at measure " +
                   std::to_string(m));
        }
        prev_unstable = unstable;
        std::set<int> main_classes;
        for (const auto& n : p.main().notes) {
          if (n.pitch && n.onset < (m + 1) * measure && n.end() > m * measure) {
            main_classes.insert(n.pitch->pitch_class());
          }
        }
        const bool shares = std::any_of(per_measure[static_cast<size_t>(m)].begin(),
                                        per_measure[static_cast<size_t>(m)].end(),
                                        [&](int pc) { return main_classes.count(pc) > 0; });
        if (!shares) {
          out.fail("seed " + std::to_string(p.seed) + " measure " + std::to_string(m) +
                   " chord shares no pitch class with the main part");
        }
        ++chords;
      }
      if (kind == PartKind::Arpeggio) {
        if (!oracle_tiles(*part, measure, p.measure_count)) {
          out.fail("seed " + std::to_string(p.seed) + " arpeggio does not tile its measures");
        }
        arpeggio_measures += p.measure_count;
      } else {
        for (const auto& n : part->notes) {
          if (n.onset % measure != 0 || n.duration != measure) {
            out.fail("seed " + std::to_string(p.seed) + " chord not on a bar line");
            break;
          }
        }
      }
    }
  }
  if (out.pass) {
    out.detail = std::to_string(kHarmonyPieces) + " pieces each with accompaniment and arpeggio: " +
                 std::to_string(chords) + " chords, no unstable pairs, all harmonize; " +
                 std::to_string(arpeggio_measures) + " arpeggio measures tile exactly";
  }
  return out;
}

uint32_t oracle_decode_vlq(const Bytes& b) {
  uint32_t v = 0;
  for (uint8_t byte : b) v = (v << 7) | (byte & 0x7F);
  return v;
}

Outcome criterion_midi() {
  Outcome out;
  // VLQ: exhaustive low range, random high range, pinned boundary bytes.
  for (uint32_t v = 0; v <= kVlqExhaustiveMax; ++v) {
    const Bytes b = encode_vlq(v);
    size_t pos = 0;
    if (decode_vlq(b, pos) != v || pos != b.size() || oracle_decode_vlq(b) != v) {
      out.fail("VLQ round trip fails at " + std::to_string(v));
      break;
    }
  }
  std::mt19937 pick(4242);
  for (int i = 0; i < kVlqRandom; ++i) {
    const uint32_t v = pick() % (kMaxVlq + 1u);
    const Bytes b = encode_vlq(v);
    size_t pos = 0;
    if (decode_vlq(b, pos) != v) out.fail("VLQ round trip fails at " + std::to_string(v));
  }
  if (encode_vlq(0x0FFFFFFF) != Bytes{0xFF, 0xFF, 0xFF, 0x7F}) out.fail("VLQ boundary bytes");
  if (encode_vlq(480) != Bytes{0x83, 0x60}) out.fail("VLQ 480 bytes");

  // Piece write -> read -> write, and event counts for the third-party reader.
  const fs::path dir = scratch_dir() / "roundtrip";
  fs::create_directories(dir);
  std::ofstream expected(dir / "expected.txt");
  for (int i = 0; i < kRoundTripPieces; ++i) {
    ComposeRequest r = request_for(static_cast<uint64_t>(30000 + i));
    if (i % 2 == 0) {
      r.parts = std::vector<PartKind>(kAllPartKinds.begin(), kAllPartKinds.end());
      r.parts->erase(std::find(r.parts->begin(), r.parts->end(), PartKind::Arpeggio));
    }
    const auto c = compose(r);
    const Bytes first = write_smf(c.piece);
    const SmfFile parsed = read_smf(first);
    const Bytes second = write_smf(piece_from_smf(parsed));
    if (first != second) out.fail("write/read/write differs for seed " + std::to_string(c.piece.seed));
    const fs::path file = dir / ("piece-" + std::to_string(i) + ".mid");
    write_bytes(file, first);
    long ons = 0;
    for (const auto& t : parsed.tracks) {
      long track_ons = 0, track_offs = 0;
      for (const auto& e : t.events) {
        track_ons += std::holds_alternative<midi::NoteOn>(e.payload);
        track_offs += std::holds_alternative<midi::NoteOff>(e.payload);
      }
      if (track_ons != track_offs) out.fail("unbalanced note on/off in seed " + std::to_string(c.piece.seed));
      ons += track_ons;
    }
    expected << file.filename().string() << " " << parsed.tracks.size() << " " << ons << "\n";
  }
  expected.close();

  const fs::path script = dir / "check.py";
  std::ofstream(script) << "import sys, os, mido\n"
                           "d = sys.argv[1]\n"
                           "bad = 0\n"
                           "for line in open(os.path.join(d, 'expected.txt')):\n"
                           "    name, tracks, ons = line.split()\n"
                           "    m = mido.MidiFile(os.path.join(d, name))\n"
                           "    got = sum(1 for t in m.tracks for e in t if e.type == 'note_on' and e.velocity > 0)\n"
                           "    if m.type != 1 or m.ticks_per_beat != 480 or len(m.tracks) != int(tracks) or got != int(ons):\n"
                           "        print('mismatch', name); bad += 1\n"
                           "print('mido ok')\n"
                           "sys.exit(1 if bad else 0)\n";
  const std::string cmd = shell_quote(TS_PYTHON) + " " + shell_quote(script.string()) + " " +
                          shell_quote(dir.string()) + " > " + shell_quote((dir / "mido.log").string()) + " 2>&1";
  const int code = run(cmd);
  if (code != 0) {
    std::ifstream log(dir / "mido.log");
    std::string first_line;
    std::getline(log, first_line);
    out.fail("third-party reader (python mido) rejected output: " + first_line);
  }
  if (out.pass) {
    out.detail = "VLQ 0..2^16 exhaustive + " + std::to_string(kVlqRandom) + " random + boundary; " +
                 std::to_string(kRoundTripPieces) + " pieces byte-stable; python mido read all " +
                 std::to_string(kRoundTripPieces) + " files with matching counts";
  }
  return out;
}

// A 4/4 piece in C major whose fourth measure holds five quarters (its last
// note is a half note running over the bar line) and with nine C# notes.
Piece validator_fixture(const std::string& id) {
  Piece p;
  p.id = id;
  p.scale = Scale{0, Mode::Major};
  p.meter = make_meter(4, 4);
  p.tempo_bpm = 120;
  p.measure_count = 32;
  Part main;
  main.kind = PartKind::Main;
  Tick t = 0;
  for (int m = 0; m < p.measure_count; ++m) {
    for (int q = 0; q < 4; ++q) {
      Note n;
      const bool sharp = m >= 10 && m < 19 && q == 1;
      n.pitch = Pitch(sharp ? 61 : 60);
      n.onset = t;
      n.duration = (m == 3 && q == 3) ? 2 * kPpq : kPpq;
      n.articulation = Articulation::Tenuto;
      main.notes.push_back(n);
      t += n.duration;
    }
  }
  p.measure_count = static_cast<int>((t + p.meter.measure_ticks() - 1) / p.meter.measure_ticks());
  p.parts.push_back(main);
  return p;
}

Outcome criterion_validator() {
  Outcome out;
  const Piece fixture = validator_fixture("X");
  const std::vector<std::string> want = {"Piece X has unbalanced measures", "Piece X has 9 out-of-scale notes"};
  const auto lines = render_report(validate(fixture));
  if (lines != want) out.fail("in-memory fixture rendered unexpected lines");

  // Same fixture through a file and the CLI.
  const fs::path file = scratch_dir() / "fixture.mid";
  write_bytes(file, encode_smf(piece_to_smf(fixture)));
  const fs::path log = scratch_dir() / "fixture.txt";
  const int code = run(shell_quote(TS_CLI_PATH) + " validate " + shell_quote(file.string()) + " > " +
                       shell_quote(log.string()) + " 2>&1");
  std::ifstream in(log);
  std::vector<std::string> cli_lines;
  for (std::string line; std::getline(in, line);) cli_lines.push_back(line);
  if (code != 1) out.fail("validate exited " + std::to_string(code) + ", expected 1");
  if (cli_lines != want) out.fail("CLI printed unexpected lines");

  Piece scale_only = validator_fixture("7");
  scale_only.parts[0].notes.clear();
  for (int q = 0; q < 4 * scale_only.measure_count; ++q) {
    Note n;
    n.pitch = Pitch(q < 3 ? 66 : 67);
    n.onset = q * kPpq;
    n.duration = kPpq;
    scale_only.parts[0].notes.push_back(n);
  }
  if (render_report(validate(scale_only)) != std::vector<std::string>{"Piece 7 has 3 out-of-scale notes"}) {
    out.fail("scale-only fixture");
  }
  Piece clean = scale_only;
  for (auto& n : clean.parts[0].notes) n.pitch = Pitch(67);
  if (!render_report(validate(clean)).empty()) out.fail("clean fixture produced lines");

  if (out.pass) {
    out.detail = "fixtures yield exactly \"" + want[0] + "\" and \"" + want[1] +
                 "\" (in memory and via `validate`, exit 1); single-line and clean cases match";
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "determinism", criterion_determinism},
      {2, "interval-table fidelity", criterion_interval_fidelity},
      {3, "length-table fidelity", criterion_length_fidelity},
      {4, "analyzer closes the loop", criterion_closing_loop},
      {5, "rule invariants", criterion_rule_invariants},
      {6, "duration bound", criterion_duration},
      {7, "cadence", criterion_cadence},
      {8, "variation oracles", criterion_variations},
      {9, "harmony invariants", criterion_harmony},
      {10, "MIDI round trip", criterion_midi},
      {11, "validator messages", criterion_validator},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << outcome.detail
              << std::endl;
  }
  std::error_code ec;
  fs::remove_all(scratch_dir(), ec);
  std::cout << (criteria.size() - static_cast<size_t>(failures)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
