// Piece <-> SMF mapping. Layout: format 1, a conductor track (title, id and
// scale text, tempo, time signature) followed by one track per part named
// after its kind.

#pragma once

#include "core/model.h"
#include "midi/smf.h"

namespace tunesmith {

inline constexpr int kPercussionChannel = 9;
inline constexpr int kNoteOffVelocity = 64;

/// Sounding length after articulation: staccato 50%, normal 90%, tenuto
/// 100% of the notated duration (never below one tick).
Tick sounding_duration(const Note& note);

/// Percussion parts on channel 9, the others on 0, 1, ... skipping 9.
std::vector<int> assign_channels(const Piece& piece);

/// Text of the conductor-track text event, e.g. "tunesmith id=42 scale=C:major".
std::string piece_tag(const Piece& piece);

/// Builds the event lists. Same-tick order inside a track: note-offs, program
/// changes, then note-ons; ties keep note order. The end of every track sits
/// at the end of the piece.
SmfFile piece_to_smf(const Piece& piece);

/// check_piece_invariants, then piece_to_smf and encode_smf.
Bytes write_smf(const Piece& piece);

/// Rebuilds a piece. Track names give part kinds; unnamed tracks become the
/// main part (first melodic track), accompaniment, or percussion on channel
/// 9. Notes carry their sounding length with tenuto articulation, and rests
/// fill the gaps of measured parts so measure checks apply. Ticks are
/// rescaled to 480 per quarter. Without a tag the scale defaults to C major.
Piece piece_from_smf(const SmfFile& file);

}  // namespace tunesmith
