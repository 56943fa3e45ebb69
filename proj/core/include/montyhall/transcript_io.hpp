#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "montyhall/game.hpp"

namespace montyhall {

/// One transcript as a single-line JSON object. Doors are integers 1..3,
/// enumerations lowercase strings, strategies their label() form. The door
/// behind an "opened_other" action is carried in "opened_door".
std::string to_json_line(const GameTranscript& t);
GameTranscript parse_json_line(std::string_view line);

void write_jsonl(std::ostream& out, const std::vector<GameTranscript>& transcripts);
/// Blank lines are skipped; a malformed line throws InvalidParameter naming its line number.
std::vector<GameTranscript> read_jsonl(std::istream& in);

}  // namespace montyhall
