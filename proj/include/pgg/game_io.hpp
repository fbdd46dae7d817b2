#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "pgg/game.hpp"

namespace pgg {

// Line-oriented game text format ('#' starts a comment):
//
//   pgg <n>
//   patterns <pattern>            # homogeneous default for all vertices
//   pattern <v> <pattern>         # per-vertex override, v in 1..n
//   edge <u> <v> [<weight>]       # weight >= 1, default 1
//
// Parsing is strict: unknown keywords, duplicate edges, missing patterns,
// and out-of-range ids are errors.
GameInstance parse_game(std::string_view text);
GameInstance load_game(const std::string& path);

// Canonical emission: header, a single `patterns` line when homogeneous
// (otherwise one `pattern` line per vertex), then edges in ascending order
// with unit weights omitted. write_game(parse_game(f)) == f for files in
// this canonical shape.
std::string write_game(const GameInstance& g);
void save_game(const GameInstance& g, const std::string& path);

}  // namespace pgg
