#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "roughsew/dyadic_grid.hpp"
#include "roughsew/roughpath.hpp"

namespace roughsew {

// CSV files with a header row. Numbers are written in the shortest form that
// reads back to the same double, so dyadic times round-trip exactly. Readers
// infer the grid (level M and horizon T) from the time column and throw
// ParseError on malformed input.

std::string format_number(double v);

/// Columns `t,value`.
void write_path_csv(std::ostream& out, const Grid1Fn& path);
/// Columns `t,<name1>,<name2>,...`, one path per column.
void write_paths_csv(std::ostream& out, const std::vector<std::string>& names,
                     const std::vector<Grid1Fn>& paths);
/// Reads `t,<col>...` with one or more value columns; returns (name, path) pairs.
std::vector<std::pair<std::string, Grid1Fn>> read_paths_csv(std::istream& in);
/// Reads a single-column path file.
Grid1Fn read_path_csv(std::istream& in);

/// Columns `s,t,value` over every ordered pair, rows by (s-index, t-index).
void write_germ_csv(std::ostream& out, const Grid2Fn& a);
Grid2Fn read_germ_csv(std::istream& in);

/// Columns `s,t,word,value`, rows by (degree, word, s-index, t-index).
void write_rough_path_csv(std::ostream& out, const RoughPathGrid& x);
/// Rebuilds a rough path with the given alpha. The alphabet size defaults to
/// the largest letter present; every word up to the largest degree must be
/// present on every pair.
RoughPathGrid read_rough_path_csv(std::istream& in, double alpha,
                                  std::optional<int> alphabet_size = std::nullopt);

}  // namespace roughsew
