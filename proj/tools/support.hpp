#pragma once

#include <fstream>
#include <string>

#include "commands.hpp"
#include "json.hpp"
#include "roughsew/dyadic_grid.hpp"
#include "roughsew/roughpath.hpp"
#include "roughsew/sewing.hpp"

namespace roughsew::cli {

std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

template <class T>
const T& required(const std::optional<T>& value, const char* flag) {
  if (!value) throw UsageError(std::string("missing required option ") + flag);
  return *value;
}

/// One entry of the "checks" array.
nlohmann::json make_check(const std::string& id, double measured, double bound, bool passed,
                          nlohmann::json detail = nlohmann::json::object());

/// Sorts checks by id, sets "passed" on the report and returns the exit code.
int finish_checks(nlohmann::json& report);

nlohmann::json tolerance_json(double value, const Tolerance& tolerance);
nlohmann::json sewing_report_json(const SewingReport& report);
nlohmann::json chen_json(const ChenDefectMax& chen, const DyadicGrid& grid);
nlohmann::json shuffle_json(const ShuffleDefectMax& shuffle, const DyadicGrid& grid);
nlohmann::json holder_report_json(const HolderReport& report, const DyadicGrid& grid);

/// Largest |B(s, u, t)| over every triple up to level 7 and over the level-7
/// subgrid plus a fixed pseudo-random set of triples above.
double max_abs_triple(const Grid3View& b);

}  // namespace roughsew::cli
