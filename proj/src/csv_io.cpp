#include "roughsew/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "roughsew/error.hpp"

namespace roughsew {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? comma : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double parse_number(std::string_view field, std::size_t line_no) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.remove_suffix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || end != field.data() + field.size() || !std::isfinite(v))
    throw ParseError("line " + std::to_string(line_no) + ": '" + std::string(field) +
                     "' is not a finite number");
  return v;
}

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(std::move(line));
  }
  if (in.bad()) throw ParseError("read error");
  if (lines.empty()) throw ParseError("empty CSV input");
  return lines;
}

std::vector<std::string> header_of(const std::string& line) {
  std::vector<std::string> out;
  for (std::string_view f : split(line)) out.emplace_back(f);
  return out;
}

void expect_header(const std::vector<std::string>& got, const std::vector<std::string>& want) {
  if (got != want) {
    std::string w;
    for (const auto& s : want) w += (w.empty() ? "" : ",") + s;
    throw ParseError("expected CSV header '" + w + "'");
  }
}

/// Grid whose points are exactly the given sorted distinct times.
DyadicGrid infer_grid(const std::vector<double>& times) {
  const std::size_t n = times.size();
  if (n < 2 || times.front() != 0.0)
    throw ParseError("time column must start at 0 and contain at least two points");
  int level = 0;
  while ((std::size_t{1} << level) + 1 < n) ++level;
  if ((std::size_t{1} << level) + 1 != n)
    throw ParseError("time column has " + std::to_string(n) +
                     " distinct points; a dyadic grid has 2^M + 1");
  const DyadicGrid grid(times.back(), level);
  for (std::size_t k = 0; k < n; ++k)
    if (std::abs(times[k] - grid.time(k)) > 1e-12 * grid.horizon())
      throw ParseError("time " + format_number(times[k]) + " is not the dyadic point " +
                       format_number(grid.time(k)));
  return grid;
}

std::size_t index_of(const DyadicGrid& grid, double t) {
  const double x = t / grid.horizon() * static_cast<double>(grid.last());
  const long long k = std::llround(x);
  if (k < 0 || static_cast<std::size_t>(k) > grid.last() ||
      std::abs(grid.time(static_cast<std::size_t>(k)) - t) > 1e-12 * grid.horizon())
    throw ParseError("time " + format_number(t) + " is not on the grid");
  return static_cast<std::size_t>(k);
}

std::vector<double> distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void write_path_csv(std::ostream& out, const Grid1Fn& path) {
  write_paths_csv(out, {"value"}, {path});
}

void write_paths_csv(std::ostream& out, const std::vector<std::string>& names,
                     const std::vector<Grid1Fn>& paths) {
  if (names.size() != paths.size() || paths.empty())
    throw std::invalid_argument("one name per path required");
  for (const Grid1Fn& p : paths)
    if (!(p.grid() == paths.front().grid())) throw LevelMismatch("paths on different grids");
  out << 't';
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  const DyadicGrid& grid = paths.front().grid();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out << format_number(grid.time(k));
    for (const Grid1Fn& p : paths) out << ',' << format_number(p[k]);
    out << '\n';
  }
}

std::vector<std::pair<std::string, Grid1Fn>> read_paths_csv(std::istream& in) {
  const std::vector<std::string> lines = read_lines(in);
  const std::vector<std::string> header = header_of(lines[0]);
  if (header.size() < 2 || header[0] != "t")
    throw ParseError("expected CSV header 't,<column>...'");
  const std::size_t cols = header.size();
  std::vector<std::pair<double, std::vector<double>>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i]);
    if (fields.size() != cols)
      throw ParseError("line " + std::to_string(i + 1) + ": expected " + std::to_string(cols) +
                       " fields");
    std::vector<double> vals;
    for (std::size_t c = 1; c < cols; ++c) vals.push_back(parse_number(fields[c], i + 1));
    rows.emplace_back(parse_number(fields[0], i + 1), std::move(vals));
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> times;
  for (const auto& r : rows) times.push_back(r.first);
  if (distinct(times).size() != times.size()) throw ParseError("duplicate time in path file");
  const DyadicGrid grid = infer_grid(times);
  std::vector<std::pair<std::string, Grid1Fn>> out;
  for (std::size_t c = 1; c < cols; ++c) {
    std::vector<double> v(grid.size());
    for (std::size_t k = 0; k < rows.size(); ++k) v[k] = rows[k].second[c - 1];
    out.emplace_back(header[c], Grid1Fn(grid, std::move(v)));
  }
  return out;
}

Grid1Fn read_path_csv(std::istream& in) {
  auto paths = read_paths_csv(in);
  if (paths.size() != 1) throw ParseError("expected a single value column");
  return std::move(paths.front().second);
}

void write_germ_csv(std::ostream& out, const Grid2Fn& a) {
  const DyadicGrid& grid = a.grid();
  out << "s,t,value\n";
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const std::string s = format_number(grid.time(j));
    for (std::size_t k = 0; k < grid.size(); ++k)
      out << s << ',' << format_number(grid.time(k)) << ',' << format_number(a(j, k)) << '\n';
  }
}

Grid2Fn read_germ_csv(std::istream& in) {
  const std::vector<std::string> lines = read_lines(in);
  expect_header(header_of(lines[0]), {"s", "t", "value"});
  std::vector<double> s, t, v;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i]);
    if (fields.size() != 3) throw ParseError("line " + std::to_string(i + 1) + ": expected 3 fields");
    s.push_back(parse_number(fields[0], i + 1));
    t.push_back(parse_number(fields[1], i + 1));
    v.push_back(parse_number(fields[2], i + 1));
  }
  const DyadicGrid grid = infer_grid(distinct(s));
  Grid2Fn::check_level(grid);
  const std::size_t n = grid.size();
  if (s.size() != n * n)
    throw ParseError("germ file needs every ordered pair: " + std::to_string(n * n) +
                     " rows expected, got " + std::to_string(s.size()));
  std::vector<double> values(n * n, 0.0);
  std::vector<char> seen(n * n, 0);
  for (std::size_t r = 0; r < s.size(); ++r) {
    const std::size_t p = index_of(grid, s[r]) * n + index_of(grid, t[r]);
    if (seen[p]) throw ParseError("duplicate pair in germ file");
    seen[p] = 1;
    values[p] = v[r];
  }
  return {grid, std::move(values)};
}

void write_rough_path_csv(std::ostream& out, const RoughPathGrid& x) {
  const DyadicGrid& grid = x.grid();
  std::vector<std::string> times;
  for (std::size_t k = 0; k < grid.size(); ++k) times.push_back(format_number(grid.time(k)));
  out << "s,t,word,value\n";
  // Word ids already run by degree, then lexicographically.
  for (std::size_t id = 0; id < x.word_count(); ++id) {
    const std::string word = x.algebra()->word(id).to_string();
    const Grid2Fn& v = x.values(id);
    for (std::size_t j = 0; j < grid.size(); ++j)
      for (std::size_t k = 0; k < grid.size(); ++k)
        out << times[j] << ',' << times[k] << ',' << word << ',' << format_number(v(j, k)) << '\n';
  }
}

RoughPathGrid read_rough_path_csv(std::istream& in, double alpha,
                                  std::optional<int> alphabet_size) {
  const std::vector<std::string> lines = read_lines(in);
  expect_header(header_of(lines[0]), {"s", "t", "word", "value"});
  struct Row {
    double s, t, value;
    Word word;
  };
  std::vector<Row> rows;
  rows.reserve(lines.size());
  std::vector<double> s_times;
  std::map<std::string, Word> words;
  int max_letter = 0, max_degree = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split(lines[i]);
    if (fields.size() != 4) throw ParseError("line " + std::to_string(i + 1) + ": expected 4 fields");
    const std::string key(fields[2]);
    auto it = words.find(key);
    if (it == words.end()) {
      Word w = Word::parse(key);
      if (w.empty()) throw ParseError("line " + std::to_string(i + 1) + ": empty word");
      it = words.emplace(key, std::move(w)).first;
    }
    const Word& w = it->second;
    max_degree = std::max(max_degree, w.degree());
    for (int a : w.letters()) max_letter = std::max(max_letter, a);
    rows.push_back({parse_number(fields[0], i + 1), parse_number(fields[1], i + 1),
                    parse_number(fields[3], i + 1), w});
    s_times.push_back(rows.back().s);
  }
  const int d = alphabet_size.value_or(max_letter);
  if (max_letter > d)
    throw ParseError("letter " + std::to_string(max_letter) + " outside alphabet 1.." +
                     std::to_string(d));
  const DyadicGrid grid = infer_grid(distinct(std::move(s_times)));
  Grid2Fn::check_level(grid);
  auto algebra = std::make_shared<const ShuffleAlgebra>(
      d, std::max(max_degree, ShuffleAlgebra::kDefaultTruncation),
      std::max(max_degree, ShuffleAlgebra::kDefaultCap));

  const std::size_t n = grid.size();
  std::size_t count = 0;
  for (int deg = 1; deg <= max_degree; ++deg) count += algebra->words(deg).size();
  std::vector<std::vector<double>> tables(count, std::vector<double>(n * n, 0.0));
  std::vector<std::vector<char>> seen(count, std::vector<char>(n * n, 0));
  for (const Row& r : rows) {
    const std::size_t id = algebra->id(r.word);
    const std::size_t p = index_of(grid, r.s) * n + index_of(grid, r.t);
    if (seen[id][p]) throw ParseError("duplicate row for word " + r.word.to_string());
    seen[id][p] = 1;
    tables[id][p] = r.value;
  }
  std::vector<Grid2Fn> values;
  for (std::size_t id = 0; id < count; ++id) {
    if (std::find(seen[id].begin(), seen[id].end(), 0) != seen[id].end())
      throw ParseError("word " + algebra->word(id).to_string() + " is missing grid pairs");
    values.emplace_back(grid, std::move(tables[id]));
  }
  return {algebra, grid, alpha, max_degree, std::move(values)};
}

}  // namespace roughsew
