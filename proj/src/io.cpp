#include "ordpat/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace ordpat {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string where(const std::string& source, std::size_t line, std::size_t column) {
  std::ostringstream os;
  os << source << ':' << line;
  if (column) os << ':' << column;
  return os.str();
}

}  // namespace

ClassMatrix parse_class_matrix(std::istream& in, const std::string& source) {
  ClassMatrix m;
  std::vector<std::vector<int>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);

    if (!have_header) {
      if (fields.size() < 2) throw DataError(where(source, line_no, 0) + ": header needs an id column and at least one gauge", line_no);
      std::set<std::string> seen;
      for (std::size_t c = 1; c < fields.size(); ++c) {
        if (fields[c].empty()) throw DataError(where(source, line_no, c + 1) + ": empty gauge label", line_no, c + 1);
        if (!seen.insert(fields[c]).second)
          throw DataError(where(source, line_no, c + 1) + ": duplicate gauge label '" + fields[c] + "'", line_no, c + 1);
        m.gauges.push_back(fields[c]);
      }
      have_header = true;
      continue;
    }

    if (fields.size() != m.gauges.size() + 1)
      throw DataError(where(source, line_no, 0) + ": expected " + std::to_string(m.gauges.size() + 1) +
                          " fields, found " + std::to_string(fields.size()),
                      line_no);
    if (fields[0].empty()) throw DataError(where(source, line_no, 1) + ": empty event id", line_no, 1);
    std::vector<int> row(m.gauges.size());
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const std::string& cell = fields[c];
      if (cell.empty()) throw DataError(where(source, line_no, c + 1) + ": empty cell", line_no, c + 1);
      int value = 0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw DataError(where(source, line_no, c + 1) + ": cell '" + cell + "' (row " + std::to_string(rows.size() + 1) +
                            ", column '" + m.gauges[c - 1] + "') is not an integer",
                        line_no, c + 1);
      row[c - 1] = value;
    }
    bool any_flood = false;
    for (const int v : row) any_flood = any_flood || v >= 0;
    if (!any_flood) throw DataError(where(source, line_no, 0) + ": event '" + fields[0] + "' has no flood at any gauge", line_no);
    m.event_ids.push_back(fields[0]);
    rows.push_back(std::move(row));
  }
  if (!have_header) throw DataError(source + ": missing header row");

  m.classes.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(m.gauges.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m.classes(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

ClassMatrix load_class_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return parse_class_matrix(in, path.string());
}

void write_class_matrix(std::ostream& out, const ClassMatrix& matrix, const std::string& id_label) {
  out << id_label;
  for (const auto& g : matrix.gauges) out << ',' << g;
  out << '\n';
  for (Eigen::Index r = 0; r < matrix.classes.rows(); ++r) {
    if (static_cast<std::size_t>(r) < matrix.event_ids.size())
      out << matrix.event_ids[static_cast<std::size_t>(r)];
    else
      out << r + 1;
    for (Eigen::Index c = 0; c < matrix.classes.cols(); ++c) out << ',' << matrix.classes(r, c);
    out << '\n';
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void save_class_matrix(const std::filesystem::path& path, const ClassMatrix& matrix, const std::string& id_label) {
  auto out = open_output(path);
  write_class_matrix(out, matrix, id_label);
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

void emit_plot_data(const ClassMatrix& matrix, const std::vector<std::string>& gauges,
                    const std::filesystem::path& path) {
  const auto cols = resolve_gauges(matrix, gauges);
  ClassMatrix panel;
  for (const auto c : cols) panel.gauges.push_back(matrix.gauges[static_cast<std::size_t>(c)]);
  panel.classes.resize(matrix.classes.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) panel.classes.col(static_cast<Eigen::Index>(j)) = matrix.classes.col(cols[j]);
  save_class_matrix(path, panel, "index");
}

}  // namespace ordpat
