#pragma once

#include "ordpat/spatial.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordpat {

/// Malformed input data; carries the 1-based line and column when known (0 otherwise).
class DataError : public std::runtime_error {
 public:
  DataError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/**
 * Reads a comma-delimited class matrix.
 *
 * Header row: an id column label followed by unique gauge labels. Each
 * further row: an event id followed by one integer per gauge (-1 = no flood).
 * UTF-8 with optional BOM, LF or CRLF line ends; blank lines are ignored.
 * Empty or non-integer cells, ragged rows, duplicate labels and events
 * without any flood raise DataError.
 */
[[nodiscard]] ClassMatrix parse_class_matrix(std::istream& in, const std::string& source = "<input>");
[[nodiscard]] ClassMatrix load_class_matrix(const std::filesystem::path& path);

/// Inverse of parse_class_matrix; event ids default to 1..K when absent.
void write_class_matrix(std::ostream& out, const ClassMatrix& matrix, const std::string& id_label = "event");
void save_class_matrix(const std::filesystem::path& path, const ClassMatrix& matrix,
                       const std::string& id_label = "event");

/**
 * Plot panel: `index` column (1-based event/time order) followed by one
 * class column per gauge, in the given order (all gauges when empty).
 * The file loads back with load_class_matrix.
 */
void emit_plot_data(const ClassMatrix& matrix, const std::vector<std::string>& gauges,
                    const std::filesystem::path& path);

/// Opens a file for writing or throws std::runtime_error naming the path.
[[nodiscard]] std::ofstream open_output(const std::filesystem::path& path);

}  // namespace ordpat
