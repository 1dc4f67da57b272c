#pragma once

#include <string>
#include <vector>

#include "sparseae/dataset.hpp"
#include "sparseae/matrix.hpp"

namespace sparseae {

/// Values CSV: comma-separated numeric grid, empty field = unobserved cell.
/// With `header` the first row is read as column names.
MaskedMatrix load_values_csv(const std::string& path, bool header,
                             std::vector<std::string>* col_names = nullptr);

/// Dense numeric grid; an empty field is a parse error here.
Matrix load_dense_csv(const std::string& path, bool header);

/// Both files of a dataset; enforces matching row counts.
struct LoadedPair {
  MaskedMatrix values;
  Matrix aux;
  std::vector<std::string> col_names;
};
LoadedPair load_csv_pair(const std::string& values_path, const std::string& aux_path, bool header);

std::string values_csv_string(const MaskedMatrix& mm,
                              const std::vector<std::string>& col_names = {});
std::string dense_csv_string(const Matrix& m, const std::vector<std::string>& col_names = {});

void save_values_csv(const std::string& path, const MaskedMatrix& mm,
                     const std::vector<std::string>& col_names = {});
void save_dense_csv(const std::string& path, const Matrix& m,
                    const std::vector<std::string>& col_names = {});

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Writes to a temp file in the same directory, then renames into place.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

}  // namespace sparseae
