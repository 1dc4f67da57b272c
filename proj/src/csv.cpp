#include "sparseae/csv.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sparseae/errors.hpp"

namespace sparseae {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& field, const std::string& path, std::size_t line_no) {
  const std::string t = trim(field);
  double value = 0.0;
  const auto* begin = t.data();
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw DataError(path + ":" + std::to_string(line_no) + ": non-numeric cell '" + field + "'");
  return value;
}

struct RawCsv {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> col_names;
  std::size_t first_data_line = 1;
};

RawCsv read_csv(const std::string& path, bool header) {
  std::ifstream in(path);
  if (!in) throw DataError(path + ": cannot open file");
  RawCsv out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() && in.peek() == std::ifstream::traits_type::eof()) break;
    auto fields = split_fields(line);
    if (header && out.rows.empty() && out.col_names.empty()) {
      for (auto& f : fields) out.col_names.push_back(trim(f));
      out.first_data_line = line_no + 1;
      continue;
    }
    out.rows.push_back(std::move(fields));
  }
  if (out.rows.empty()) throw DataError(path + ": no data rows");
  const std::size_t width = out.rows.front().size();
  for (std::size_t r = 1; r < out.rows.size(); ++r) {
    if (out.rows[r].size() != width)
      throw DataError(path + ":" + std::to_string(out.first_data_line + r) + ": ragged row (" +
                      std::to_string(out.rows[r].size()) + " fields, expected " +
                      std::to_string(width) + ")");
  }
  if (header && out.col_names.size() != width)
    throw DataError(path + ":1: header has " + std::to_string(out.col_names.size()) +
                    " fields, rows have " + std::to_string(width));
  return out;
}

}  // namespace

MaskedMatrix load_values_csv(const std::string& path, bool header,
                             std::vector<std::string>* col_names) {
  RawCsv raw = read_csv(path, header);
  const std::size_t rows = raw.rows.size();
  const std::size_t cols = raw.rows.front().size();
  Matrix values(rows, cols);
  Mask observed(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::string& f = raw.rows[i][j];
      if (trim(f).empty()) continue;  // unobserved
      values(i, j) = parse_number(f, path, raw.first_data_line + i);
      observed(i, j) = 1;
    }
  }
  if (col_names) *col_names = raw.col_names;
  return MaskedMatrix{std::move(values), std::move(observed)};
}

Matrix load_dense_csv(const std::string& path, bool header) {
  RawCsv raw = read_csv(path, header);
  const std::size_t rows = raw.rows.size();
  const std::size_t cols = raw.rows.front().size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = parse_number(raw.rows[i][j], path, raw.first_data_line + i);
  return m;
}

LoadedPair load_csv_pair(const std::string& values_path, const std::string& aux_path,
                         bool header) {
  LoadedPair out;
  out.values = load_values_csv(values_path, header, &out.col_names);
  out.aux = load_dense_csv(aux_path, header);
  if (out.aux.rows != out.values.values.rows)
    throw DataError(aux_path + ": row count " + std::to_string(out.aux.rows) +
                    " does not match values file (" + std::to_string(out.values.values.rows) +
                    " rows)");
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

namespace {

void append_header(std::ostringstream& os, const std::vector<std::string>& col_names) {
  for (std::size_t j = 0; j < col_names.size(); ++j) {
    if (j) os << ',';
    os << col_names[j];
  }
  os << '\n';
}

}  // namespace

std::string values_csv_string(const MaskedMatrix& mm, const std::vector<std::string>& col_names) {
  std::ostringstream os;
  if (!col_names.empty()) append_header(os, col_names);
  for (std::size_t i = 0; i < mm.values.rows; ++i) {
    for (std::size_t j = 0; j < mm.values.cols; ++j) {
      if (j) os << ',';
      if (mm.observed(i, j)) os << format_double(mm.values(i, j));
    }
    os << '\n';
  }
  return os.str();
}

std::string dense_csv_string(const Matrix& m, const std::vector<std::string>& col_names) {
  std::ostringstream os;
  if (!col_names.empty()) append_header(os, col_names);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (j) os << ',';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
  return os.str();
}

void save_values_csv(const std::string& path, const MaskedMatrix& mm,
                     const std::vector<std::string>& col_names) {
  atomic_write_file(path, values_csv_string(mm, col_names));
}

void save_dense_csv(const std::string& path, const Matrix& m,
                    const std::vector<std::string>& col_names) {
  atomic_write_file(path, dense_csv_string(m, col_names));
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError(tmp + ": cannot open for writing");
    out << content;
    if (!out) throw DataError(tmp + ": write failed");
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace sparseae
