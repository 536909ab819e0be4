#include "pivotlab/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "pivotlab/error.hpp"
#include "pivotlab/experiments.hpp"

namespace pivotlab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

template <typename T>
T parse_number(std::string_view s, int line) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw Error(Errc::ParseError, "line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace

std::string matrix_to_csv(const AnyMatrix& m, const Metadata& metadata) {
  std::ostringstream os;
  os << "# " << rows_of(m) << ',' << cols_of(m) << ',' << field_name(m) << '\n';
  for (const auto& [k, v] : metadata) os << "# " << k << '=' << v << '\n';
  std::visit(
      [&](const auto& a) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
          for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (j > 0) os << ',';
            if constexpr (is_complex_v<typename std::decay_t<decltype(a)>::Scalar>) {
              os << format_double(a(i, j).real()) << ',' << format_double(a(i, j).imag());
            } else {
              os << format_double(a(i, j));
            }
          }
          os << '\n';
        }
      },
      m);
  return os.str();
}

MatrixFile matrix_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  long rows = -1, cols = -1;
  bool complex = false;
  MatrixFile out;
  std::vector<std::vector<double>> data;

  while (std::getline(is, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const auto body = trim(t.substr(1));
      if (rows < 0) {
        const auto parts = split(body, ',');
        if (parts.size() != 3) throw Error(Errc::ParseError, "expected header '# rows,cols,field'");
        rows = parse_number<long>(parts[0], line_no);
        cols = parse_number<long>(parts[1], line_no);
        if (parts[2] == "complex") {
          complex = true;
        } else if (parts[2] != "real") {
          throw Error(Errc::ParseError, "unknown field '" + std::string(parts[2]) + "'");
        }
        if (rows < 1 || cols < 1) throw Error(Errc::ParseError, "matrix dimensions must be positive");
      } else if (const auto eq = body.find('='); eq != std::string_view::npos) {
        out.metadata[std::string(trim(body.substr(0, eq)))] = std::string(trim(body.substr(eq + 1)));
      }
      continue;
    }
    if (rows < 0) throw Error(Errc::ParseError, "missing '# rows,cols,field' header");
    std::vector<double> row;
    for (auto cell : split(t, ',')) row.push_back(parse_number<double>(cell, line_no));
    const auto expected = static_cast<std::size_t>(cols) * (complex ? 2 : 1);
    if (row.size() != expected)
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected " + std::to_string(expected) +
                                        " values, found " + std::to_string(row.size()));
    data.push_back(std::move(row));
  }
  if (rows < 0) throw Error(Errc::ParseError, "missing '# rows,cols,field' header");
  if (static_cast<long>(data.size()) != rows)
    throw Error(Errc::ParseError, "expected " + std::to_string(rows) + " rows, found " + std::to_string(data.size()));

  if (complex) {
    ComplexMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j)
        m(i, j) = {data[static_cast<std::size_t>(i)][static_cast<std::size_t>(2 * j)],
                   data[static_cast<std::size_t>(i)][static_cast<std::size_t>(2 * j + 1)]};
    out.matrix = std::move(m);
  } else {
    RealMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i)
      for (long j = 0; j < cols; ++j) m(i, j) = data[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    out.matrix = std::move(m);
  }
  return out;
}

void write_matrix_csv(const std::string& path, const AnyMatrix& m, const Metadata& metadata) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot write " + path);
  f << matrix_to_csv(m, metadata);
  if (!f) throw Error(Errc::IoError, "write failed for " + path);
}

MatrixFile read_matrix_csv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return matrix_from_csv(ss.str());
}

}  // namespace pivotlab
