#pragma once

#include <map>
#include <string>

#include "pivotlab/matrix.hpp"

namespace pivotlab {

/// Key/value pairs carried on `# key=value` lines after the header.
using Metadata = std::map<std::string, std::string>;

struct MatrixFile {
  AnyMatrix matrix;
  Metadata metadata;
};

/// Row-major CSV with a `# rows,cols,field` header line ("# 4,4,real").
/// Complex rows interleave re,im per entry. Doubles round-trip exactly.
std::string matrix_to_csv(const AnyMatrix& m, const Metadata& metadata = {});
MatrixFile matrix_from_csv(const std::string& text);

void write_matrix_csv(const std::string& path, const AnyMatrix& m, const Metadata& metadata = {});
MatrixFile read_matrix_csv(const std::string& path);

}  // namespace pivotlab
