#pragma once

// Plain-text formats shared by the library and the command-line driver.
//
// Mesh file: one breakpoint per line, ascending, first 0 and last 1.
// Blank lines and anything after '#' are ignored.
//
// Matrix CSV: header line "# rows cols kind degree elements corrected",
// then one comma-separated row per line, 17 significant digits.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "dciga/assembly.hpp"
#include "dciga/splines.hpp"

namespace dciga {

BreakpointGrid parse_mesh(std::istream& in, std::string_view origin = "<stream>");
BreakpointGrid read_mesh_file(const std::filesystem::path& path);

/// Shortest-roundtrip-safe decimal: 17 significant digits.
std::string format_number(double value);

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& A, const MatrixPair& meta);

}  // namespace dciga
