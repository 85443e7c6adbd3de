#include "dciga/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include <fmt/format.h>

#include "dciga/errors.hpp"

namespace dciga {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

BreakpointGrid parse_mesh(std::istream& in, std::string_view origin) {
  std::vector<double> nodes;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), value);
    if (ec != std::errc{} || ptr != view.data() + view.size()) {
      throw ConfigError(fmt::format("{}:{}: not a number: '{}'", origin, lineno, view));
    }
    nodes.push_back(value);
  }
  try {
    return BreakpointGrid(std::move(nodes));
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", origin, e.what()));
  }
}

BreakpointGrid read_mesh_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open mesh file '{}'", path.string()));
  return parse_mesh(in, path.string());
}

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& A, const MatrixPair& meta) {
  out << fmt::format("# {} {} {} {} {} {}\n", A.rows(), A.cols(), to_string(meta.kind), meta.degree, meta.elements,
                     meta.corrected ? 1 : 0);
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      if (j) out << ',';
      out << format_number(A(i, j));
    }
    out << '\n';
  }
}

}  // namespace dciga
