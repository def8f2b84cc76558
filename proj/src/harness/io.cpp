#include "ripkit/harness/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ripkit/errors.hpp"

namespace ripkit {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open '" + path.string() + "' for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  return in;
}

double parse_cell(std::string_view cell) {
  while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r'))
    cell.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size())
    throw InvalidInput("csv: cannot parse '" + std::string(cell) + "'");
  return v;
}

}  // namespace

void write_matrix_csv(std::ostream& out, const DenseMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_csv(const std::filesystem::path& path, const DenseMatrix& m) {
  auto out = open_out(path);
  write_matrix_csv(out, m);
}

DenseMatrix read_matrix_csv(std::istream& in) {
  std::vector<double> entries;
  std::size_t rows = 0, cols = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::size_t count = 0;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      entries.push_back(parse_cell(rest.substr(0, comma)));
      ++count;
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows == 0) cols = count;
    else if (count != cols) throw InvalidInput("csv: ragged rows");
    ++rows;
  }
  DenseMatrix m(rows, cols, std::move(entries));
  require_finite(m, "csv");
  return m;
}

DenseMatrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_csv(in);
}

void write_vector_csv(std::ostream& out, std::span<const double> v) {
  for (double e : v) out << format_double(e) << '\n';
}

void write_vector_csv(const std::filesystem::path& path, std::span<const double> v) {
  auto out = open_out(path);
  write_vector_csv(out, v);
}

Vector read_vector_csv(const std::filesystem::path& path) {
  const DenseMatrix m = read_matrix_csv(path);
  if (m.rows() != 1 && m.cols() != 1) throw InvalidInput("csv: expected a single row or column");
  return m.entries();
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  auto p = csv;
  p.replace_extension(".json");
  return p;
}

void write_map(const std::filesystem::path& csv, const LinearMap& map) {
  write_matrix_csv(csv, map.rep());
  auto out = open_out(sidecar_path(csv));
  out << nlohmann::json{{"q", map.q()}, {"m", map.m()}, {"n", map.n()}}.dump(2) << '\n';
}

LinearMap read_map(const std::filesystem::path& csv) {
  DenseMatrix rep = read_matrix_csv(csv);
  auto in = open_in(sidecar_path(csv));
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("map sidecar: ") + e.what());
  }
  const auto q = meta.at("q").get<std::size_t>();
  const auto m = meta.at("m").get<std::size_t>();
  const auto n = meta.at("n").get<std::size_t>();
  if (rep.rows() != q) throw InvalidInput("map sidecar: q does not match the CSV");
  return LinearMap(std::move(rep), m, n);
}

}  // namespace ripkit
