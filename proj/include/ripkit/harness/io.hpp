#pragma once

// On-disk formats: matrices and vectors are headerless CSV (one matrix row
// per line, '.' decimal separator, 17 significant digits). A linear map is
// its q x (mn) representation in CSV plus a JSON sidecar {"q","m","n"} next
// to it (same path with the extension replaced by .json).

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ripkit/linear_map.hpp"
#include "ripkit/numerics.hpp"

namespace ripkit {

std::string format_double(double v);

void write_matrix_csv(std::ostream& out, const DenseMatrix& m);
void write_matrix_csv(const std::filesystem::path& path, const DenseMatrix& m);
DenseMatrix read_matrix_csv(std::istream& in);
DenseMatrix read_matrix_csv(const std::filesystem::path& path);

// One value per line.
void write_vector_csv(std::ostream& out, std::span<const double> v);
void write_vector_csv(const std::filesystem::path& path, std::span<const double> v);
// Accepts a single column or a single row.
Vector read_vector_csv(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& csv);
void write_map(const std::filesystem::path& csv, const LinearMap& map);
LinearMap read_map(const std::filesystem::path& csv);

}  // namespace ripkit
