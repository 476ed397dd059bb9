#pragma once

#include "phaseless/applications.hpp"
#include "phaseless/matrix.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace phaseless {

// Matrix text format, shared across the tools: one CSV row per line, entries
// decimal or "p/q" literals, blank lines and "#" comments ignored.
RatMatrix read_matrix(std::istream& in);
RatMatrix read_matrix_file(const std::string& path);
NonnegMatrix read_nonneg_matrix(std::istream& in);
NonnegMatrix read_nonneg_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const RatMatrix& A);
void write_matrix_file(const std::string& path, const RatMatrix& A);

// Equimodular witness format: the modulus block in matrix format, a line
// "phases", then the phase block in radians (17 significant digits).
void write_phased_matrix(std::ostream& out, const PhasedMatrix& B);
void write_phased_matrix_file(const std::string& path, const PhasedMatrix& B);
PhasedMatrix read_phased_matrix(std::istream& in);
PhasedMatrix read_phased_matrix_file(const std::string& path);

// Polytope format: a "V:" line, vertex rows, an "H:" line, facet rows
// "a_1,...,a_d,b" meaning <a, x> <= b.
PolytopeVH read_polytope(std::istream& in);
PolytopeVH read_polytope_file(const std::string& path);
void write_polytope(std::ostream& out, const PolytopeVH& P);

// Certificates are written as "key: value" lines.
void write_kv(std::ostream& out,
              const std::vector<std::pair<std::string, std::string>>& entries);
std::string join_rationals(const std::vector<Rat>& v);
std::string join_indices(const std::vector<std::size_t>& v);
std::string format_double(double x);

// Text plumbing shared by the readers.
std::string trim(const std::string& s);
std::vector<std::string> split_csv(const std::string& line);
std::vector<std::string> content_lines(std::istream& in);

} // namespace phaseless
