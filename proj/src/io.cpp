#include "phaseless/io.hpp"

#include "phaseless/errors.hpp"
#include "phaseless/rational.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace phaseless {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Content lines: comments stripped, blanks dropped.
std::vector<std::string> content_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

namespace {

RatMatrix rows_to_matrix(const std::vector<std::string>& lines) {
    if (lines.empty()) throw ParseError("no matrix rows found");
    std::vector<Rat> entries;
    std::size_t cols = 0;
    for (std::size_t r = 0; r < lines.size(); ++r) {
        auto fields = split_csv(lines[r]);
        if (r == 0) cols = fields.size();
        if (fields.size() != cols) throw ParseError("ragged matrix row " + std::to_string(r));
        for (const auto& f : fields) entries.push_back(parse_rational(f));
    }
    return RatMatrix(lines.size(), cols, std::move(entries));
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    return out;
}

} // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

RatMatrix read_matrix(std::istream& in) { return rows_to_matrix(content_lines(in)); }

RatMatrix read_matrix_file(const std::string& path) {
    auto in = open_input(path);
    return read_matrix(in);
}

NonnegMatrix read_nonneg_matrix(std::istream& in) { return NonnegMatrix(read_matrix(in)); }

NonnegMatrix read_nonneg_matrix_file(const std::string& path) {
    return NonnegMatrix(read_matrix_file(path));
}

void write_matrix(std::ostream& out, const RatMatrix& A) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) {
            if (j) out << ',';
            out << format_rational(A(i, j));
        }
        out << '\n';
    }
}

void write_matrix_file(const std::string& path, const RatMatrix& A) {
    auto out = open_output(path);
    write_matrix(out, A);
}

void write_phased_matrix(std::ostream& out, const PhasedMatrix& B) {
    write_matrix(out, B.modulus().values());
    out << "phases\n";
    for (std::size_t i = 0; i < B.rows(); ++i) {
        for (std::size_t j = 0; j < B.cols(); ++j) {
            if (j) out << ',';
            out << format_double(B.phase(i, j));
        }
        out << '\n';
    }
}

void write_phased_matrix_file(const std::string& path, const PhasedMatrix& B) {
    auto out = open_output(path);
    write_phased_matrix(out, B);
}

PhasedMatrix read_phased_matrix(std::istream& in) {
    auto lines = content_lines(in);
    std::size_t split = lines.size();
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (lines[i] == "phases") {
            split = i;
            break;
        }
    if (split == lines.size()) throw ParseError("missing \"phases\" separator");
    RatMatrix mod = rows_to_matrix({lines.begin(), lines.begin() + split});
    std::vector<std::string> tail(lines.begin() + split + 1, lines.end());
    if (tail.size() != mod.rows()) throw ParseError("phase block row count mismatch");
    std::vector<double> phases;
    for (const auto& row : tail) {
        auto fields = split_csv(row);
        if (fields.size() != mod.cols()) throw ParseError("phase block column count mismatch");
        for (const auto& f : fields) {
            try {
                phases.push_back(std::stod(f));
            } catch (const std::exception&) {
                throw ParseError("bad phase literal: " + f);
            }
        }
    }
    return PhasedMatrix(NonnegMatrix(std::move(mod)), std::move(phases));
}

PhasedMatrix read_phased_matrix_file(const std::string& path) {
    auto in = open_input(path);
    return read_phased_matrix(in);
}

PolytopeVH read_polytope(std::istream& in) {
    auto lines = content_lines(in);
    PolytopeVH P;
    enum { None, Vertices, Facets } section = None;
    for (const auto& line : lines) {
        if (line == "V:") {
            section = Vertices;
            continue;
        }
        if (line == "H:") {
            section = Facets;
            continue;
        }
        auto fields = split_csv(line);
        std::vector<Rat> values;
        for (const auto& f : fields) values.push_back(parse_rational(f));
        if (section == Vertices) {
            P.vertices.push_back(std::move(values));
        } else if (section == Facets) {
            if (values.size() < 2) throw ParseError("facet row needs a normal and an offset");
            Rat offset = values.back();
            values.pop_back();
            P.facets.push_back({std::move(values), std::move(offset)});
        } else {
            throw ParseError("polytope data before a V: or H: header");
        }
    }
    if (P.vertices.empty() || P.facets.empty())
        throw ParseError("polytope needs both V: and H: sections");
    return P;
}

PolytopeVH read_polytope_file(const std::string& path) {
    auto in = open_input(path);
    return read_polytope(in);
}

void write_polytope(std::ostream& out, const PolytopeVH& P) {
    out << "V:\n";
    for (const auto& v : P.vertices) {
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k) out << ',';
            out << format_rational(v[k]);
        }
        out << '\n';
    }
    out << "H:\n";
    for (const auto& f : P.facets) {
        for (std::size_t k = 0; k < f.normal.size(); ++k) out << format_rational(f.normal[k]) << ',';
        out << format_rational(f.offset) << '\n';
    }
}

void write_kv(std::ostream& out,
              const std::vector<std::pair<std::string, std::string>>& entries) {
    for (const auto& [key, value] : entries) out << key << ": " << value << '\n';
}

std::string join_rationals(const std::vector<Rat>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += format_rational(v[i]);
    }
    return s;
}

std::string join_indices(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

} // namespace phaseless
