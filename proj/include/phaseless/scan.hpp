#pragma once

#include "phaseless/matrix.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace phaseless {

// Entry of a two-parameter matrix template: c0 + cs*s + ct*t.
struct AffineEntry {
    Rat c0, cs, ct;
};

using AffineTemplate = std::vector<std::vector<AffineEntry>>;

enum class ScanFamily { Circulant3, Param3x4, Slice5, Custom };
enum class ScanMethod { Lp, Semialg };

enum class CellVerdict {
    OutsideCone,        // some template entry negative
    Maximal,            // rank_theta = min(n, m)
    Nonmaximal,         // rank_theta < min(n, m)
    NonmaximalInner,    // nonmaximal and det(M(AP)) <= 0 for every P
    BoundaryUncertain,  // margin probe flipped the verdict
};

struct ScanOptions {
    ScanFamily family = ScanFamily::Circulant3;
    ScanMethod method = ScanMethod::Lp;
    std::size_t grid = 201;  // points per axis, >= 2, <= 2001
    // Window; unset fields fall back to the family default.
    std::optional<Rat> s_min, s_max, t_min, t_max;
    Rat margin = Rat(0);     // boundary probe width for the LP method
    std::size_t threads = 1;
    // Distinguish the inner all-determinants region (square templates only).
    // Defaults to on for Slice5.
    std::optional<bool> inner;
    AffineTemplate custom;   // used when family == Custom
};

struct RegionGrid {
    std::size_t resolution = 0;
    Rat s_min, s_max, t_min, t_max;
    std::string family, method;
    std::vector<CellVerdict> cells;  // index = it * resolution + is

    CellVerdict at(std::size_t is, std::size_t it) const { return cells[it * resolution + is]; }
};

// Built-in templates.
AffineTemplate family_template(ScanFamily family);

// Parses a matrix of affine expressions in s and t, e.g. "1-s+2t, 1/2*s, 3".
// Same CSV layout as the matrix format.
AffineTemplate parse_affine_template(std::istream& in);

// Instantiates the template at (s, t); nullopt when some entry is negative.
std::optional<NonnegMatrix> instantiate(const AffineTemplate& tmpl, const Rat& s, const Rat& t);

RegionGrid run_scan(const ScanOptions& options);

// One row per cell: "s,t,verdict", preceded by metadata comments. Byte
// deterministic for fixed options.
void write_scan_csv(std::ostream& out, const RegionGrid& grid);

// Flat raster, fixed palette, no anti-aliasing; byte deterministic.
void write_scan_svg(std::ostream& out, const RegionGrid& grid);

const char* verdict_name(CellVerdict v);

} // namespace phaseless
