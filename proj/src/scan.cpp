#include "phaseless/scan.hpp"

#include "phaseless/errors.hpp"
#include "phaseless/io.hpp"
#include "phaseless/rank_engine.hpp"
#include "phaseless/rational.hpp"
#include "phaseless/semialg.hpp"

#include <cctype>
#include <mutex>
#include <ostream>
#include <thread>

namespace phaseless {

namespace {

AffineEntry affine(long c0, long cs, long ct) { return {Rat(c0), Rat(cs), Rat(ct)}; }

AffineTemplate circulant3_template() {
    return {
        {affine(1, 0, 0), affine(0, 1, 0), affine(0, 0, 1)},
        {affine(0, 0, 1), affine(1, 0, 0), affine(0, 1, 0)},
        {affine(0, 1, 0), affine(0, 0, 1), affine(1, 0, 0)},
    };
}

AffineTemplate param3x4_template() {
    return {
        {affine(1, 1, -1), affine(1, 1, -1), affine(1, 1, 0), affine(1, 0, 0)},
        {affine(1, -1, 0), affine(1, -1, 1), affine(1, 0, -1), affine(1, 1, 1)},
        {affine(1, 0, -1), affine(1, -1, 0), affine(1, 0, 0), affine(1, 1, -1)},
    };
}

// Affine plane through the row-normalized identity (s = 1), the row-normalized
// five-point counterexample matrix (t = 1) and J/5 (s = t = 0).
AffineTemplate slice5_template() {
    static const long E[5][5] = {{7, 4, 9, 10, 0},
                                 {9, 2, 3, 0, 3},
                                 {3, 10, 6, 4, 8},
                                 {0, 4, 1, 6, 4},
                                 {0, 3, 3, 10, 2}};
    AffineTemplate tmpl(5, std::vector<AffineEntry>(5));
    for (std::size_t i = 0; i < 5; ++i) {
        long rowsum = 0;
        for (std::size_t j = 0; j < 5; ++j) rowsum += E[i][j];
        for (std::size_t j = 0; j < 5; ++j) {
            Rat fifth(1, 5);
            Rat ebar = Rat(E[i][j]) / rowsum;
            tmpl[i][j] = {fifth, (i == j ? Rat(1) : Rat(0)) - fifth, ebar - fifth};
        }
    }
    return tmpl;
}

AffineEntry parse_affine_expression(const std::string& text) {
    AffineEntry e{Rat(0), Rat(0), Rat(0)};
    std::size_t i = 0, n = text.size();
    bool any = false;
    while (i < n) {
        int sign = 1;
        bool saw_sign = false;
        while (i < n && (text[i] == '+' || text[i] == '-' || std::isspace(static_cast<unsigned char>(text[i])))) {
            if (text[i] == '-') sign = -sign;
            if (text[i] == '+' || text[i] == '-') saw_sign = true;
            ++i;
        }
        if (i >= n) {
            if (saw_sign || !any) throw ParseError("bad expression: " + text);
            break;
        }
        std::size_t start = i;
        while (i < n) {
            char c = text[i];
            if ((c == '+' || c == '-') && !(i > start && (text[i - 1] == 'e' || text[i - 1] == 'E')))
                break;
            ++i;
        }
        std::string term = trim(text.substr(start, i - start));
        if (term.empty()) throw ParseError("bad expression: " + text);
        char last = term.back();
        if (last == 's' || last == 't') {
            std::string coef_str = trim(term.substr(0, term.size() - 1));
            if (!coef_str.empty() && coef_str.back() == '*') {
                coef_str.pop_back();
                coef_str = trim(coef_str);
            }
            Rat coef = coef_str.empty() ? Rat(1) : parse_rational(coef_str);
            if (sign < 0) coef = -coef;
            (last == 's' ? e.cs : e.ct) += coef;
        } else {
            Rat c = parse_rational(term);
            if (sign < 0) c = -c;
            e.c0 += c;
        }
        any = true;
    }
    if (!any) throw ParseError("empty expression");
    return e;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t m) {
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < m - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

bool semialg_nonmaximal(const NonnegMatrix& A) {
    NonnegMatrix W = A.rows() <= A.cols() ? A : A.transpose();
    std::vector<std::size_t> idx(W.rows());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    do {
        if (!semialg_general(W.select_columns(idx)).member) return false;
    } while (next_combination(idx, W.cols()));
    return true;
}

CellVerdict evaluate_cell(const AffineTemplate& tmpl, const Rat& s, const Rat& t,
                          const ScanOptions& opt, bool inner) {
    auto A = instantiate(tmpl, s, t);
    if (!A) return CellVerdict::OutsideCone;
    bool nonmax;
    if (opt.method == ScanMethod::Lp) {
        DecideOptions d;
        d.boundary_margin = opt.margin;
        RankDecision dec = decide_nonmaximal(*A, d);
        if (dec.boundary_uncertain) return CellVerdict::BoundaryUncertain;
        nonmax = !dec.maximal;
    } else {
        nonmax = semialg_nonmaximal(*A);
    }
    if (!nonmax) return CellVerdict::Maximal;
    if (inner && all_dets_nonpositive(*A)) return CellVerdict::NonmaximalInner;
    return CellVerdict::Nonmaximal;
}

const char* family_name(ScanFamily f) {
    switch (f) {
        case ScanFamily::Circulant3: return "circulant3";
        case ScanFamily::Param3x4: return "param3x4";
        case ScanFamily::Slice5: return "slice5";
        case ScanFamily::Custom: return "custom";
    }
    return "?";
}

const char* palette(CellVerdict v) {
    switch (v) {
        case CellVerdict::OutsideCone: return "#d9d9d9";
        case CellVerdict::Maximal: return "#ffffff";
        case CellVerdict::Nonmaximal: return "#ffd700";
        case CellVerdict::NonmaximalInner: return "#2e8b57";
        case CellVerdict::BoundaryUncertain: return "#ff8c00";
    }
    return "#000000";
}

} // namespace

const char* verdict_name(CellVerdict v) {
    switch (v) {
        case CellVerdict::OutsideCone: return "outside_cone";
        case CellVerdict::Maximal: return "maximal";
        case CellVerdict::Nonmaximal: return "nonmaximal";
        case CellVerdict::NonmaximalInner: return "nonmaximal_inner";
        case CellVerdict::BoundaryUncertain: return "boundary_uncertain";
    }
    return "?";
}

AffineTemplate family_template(ScanFamily family) {
    switch (family) {
        case ScanFamily::Circulant3: return circulant3_template();
        case ScanFamily::Param3x4: return param3x4_template();
        case ScanFamily::Slice5: return slice5_template();
        case ScanFamily::Custom: throw DomainError("custom family needs an explicit template");
    }
    throw DomainError("unknown family");
}

AffineTemplate parse_affine_template(std::istream& in) {
    auto lines = content_lines(in);
    if (lines.empty()) throw ParseError("no template rows found");
    AffineTemplate tmpl;
    std::size_t cols = 0;
    for (const auto& line : lines) {
        auto fields = split_csv(line);
        if (tmpl.empty()) cols = fields.size();
        if (fields.size() != cols) throw ParseError("ragged template row");
        std::vector<AffineEntry> row;
        for (const auto& f : fields) row.push_back(parse_affine_expression(f));
        tmpl.push_back(std::move(row));
    }
    return tmpl;
}

std::optional<NonnegMatrix> instantiate(const AffineTemplate& tmpl, const Rat& s, const Rat& t) {
    std::size_t rows = tmpl.size(), cols = rows ? tmpl.front().size() : 0;
    RatMatrix A(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const AffineEntry& e = tmpl[i][j];
            Rat v = e.c0 + e.cs * s + e.ct * t;
            if (v < 0) return std::nullopt;
            A(i, j) = std::move(v);
        }
    return NonnegMatrix(std::move(A));
}

RegionGrid run_scan(const ScanOptions& options) {
    if (options.grid < 2 || options.grid > 2001)
        throw DomainError("grid resolution must lie in [2, 2001]");

    AffineTemplate tmpl =
        options.family == ScanFamily::Custom ? options.custom : family_template(options.family);
    if (tmpl.empty() || tmpl.front().empty()) throw DomainError("empty template");
    std::size_t rows = tmpl.size(), cols = tmpl.front().size();
    for (const auto& row : tmpl)
        if (row.size() != cols) throw DomainError("ragged template");

    if (options.method == ScanMethod::Semialg) {
        std::size_t n = std::min(rows, cols);
        if (n < 3) throw DomainError("semialg method needs min dimension >= 3");
        if (n > 8) throw CapabilityError("semialg method capped at min dimension 8");
    }
    bool inner = options.inner.value_or(options.family == ScanFamily::Slice5);
    if (inner && rows != cols) throw DomainError("inner region needs a square template");

    Rat s0(0), s1(1), t0(0), t1(1);
    switch (options.family) {
        case ScanFamily::Circulant3: s0 = t0 = 0; s1 = t1 = 3; break;
        case ScanFamily::Param3x4: s0 = t0 = -2; s1 = t1 = 2; break;
        case ScanFamily::Slice5: s0 = t0 = Rat(-1, 2); s1 = t1 = Rat(3, 2); break;
        case ScanFamily::Custom: break;
    }
    if (options.s_min) s0 = *options.s_min;
    if (options.s_max) s1 = *options.s_max;
    if (options.t_min) t0 = *options.t_min;
    if (options.t_max) t1 = *options.t_max;
    if (s0 >= s1 || t0 >= t1) throw DomainError("window must have positive extent");

    std::size_t g = options.grid;
    Rat s_step = (s1 - s0) / static_cast<long>(g - 1);
    Rat t_step = (t1 - t0) / static_cast<long>(g - 1);
    std::vector<Rat> s_coord(g), t_coord(g);
    for (std::size_t i = 0; i < g; ++i) {
        s_coord[i] = s0 + s_step * static_cast<long>(i);
        t_coord[i] = t0 + t_step * static_cast<long>(i);
    }

    RegionGrid grid;
    grid.resolution = g;
    grid.s_min = s0;
    grid.s_max = s1;
    grid.t_min = t0;
    grid.t_max = t1;
    grid.family = family_name(options.family);
    grid.method = options.method == ScanMethod::Lp ? "lp" : "semialg";
    grid.cells.assign(g * g, CellVerdict::OutsideCone);

    auto work = [&](std::size_t it_begin, std::size_t it_end) {
        for (std::size_t it = it_begin; it < it_end; ++it)
            for (std::size_t is = 0; is < g; ++is)
                grid.cells[it * g + is] =
                    evaluate_cell(tmpl, s_coord[is], t_coord[it], options, inner);
    };

    std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, g));
    if (threads == 1) {
        work(0, g);
    } else {
        std::vector<std::thread> pool;
        std::mutex err_mutex;
        std::exception_ptr err;
        std::size_t chunk = (g + threads - 1) / threads;
        for (std::size_t w = 0; w < threads; ++w) {
            std::size_t lo = w * chunk, hi = std::min(g, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                try {
                    work(lo, hi);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err) err = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }
    return grid;
}

void write_scan_csv(std::ostream& out, const RegionGrid& grid) {
    out << "# family: " << grid.family << '\n';
    out << "# method: " << grid.method << '\n';
    out << "# window: s in [" << format_rational(grid.s_min) << ',' << format_rational(grid.s_max)
        << "], t in [" << format_rational(grid.t_min) << ',' << format_rational(grid.t_max)
        << "]\n";
    out << "# resolution: " << grid.resolution << '\n';
    out << "# columns: s,t,verdict\n";
    std::size_t g = grid.resolution;
    Rat s_step = (grid.s_max - grid.s_min) / static_cast<long>(g - 1);
    Rat t_step = (grid.t_max - grid.t_min) / static_cast<long>(g - 1);
    for (std::size_t it = 0; it < g; ++it) {
        Rat t = grid.t_min + t_step * static_cast<long>(it);
        for (std::size_t is = 0; is < g; ++is) {
            Rat s = grid.s_min + s_step * static_cast<long>(is);
            out << format_rational(s) << ',' << format_rational(t) << ','
                << verdict_name(grid.at(is, it)) << '\n';
        }
    }
}

void write_scan_svg(std::ostream& out, const RegionGrid& grid) {
    std::size_t g = grid.resolution;
    std::size_t px = std::max<std::size_t>(1, 1000 / g);
    std::size_t side = g * px;
    std::size_t legend_h = 40;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\""
        << side + legend_h << "\" shape-rendering=\"crispEdges\">\n";
    out << "<desc>family=" << grid.family << " method=" << grid.method << " window=s["
        << format_rational(grid.s_min) << ',' << format_rational(grid.s_max) << "]t["
        << format_rational(grid.t_min) << ',' << format_rational(grid.t_max) << "] resolution="
        << g << "</desc>\n";
    for (std::size_t it = 0; it < g; ++it) {
        std::size_t y = (g - 1 - it) * px;
        std::size_t is = 0;
        while (is < g) {
            CellVerdict v = grid.at(is, it);
            std::size_t run = 1;
            while (is + run < g && grid.at(is + run, it) == v) ++run;
            out << "<rect x=\"" << is * px << "\" y=\"" << y << "\" width=\"" << run * px
                << "\" height=\"" << px << "\" fill=\"" << palette(v) << "\"/>\n";
            is += run;
        }
    }
    static const CellVerdict order[] = {CellVerdict::OutsideCone, CellVerdict::Maximal,
                                        CellVerdict::Nonmaximal, CellVerdict::NonmaximalInner,
                                        CellVerdict::BoundaryUncertain};
    std::size_t x = 4;
    for (CellVerdict v : order) {
        out << "<rect x=\"" << x << "\" y=\"" << side + 12 << "\" width=\"12\" height=\"12\" fill=\""
            << palette(v) << "\" stroke=\"#000000\"/>\n";
        out << "<text x=\"" << x + 16 << "\" y=\"" << side + 22
            << "\" font-family=\"monospace\" font-size=\"11\">" << verdict_name(v) << "</text>\n";
        x += 150;
    }
    out << "</svg>\n";
}

} // namespace phaseless
