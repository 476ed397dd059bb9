#include "phaseless/applications.hpp"
#include "phaseless/errors.hpp"
#include "phaseless/io.hpp"
#include "phaseless/lp.hpp"
#include "phaseless/matrix.hpp"
#include "phaseless/mmatrix.hpp"
#include "phaseless/rank_engine.hpp"
#include "phaseless/rational.hpp"
#include "phaseless/scan.hpp"
#include "phaseless/semialg.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>

namespace {

using namespace phaseless;

int run_decide(const std::string& path, const std::string& margin_str,
               const std::string& cert_path, const std::string& witness_path, double tol) {
    NonnegMatrix A = read_nonneg_matrix_file(path);
    DecideOptions opt;
    if (!margin_str.empty()) opt.boundary_margin = parse_rational(margin_str);
    RankDecision dec = decide_nonmaximal(A, opt);

    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("verdict", dec.maximal ? "maximal" : "nonmaximal");
    kv.emplace_back("transposed", dec.transposed ? "yes" : "no");
    if (dec.boundary_uncertain) kv.emplace_back("boundary_uncertain", "yes");
    if (dec.maximal) {
        kv.emplace_back("submatrix_cols", join_indices(dec.submatrix_cols));
        kv.emplace_back("permutation", join_indices(dec.permutation));
        kv.emplace_back("scaling", join_rationals(dec.scaling));
        kv.emplace_back("farkas", join_rationals(dec.farkas));
    } else {
        kv.emplace_back("lambda", join_rationals(dec.lambda));
        kv.emplace_back("witness_rank",
                        std::to_string(numerical_rank(dec.witness, tol)));
    }
    write_kv(std::cout, kv);
    if (!cert_path.empty()) {
        std::ofstream out(cert_path);
        write_kv(out, kv);
    }
    if (!witness_path.empty() && !dec.maximal) write_phased_matrix_file(witness_path, dec.witness);
    return dec.maximal ? 1 : 0;
}

const char* lower_source_name(LowerSource s) {
    switch (s) {
        case LowerSource::RankOne: return "rank_one";
        case LowerSource::HadamardSquare: return "hadamard_square";
        case LowerSource::Maximality: return "maximality";
    }
    return "?";
}

const char* upper_source_name(UpperSource s) {
    switch (s) {
        case UpperSource::TrivialMin: return "trivial_min";
        case UpperSource::NonmaxDirect: return "nonmax_direct";
        case UpperSource::Patching: return "patching";
        case UpperSource::LocalSearch: return "local_search";
    }
    return "?";
}

int run_bracket(const std::string& path, const std::string& effort, unsigned long seed,
                std::size_t restarts, const std::string& witness_path, double tol) {
    NonnegMatrix A = read_nonneg_matrix_file(path);
    BracketEffort be = effort == "high" ? BracketEffort::High : BracketEffort::Low;
    Bracket b = bracket(A, be, seed, restarts);
    std::cout << "bracket: [" << b.lower << ", " << b.upper << "]\n";
    std::cout << "lower_source: " << lower_source_name(b.lower_source) << '\n';
    std::cout << "upper_source: " << upper_source_name(b.upper_source) << '\n';
    if (b.patching_k) std::cout << "patching_k: " << b.patching_k << '\n';
    if (b.upper_witness) {
        std::cout << "witness_rank: " << numerical_rank(*b.upper_witness, tol) << '\n';
        if (!witness_path.empty()) write_phased_matrix_file(witness_path, *b.upper_witness);
    }
    return 0;
}

int run_signless(const std::string& path, bool exact) {
    NonnegMatrix A = read_nonneg_matrix_file(path);
    std::cout << "signless_lower_bound: " << signless_lower_bound(A) << '\n';
    std::cout << "phaseless_lower_bound: " << lower_bound_hadamard(A) << '\n';
    if (exact) std::cout << "signless_rank: " << signless_rank_bruteforce(A) << '\n';
    return 0;
}

int run_mmatrix(const std::string& path, const std::string& method_name) {
    static const std::map<std::string, MMatrixMethod> methods = {
        {"minors", MMatrixMethod::LeadingMinors},    {"reduced", MMatrixMethod::ReducedMinors},
        {"vector", MMatrixMethod::PositiveVector},   {"scaling", MMatrixMethod::DominanceScaling},
        {"eigenvalue", MMatrixMethod::Eigenvalue},
    };
    auto it = methods.find(method_name);
    if (it == methods.end()) throw DomainError("unknown m-matrix method: " + method_name);
    ComparisonMatrix Z(read_matrix_file(path));
    MMatrixReport rep = is_nonsingular_m_matrix(Z, it->second);
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("verdict", rep.verdict ? "m_matrix" : "not_m_matrix");
    kv.emplace_back("method", method_name);
    if (!rep.certificate.empty()) kv.emplace_back("certificate", join_rationals(rep.certificate));
    if (!rep.minors.empty()) kv.emplace_back("minors", join_rationals(rep.minors));
    write_kv(std::cout, kv);
    return rep.verdict ? 0 : 1;
}

int run_scan_cmd(const std::string& family_name, const std::string& method_name, std::size_t grid,
                 const std::string& smin, const std::string& smax, const std::string& tmin,
                 const std::string& tmax, const std::string& margin_str,
                 const std::string& template_path, int inner_flag, std::size_t threads,
                 const std::string& csv_path, const std::string& svg_path) {
    static const std::map<std::string, ScanFamily> families = {
        {"circulant3", ScanFamily::Circulant3},
        {"param3x4", ScanFamily::Param3x4},
        {"slice5", ScanFamily::Slice5},
        {"custom", ScanFamily::Custom},
    };
    auto fit = families.find(family_name);
    if (fit == families.end()) throw DomainError("unknown family: " + family_name);

    ScanOptions opt;
    opt.family = fit->second;
    if (method_name == "lp")
        opt.method = ScanMethod::Lp;
    else if (method_name == "semialg")
        opt.method = ScanMethod::Semialg;
    else
        throw DomainError("unknown method: " + method_name);
    opt.grid = grid;
    if (!smin.empty()) opt.s_min = parse_rational(smin);
    if (!smax.empty()) opt.s_max = parse_rational(smax);
    if (!tmin.empty()) opt.t_min = parse_rational(tmin);
    if (!tmax.empty()) opt.t_max = parse_rational(tmax);
    if (!margin_str.empty()) opt.margin = parse_rational(margin_str);
    if (inner_flag >= 0) opt.inner = (inner_flag > 0);
    opt.threads = threads;
    if (opt.family == ScanFamily::Custom) {
        if (template_path.empty()) throw DomainError("custom family needs --template");
        std::ifstream in(template_path);
        if (!in) throw ParseError("cannot open " + template_path);
        opt.custom = parse_affine_template(in);
    }

    RegionGrid region = run_scan(opt);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw ParseError("cannot write " + csv_path);
        write_scan_csv(out, region);
    }
    if (!svg_path.empty()) {
        std::ofstream out(svg_path);
        if (!out) throw ParseError("cannot write " + svg_path);
        write_scan_svg(out, region);
    }
    std::size_t counts[5] = {0, 0, 0, 0, 0};
    for (CellVerdict v : region.cells) ++counts[static_cast<int>(v)];
    for (int v = 0; v < 5; ++v)
        std::cout << verdict_name(static_cast<CellVerdict>(v)) << ": " << counts[v] << '\n';
    return 0;
}

int run_slack(std::size_t ngon_n, const std::string& polytope_path,
              const std::string& witness_path, double tol) {
    PolytopeVH P;
    if (ngon_n > 0)
        P = ngon(ngon_n);
    else if (!polytope_path.empty())
        P = read_polytope_file(polytope_path);
    else
        throw DomainError("need --ngon N or a polytope file");

    NonnegMatrix S = slack_matrix(P);
    write_matrix(std::cout, S.values());
    std::cout << "rank: " << rational_rank(S) << '\n';
    std::size_t bound = cpsd_upper_bound(P);
    std::cout << "cpsd_upper_bound: " << bound << '\n';
    PhasedMatrix W = cpsd_lift_witness(P);
    std::size_t wrank = numerical_rank(W, tol);
    std::cout << "witness_rank: " << wrank << '\n';
    if (!witness_path.empty()) write_phased_matrix_file(witness_path, W);
    return wrank <= bound ? 0 : 2;
}

int run_amoeba(const std::string& path, bool log_scale, std::size_t rows, std::size_t cols) {
    RatMatrix M = read_matrix_file(path);
    std::size_t n = rows ? rows : M.rows();
    std::size_t m = cols ? cols : M.cols();
    bool member;
    if (log_scale) {
        std::vector<double> point;
        point.reserve(M.rows() * M.cols());
        for (std::size_t i = 0; i < M.rows(); ++i)
            for (std::size_t j = 0; j < M.cols(); ++j) point.push_back(to_double(M(i, j)));
        member = amoeba_membership(point, n, m, true);
    } else {
        std::vector<Rat> point;
        point.reserve(M.rows() * M.cols());
        for (std::size_t i = 0; i < M.rows(); ++i)
            for (std::size_t j = 0; j < M.cols(); ++j) point.push_back(M(i, j));
        member = amoeba_membership(point, n, m);
    }
    std::cout << "member: " << (member ? "yes" : "no") << '\n';
    return member ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"phaseless rank of nonnegative matrices: decisions, bounds, certificates"};
    app.require_subcommand(1);

    double tol = 1e-9;
    unsigned long seed = 0;
    std::size_t threads = 1;
    app.add_option("--tol", tol, "relative tolerance for numerical ranks");
    app.add_option("--seed", seed, "seed for randomized searches");
    app.add_option("--threads", threads, "worker threads for scans");

    auto* decide = app.add_subcommand("decide", "decide whether rank_theta < min(n,m)");
    std::string decide_path, decide_margin, decide_cert, decide_witness;
    decide->add_option("matrix", decide_path, "matrix file")->required();
    decide->add_option("--margin", decide_margin, "boundary probe width (rational)");
    decide->add_option("--cert", decide_cert, "certificate output file");
    decide->add_option("--witness", decide_witness, "witness output file");

    auto* brk = app.add_subcommand("bracket", "lower/upper bound the phaseless rank");
    std::string brk_path, brk_effort = "low", brk_witness;
    std::size_t brk_restarts = 8;
    brk->add_option("matrix", brk_path, "matrix file")->required();
    brk->add_option("--effort", brk_effort, "low|high")->check(CLI::IsMember({"low", "high"}));
    brk->add_option("--restarts", brk_restarts, "local search restarts");
    brk->add_option("--witness", brk_witness, "witness output file");

    auto* sgn = app.add_subcommand("signless", "signless/phaseless lower bounds");
    std::string sgn_path;
    bool sgn_exact = false;
    sgn->add_option("matrix", sgn_path, "matrix file")->required();
    sgn->add_flag("--exact", sgn_exact, "exact signless rank by enumeration");

    auto* mm = app.add_subcommand("mmatrix", "nonsingular M-matrix test");
    std::string mm_path, mm_method = "reduced";
    mm->add_option("matrix", mm_path, "Z-matrix file")->required();
    mm->add_option("--method", mm_method, "minors|reduced|vector|scaling|eigenvalue");

    auto* scan = app.add_subcommand("scan", "classify a 2-parameter family over a grid");
    std::string scan_family = "circulant3", scan_method = "lp";
    std::size_t scan_grid = 201;
    std::string scan_smin, scan_smax, scan_tmin, scan_tmax, scan_margin, scan_template;
    std::string scan_csv = "scan.csv", scan_svg;
    bool scan_inner = false, scan_no_inner = false;
    scan->add_option("--family", scan_family, "circulant3|param3x4|slice5|custom");
    scan->add_option("--method", scan_method, "lp|semialg");
    scan->add_option("--grid", scan_grid, "points per axis");
    scan->add_option("--smin", scan_smin, "window lower s");
    scan->add_option("--smax", scan_smax, "window upper s");
    scan->add_option("--tmin", scan_tmin, "window lower t");
    scan->add_option("--tmax", scan_tmax, "window upper t");
    scan->add_option("--margin", scan_margin, "boundary probe width");
    scan->add_option("--template", scan_template, "custom template file");
    scan->add_flag("--inner", scan_inner, "classify the all-determinants region");
    scan->add_flag("--no-inner", scan_no_inner, "skip the all-determinants region");
    scan->add_option("--out-csv", scan_csv, "CSV output path");
    scan->add_option("--out-svg", scan_svg, "SVG output path");

    auto* slk = app.add_subcommand("slack", "slack matrix and complex psd lift bounds");
    std::string slk_path, slk_witness;
    std::size_t slk_ngon = 0;
    slk->add_option("polytope", slk_path, "polytope file (V:/H: sections)");
    slk->add_option("--ngon", slk_ngon, "regular n-gon");
    slk->add_option("--witness", slk_witness, "lift witness output file");

    auto* amb = app.add_subcommand("amoeba", "unlog amoeba membership of a point");
    std::string amb_path;
    bool amb_log = false;
    std::size_t amb_rows = 0, amb_cols = 0;
    amb->add_option("matrix", amb_path, "point file, matrix shaped")->required();
    amb->add_flag("--log", amb_log, "coordinates are on log scale");
    amb->add_option("--rows", amb_rows, "reshape rows");
    amb->add_option("--cols", amb_cols, "reshape cols");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(decide))
            return run_decide(decide_path, decide_margin, decide_cert, decide_witness, tol);
        if (app.got_subcommand(brk))
            return run_bracket(brk_path, brk_effort, seed, brk_restarts, brk_witness, tol);
        if (app.got_subcommand(sgn)) return run_signless(sgn_path, sgn_exact);
        if (app.got_subcommand(mm)) return run_mmatrix(mm_path, mm_method);
        if (app.got_subcommand(scan)) {
            int inner_flag = -1;
            if (scan_inner) inner_flag = 1;
            if (scan_no_inner) inner_flag = 0;
            return run_scan_cmd(scan_family, scan_method, scan_grid, scan_smin, scan_smax,
                                scan_tmin, scan_tmax, scan_margin, scan_template, inner_flag,
                                threads, scan_csv, scan_svg);
        }
        if (app.got_subcommand(slk)) return run_slack(slk_ngon, slk_path, slk_witness, tol);
        if (app.got_subcommand(amb)) return run_amoeba(amb_path, amb_log, amb_rows, amb_cols);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}
