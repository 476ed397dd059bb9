#include "phaseless/rank_engine.hpp"

#include "phaseless/mmatrix.hpp"

#include "eigen_support.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace phaseless {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

std::vector<std::size_t> iota_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return idx;
}

// Lexicographically least column map sigma making every leading principal
// minor of M(A P_sigma) positive, i.e. M(A P_sigma) a nonsingular M-matrix.
// Depth-first with minor pruning; duplicate columns are tried once per level.
class PermutationSearch {
  public:
    explicit PermutationSearch(const NonnegMatrix& A) : A_(A), n_(A.rows()) {
        cols_.reserve(n_);
        for (std::size_t c = 0; c < n_; ++c) cols_.push_back(A.column(c));
        used_.assign(n_, false);
    }

    std::optional<std::vector<std::size_t>> run() {
        sigma_.clear();
        if (descend()) return sigma_;
        return std::nullopt;
    }

  private:
    bool descend() {
        std::size_t depth = sigma_.size();
        if (depth == n_) return true;
        std::vector<std::size_t> tried;
        for (std::size_t c = 0; c < n_; ++c) {
            if (used_[c]) continue;
            bool duplicate = false;
            for (std::size_t t : tried)
                if (cols_[t] == cols_[c]) {
                    duplicate = true;
                    break;
                }
            if (duplicate) continue;
            tried.push_back(c);
            sigma_.push_back(c);
            used_[c] = true;
            if (leading_minor_positive() && descend()) return true;
            used_[c] = false;
            sigma_.pop_back();
        }
        return false;
    }

    bool leading_minor_positive() const {
        std::size_t k = sigma_.size();
        RatMatrix S(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) {
                const Rat& a = A_(i, sigma_[j]);
                S(i, j) = (i == j) ? a : Rat(-a);
            }
        return det_exact(S) > 0;
    }

    const NonnegMatrix& A_;
    std::size_t n_;
    std::vector<std::vector<Rat>> cols_;
    std::vector<std::size_t> sigma_;
    std::vector<bool> used_;
};

std::vector<Rat> mmatrix_scaling(const NonnegMatrix& A, const std::vector<std::size_t>& sigma) {
    auto rep = is_nonsingular_m_matrix(comparison_matrix(A, sigma), MMatrixMethod::PositiveVector);
    if (!rep.verdict) throw std::logic_error("permutation accepted without a positive vector");
    return rep.certificate;
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

} // namespace

PhasedMatrix build_witness(const NonnegMatrix& A, const WeightVector& lambda) {
    std::size_t n = A.rows(), m = A.cols();
    if (lambda.size() != n) throw DimensionError("weight length does not match row count");
    std::vector<double> phases(n * m, 0.0);
    std::vector<Rat> products(n);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < n; ++k) products[k] = lambda[k] * A(k, j);
        if (is_lopsided(products)) throw LopsidedError(dominant_index(products), j);
        PhaseAssignment pa = close_polygon(products);
        for (std::size_t k = 0; k < n; ++k) phases[k * m + j] = pa.phases[k];
    }
    PhasedMatrix W(A, std::move(phases));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (A(k, j) != 0) {
                W.rotate_column(j, -W.phase(k, j));
                break;
            }
    return W;
}

RankDecision decide_nonmaximal(const NonnegMatrix& A, const DecideOptions& options) {
    if (A.rows() == 0 || A.cols() == 0) throw DimensionError("empty matrix");
    RankDecision d;
    d.transposed = A.rows() > A.cols();
    NonnegMatrix W = d.transposed ? A.transpose() : A;
    std::size_t n = W.rows();

    for (std::size_t r = 0; r < n; ++r) {
        bool zero = true;
        for (std::size_t j = 0; j < W.cols() && zero; ++j) zero = (W(r, j) == 0);
        if (zero) {
            d.maximal = false;
            d.lambda.assign(n, Rat(0));
            d.lambda[r] = 1;
            PhasedMatrix wit = PhasedMatrix::real(W);
            d.witness = d.transposed ? wit.transpose() : wit;
            return d;
        }
    }

    LPOutcome out = lp_feasible(nonmax_system(W));
    if (options.boundary_margin > 0) {
        Rat shift = out.feasible ? Rat(-options.boundary_margin) : options.boundary_margin;
        LPOutcome probe = lp_feasible(nonmax_system(W, shift));
        d.boundary_uncertain = (probe.feasible != out.feasible);
    }

    if (out.feasible) {
        d.maximal = false;
        d.lambda = out.point;
        PhasedMatrix wit = build_witness(W, WeightVector(out.point));
        d.witness = d.transposed ? wit.transpose() : wit;
        return d;
    }

    d.maximal = true;
    d.farkas = out.certificate.ineq;
    if (n == W.cols()) {
        PermutationSearch search(W);
        auto sigma = search.run();
        if (!sigma) throw std::logic_error("maximal square matrix without an M-matrix permutation");
        d.permutation = *sigma;
        d.scaling = mmatrix_scaling(W, *sigma);
        d.submatrix_cols = iota_indices(n);
        return d;
    }

    // Rectangular: some n x n column block must itself be maximal.
    std::vector<std::size_t> idx = iota_indices(n);
    do {
        NonnegMatrix sub = W.select_columns(idx);
        if (!lp_feasible(nonmax_system(sub)).feasible) {
            PermutationSearch search(sub);
            auto sigma = search.run();
            if (!sigma) throw std::logic_error("maximal submatrix without an M-matrix permutation");
            d.permutation = *sigma;
            d.scaling = mmatrix_scaling(sub, *sigma);
            d.submatrix_cols = idx;
            return d;
        }
    } while (next_combination(idx, W.cols()));
    throw std::logic_error("infeasible system but every square block is nonmaximal");
}

RankDecision decide_by_permutations(const NonnegMatrix& A) {
    if (A.rows() != A.cols()) throw DimensionError("permutation route needs a square matrix");
    if (A.rows() > 10) throw CapabilityError("permutation enumeration capped at n = 10");
    PermutationSearch search(A);
    auto sigma = search.run();
    RankDecision d;
    if (sigma) {
        d.maximal = true;
        d.permutation = *sigma;
        d.scaling = mmatrix_scaling(A, *sigma);
        d.submatrix_cols = iota_indices(A.rows());
        return d;
    }
    LPOutcome out = lp_feasible(nonmax_system(A));
    if (!out.feasible) throw std::logic_error("permutation scan and LP verdicts disagree");
    d.maximal = false;
    d.lambda = out.point;
    d.witness = build_witness(A, WeightVector(out.point));
    return d;
}

bool decide_by_submatrices(const NonnegMatrix& A) {
    std::size_t n = A.rows(), m = A.cols();
    if (n > m) throw DimensionError("submatrix route needs rows <= cols");
    std::vector<std::size_t> idx = iota_indices(n);
    do {
        if (!lp_feasible(nonmax_system(A.select_columns(idx))).feasible) return false;
    } while (next_combination(idx, m));
    return true;
}

PatchingResult upper_bound_patching(const NonnegMatrix& A, std::size_t k, PatchingCheck check) {
    std::size_t n = A.rows(), m = A.cols();
    if (k < 2 || k > n || n > m) throw DimensionError("patching needs 2 <= k <= rows <= cols");
    bool row0_nonzero = false;
    for (std::size_t j = 0; j < m && !row0_nonzero; ++j) row0_nonzero = (A(0, j) != 0);
    if (!row0_nonzero) throw DomainError("patching needs a nonzero first row");

    if (check == PatchingCheck::AllSubmatrices) {
        std::vector<std::size_t> rows = iota_indices(k);
        std::size_t block_no = 0;
        do {
            std::vector<std::size_t> cols = iota_indices(k);
            do {
                if (!lp_feasible(nonmax_system(A.select_rows(rows).select_columns(cols))).feasible)
                    throw BoundInapplicable(block_no);
            } while (next_combination(cols, m));
            ++block_no;
        } while (next_combination(rows, n));
    }

    std::size_t t = (n - 1) / (k - 1);
    std::vector<double> phases(n * m, 0.0);
    for (std::size_t b = 0; b < t; ++b) {
        std::vector<std::size_t> rows{0};
        for (std::size_t r = 1 + b * (k - 1); r <= (b + 1) * (k - 1); ++r) rows.push_back(r);
        NonnegMatrix block = A.select_rows(rows);
        LPOutcome out = lp_feasible(nonmax_system(block));
        if (!out.feasible) throw BoundInapplicable(b);
        PhasedMatrix W = build_witness(block, WeightVector(out.point));
        // Row 0 of every block witness is real, so the blocks agree on the
        // shared row and embed exactly.
        for (std::size_t r = 1; r < rows.size(); ++r)
            for (std::size_t j = 0; j < m; ++j) phases[rows[r] * m + j] = W.phase(r, j);
    }
    return {n - t, PhasedMatrix(A, std::move(phases))};
}

std::size_t lower_bound_hadamard(const NonnegMatrix& A) {
    return static_cast<std::size_t>(
        ceil_isqrt(Int(static_cast<unsigned long>(rational_rank(hadamard_square(A))))));
}

std::size_t signless_lower_bound(const NonnegMatrix& A) {
    return static_cast<std::size_t>(ceil_triangular_inverse(
        Int(static_cast<unsigned long>(rational_rank(hadamard_square(A))))));
}

std::size_t signless_rank_bruteforce(const NonnegMatrix& A) {
    std::size_t n = A.rows(), m = A.cols();
    if (n == 0 || m == 0) return 0;
    if ((n - 1) * (m - 1) > 20)
        throw CapabilityError("signless enumeration capped at (rows-1)(cols-1) <= 20");

    // Row and column sign flips leave the rank unchanged, so the signs of the
    // nonzero entries of row 0 and column 0 can be pinned to +; only interior
    // nonzero entries get free signs.
    std::vector<std::pair<std::size_t, std::size_t>> free_pos;
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 1; j < m; ++j)
            if (A(i, j) != 0) free_pos.emplace_back(i, j);

    std::size_t best = std::min(n, m);
    std::size_t floor_rank = signless_lower_bound(A);
    RatMatrix S = A.values();
    std::size_t patterns = std::size_t(1) << free_pos.size();
    for (std::size_t mask = 0; mask < patterns; ++mask) {
        for (std::size_t b = 0; b < free_pos.size(); ++b) {
            auto [i, j] = free_pos[b];
            S(i, j) = (mask >> b) & 1 ? Rat(-A(i, j)) : A(i, j);
        }
        best = std::min(best, rational_rank(S));
        if (best <= floor_rank) break;
    }
    return best;
}

namespace {

double tail_sum(const Eigen::MatrixXcd& B, std::size_t target) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B);
    const auto& sv = svd.singularValues();
    double s = 0.0;
    for (Eigen::Index i = static_cast<Eigen::Index>(target); i < sv.size(); ++i) s += sv(i);
    return s;
}

PhasedMatrix phases_from(const NonnegMatrix& A, const Eigen::MatrixXcd& B) {
    std::size_t n = A.rows(), m = A.cols();
    std::vector<double> ph(n * m, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (A(i, j) != 0)
                ph[i * m + j] = std::arg(B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    PhasedMatrix W(A, std::move(ph));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (A(i, j) != 0) {
                W.rotate_column(j, -W.phase(i, j));
                break;
            }
    return W;
}

} // namespace

std::optional<PhasedMatrix> phase_local_search(const NonnegMatrix& A, std::size_t target,
                                               std::size_t restarts, unsigned long seed) {
    std::size_t n = A.rows(), m = A.cols();
    std::size_t minnm = std::min(n, m);
    if (target < 1 || target >= minnm) throw DomainError("target must satisfy 1 <= target < min(n,m)");

    PhasedMatrix realA = PhasedMatrix::real(A);
    if (numerical_rank(realA, 1e-8) <= target) return realA;

    Eigen::MatrixXd mod(n, m);
    std::vector<std::pair<std::size_t, std::size_t>> free_pos;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            mod(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(A(i, j));
            if (A(i, j) != 0) free_pos.emplace_back(i, j);
        }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, kTwoPi);

    constexpr int kGrid = 24;
    constexpr double kGolden = 0.6180339887498949;

    for (std::size_t restart = 0; restart <= restarts; ++restart) {
        Eigen::MatrixXcd B(n, m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                double phase = 0.0;
                if (restart > 0 && A(i, j) != 0) phase = unif(rng);
                B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    std::polar(mod(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), phase);
            }

        double obj = tail_sum(B, target);
        for (int sweep = 0; sweep < 48 && obj > 1e-12; ++sweep) {
            double before = obj;
            for (auto [i, j] : free_pos) {
                Eigen::Index ei = static_cast<Eigen::Index>(i), ej = static_cast<Eigen::Index>(j);
                double r = mod(ei, ej);
                double best_theta = std::arg(B(ei, ej));
                double best_val = obj;
                for (int g = 0; g < kGrid; ++g) {
                    double theta = kTwoPi * g / kGrid;
                    B(ei, ej) = std::polar(r, theta);
                    double v = tail_sum(B, target);
                    if (v < best_val) {
                        best_val = v;
                        best_theta = theta;
                    }
                }
                double lo = best_theta - kTwoPi / kGrid, hi = best_theta + kTwoPi / kGrid;
                double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
                B(ei, ej) = std::polar(r, x1);
                double f1 = tail_sum(B, target);
                B(ei, ej) = std::polar(r, x2);
                double f2 = tail_sum(B, target);
                for (int it = 0; it < 32; ++it) {
                    if (f1 < f2) {
                        hi = x2; x2 = x1; f2 = f1;
                        x1 = hi - kGolden * (hi - lo);
                        B(ei, ej) = std::polar(r, x1);
                        f1 = tail_sum(B, target);
                    } else {
                        lo = x1; x1 = x2; f1 = f2;
                        x2 = lo + kGolden * (hi - lo);
                        B(ei, ej) = std::polar(r, x2);
                        f2 = tail_sum(B, target);
                    }
                }
                double cand_theta = (f1 < f2) ? x1 : x2;
                double cand_val = std::min(f1, f2);
                if (cand_val < best_val) {
                    best_val = cand_val;
                    best_theta = cand_theta;
                }
                B(ei, ej) = std::polar(r, best_theta);
                obj = best_val;
            }
            if (before - obj < 1e-13 * (1.0 + before)) break;
        }

        // Polish: alternate between the nearest rank-target matrix and the
        // nearest equimodular one (phases from the truncation).
        for (int it = 0; it < 400; ++it) {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
            Eigen::VectorXd sv = svd.singularValues();
            double tail = 0.0;
            for (Eigen::Index s = static_cast<Eigen::Index>(target); s < sv.size(); ++s) tail += sv(s);
            if (tail <= 1e-10 * sv(0)) break;
            for (Eigen::Index s = static_cast<Eigen::Index>(target); s < sv.size(); ++s) sv(s) = 0.0;
            Eigen::MatrixXcd C = svd.matrixU() * sv.asDiagonal() * svd.matrixV().adjoint();
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    Eigen::Index ei = static_cast<Eigen::Index>(i), ej = static_cast<Eigen::Index>(j);
                    if (mod(ei, ej) == 0.0) continue;
                    std::complex<double> c = C(ei, ej);
                    if (std::abs(c) > 0) B(ei, ej) = std::polar(mod(ei, ej), std::arg(c));
                }
        }

        PhasedMatrix W = phases_from(A, B);
        if (numerical_rank(W, 1e-8) <= target) return W;
    }
    return std::nullopt;
}

Bracket bracket(const NonnegMatrix& A, BracketEffort effort, unsigned long seed,
                std::size_t restarts) {
    bool transposed = A.rows() > A.cols();
    NonnegMatrix W = transposed ? A.transpose() : A;
    std::size_t n = W.rows();

    Bracket b;
    std::size_t r = rational_rank(W);
    if (r <= 1) {
        b.lower = b.upper = 1;
        b.lower_source = LowerSource::RankOne;
        b.upper_source = UpperSource::NonmaxDirect;
        b.upper_witness = PhasedMatrix::real(A);
        return b;
    }

    RankDecision dec = decide_nonmaximal(W);
    if (dec.maximal) {
        b.lower = b.upper = n;
        b.lower_source = LowerSource::Maximality;
        b.upper_source = UpperSource::TrivialMin;
        return b;
    }

    b.lower = lower_bound_hadamard(W);
    b.lower_source = LowerSource::HadamardSquare;

    b.upper = n - 1;
    b.upper_source = UpperSource::NonmaxDirect;
    PhasedMatrix best_wit = dec.witness;  // W orientation

    // Patching needs a nonzero first row; swap one up if necessary.
    std::size_t front = 0;
    while (front < n) {
        bool nonzero = false;
        for (std::size_t j = 0; j < W.cols() && !nonzero; ++j) nonzero = (W(front, j) != 0);
        if (nonzero) break;
        ++front;
    }
    if (front < n) {
        std::vector<std::size_t> perm = iota_indices(n);
        std::swap(perm[0], perm[front]);
        NonnegMatrix Wp = W.select_rows(perm);
        for (std::size_t k = 2; k < n; ++k) {
            try {
                PatchingResult pr = upper_bound_patching(Wp, k);
                if (pr.bound < b.upper) {
                    b.upper = pr.bound;
                    b.upper_source = UpperSource::Patching;
                    b.patching_k = k;
                    std::vector<double> ph(n * W.cols());
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < W.cols(); ++j)
                            ph[perm[i] * W.cols() + j] = pr.witness.phase(i, j);
                    best_wit = PhasedMatrix(W, std::move(ph));
                }
                break;  // bounds only grow with k
            } catch (const BoundInapplicable&) {
            }
        }
    }

    if (effort == BracketEffort::High) {
        while (b.upper > b.lower) {
            auto ls = phase_local_search(W, b.upper - 1, restarts, seed);
            if (!ls) break;
            b.upper -= 1;
            b.upper_source = UpperSource::LocalSearch;
            b.patching_k = 0;
            best_wit = *ls;
        }
    }

    b.upper_witness = transposed ? best_wit.transpose() : best_wit;
    if (b.lower > b.upper) throw std::logic_error("bracket lower bound exceeds upper bound");
    return b;
}

TypicalRankBounds typical_rank_bounds(std::size_t n, std::size_t m) {
    if (n < 3 || n > m) throw DomainError("typical rank bounds need 3 <= n <= m");
    Int rhs = Int(static_cast<unsigned long>((n - 1) * (n - 1))) +
              Int(static_cast<unsigned long>((m - 1) * (m - 1)));
    std::size_t lower = 1;
    for (;; ++lower) {
        long gap = static_cast<long>(n + m) - 2 * static_cast<long>(lower);
        if (gap <= 0 || Int(gap) * Int(gap) <= rhs) break;
    }
    return {lower, (n + 2) / 2};
}

bool amoeba_membership(const std::vector<Rat>& point, std::size_t n, std::size_t m) {
    if (point.size() != n * m) throw DimensionError("point length must be rows*cols");
    for (const auto& v : point)
        if (v < 0) return false;
    RatMatrix M(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) M(i, j) = point[i * m + j];
    return !decide_nonmaximal(NonnegMatrix(std::move(M))).maximal;
}

bool amoeba_membership(const std::vector<double>& point, std::size_t n, std::size_t m,
                       bool log_scale) {
    if (point.size() != n * m) throw DimensionError("point length must be rows*cols");
    std::vector<Rat> coords(point.size());
    for (std::size_t k = 0; k < point.size(); ++k) {
        double v = point[k];
        if (!std::isfinite(v)) throw DomainError("non-finite coordinate");
        if (log_scale) {
            coords[k] = rationalize(std::exp(v), 1e-12);
        } else {
            if (v < 0) return false;
            coords[k] = rationalize(v, 1e-12);
        }
    }
    return amoeba_membership(coords, n, m);
}

} // namespace phaseless
