#include "phaseless/lp.hpp"

#include "phaseless/errors.hpp"

#include <limits>

namespace phaseless {

namespace {

struct StandardForm {
    // Columns: structural (split free vars), then one slack per inequality,
    // then one artificial per row. Rows: inequalities first, equalities after,
    // each scaled so the right hand side is nonnegative.
    std::vector<std::vector<Rat>> rows;
    std::vector<Rat> rhs;
    std::vector<int> row_sign;           // +1 kept, -1 flipped
    std::vector<std::size_t> var_pos;    // column of x_j (positive part)
    std::vector<std::size_t> var_neg;    // column of the negative part, or npos
    std::size_t n_struct = 0, n_slack = 0, n_rows = 0;

    std::size_t art_col(std::size_t r) const { return n_struct + n_slack + r; }
    std::size_t width() const { return n_struct + n_slack + n_rows; }
};

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

StandardForm build_standard(const LinearProgram& lp) {
    std::size_t nvar = lp.variables();
    std::size_t n_ineq = lp.h.size(), n_eq = lp.f.size();
    if (lp.G.rows() != n_ineq || (n_ineq > 0 && lp.G.cols() != nvar))
        throw DimensionError("inequality block shape mismatch");
    if (lp.E.rows() != n_eq || (n_eq > 0 && lp.E.cols() != nvar))
        throw DimensionError("equality block shape mismatch");

    StandardForm sf;
    sf.var_pos.resize(nvar);
    sf.var_neg.assign(nvar, npos);
    for (std::size_t j = 0; j < nvar; ++j) {
        sf.var_pos[j] = sf.n_struct++;
        if (!lp.nonneg[j]) sf.var_neg[j] = sf.n_struct++;
    }
    sf.n_slack = n_ineq;
    sf.n_rows = n_ineq + n_eq;

    sf.rows.assign(sf.n_rows, std::vector<Rat>(sf.width(), Rat(0)));
    sf.rhs.resize(sf.n_rows);
    sf.row_sign.assign(sf.n_rows, 1);

    for (std::size_t r = 0; r < sf.n_rows; ++r) {
        bool ineq = r < n_ineq;
        const Rat& b = ineq ? lp.h[r] : lp.f[r - n_ineq];
        int s = (b < 0) ? -1 : 1;
        sf.row_sign[r] = s;
        for (std::size_t j = 0; j < nvar; ++j) {
            const Rat& g = ineq ? lp.G(r, j) : lp.E(r - n_ineq, j);
            if (g == 0) continue;
            sf.rows[r][sf.var_pos[j]] = s * g;
            if (sf.var_neg[j] != npos) sf.rows[r][sf.var_neg[j]] = -s * g;
        }
        if (ineq) sf.rows[r][sf.n_struct + r] = s;
        sf.rows[r][sf.art_col(r)] = 1;
        sf.rhs[r] = s * b;
    }
    return sf;
}

} // namespace

LPOutcome lp_feasible(const LinearProgram& lp) {
    StandardForm sf = build_standard(lp);
    std::size_t m = sf.n_rows, width = sf.width();
    std::size_t first_art = sf.n_struct + sf.n_slack;

    // Phase-1 objective: minimize the sum of artificials. obj holds reduced
    // costs; obj_rhs the negated objective value.
    std::vector<Rat> obj(width, Rat(0));
    Rat obj_rhs(0);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t j = 0; j < first_art; ++j) obj[j] -= sf.rows[r][j];
        obj_rhs -= sf.rhs[r];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = sf.art_col(r);

    for (;;) {
        // Bland: smallest-index entering column with a negative reduced cost.
        // Artificials never re-enter.
        std::size_t enter = npos;
        for (std::size_t j = 0; j < first_art; ++j)
            if (obj[j] < 0) {
                enter = j;
                break;
            }
        if (enter == npos) break;

        std::size_t leave = npos;
        Rat best_ratio;
        for (std::size_t r = 0; r < m; ++r) {
            if (sf.rows[r][enter] <= 0) continue;
            Rat ratio = sf.rhs[r] / sf.rows[r][enter];
            if (leave == npos || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leave])) {
                leave = r;
                best_ratio = ratio;
            }
        }
        if (leave == npos) throw std::logic_error("phase-1 simplex cannot be unbounded");

        // Pivot on (leave, enter).
        Rat piv = sf.rows[leave][enter];
        for (auto& e : sf.rows[leave]) e /= piv;
        sf.rhs[leave] /= piv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == leave) continue;
            Rat factor = sf.rows[r][enter];
            if (factor == 0) continue;
            for (std::size_t j = 0; j < width; ++j)
                if (sf.rows[leave][j] != 0) sf.rows[r][j] -= factor * sf.rows[leave][j];
            sf.rhs[r] -= factor * sf.rhs[leave];
        }
        Rat ofac = obj[enter];
        if (ofac != 0) {
            for (std::size_t j = 0; j < width; ++j)
                if (sf.rows[leave][j] != 0) obj[j] -= ofac * sf.rows[leave][j];
            obj_rhs -= ofac * sf.rhs[leave];
        }
        basis[leave] = enter;
    }

    LPOutcome out;
    if (obj_rhs == 0) {
        out.feasible = true;
        std::vector<Rat> std_val(width, Rat(0));
        for (std::size_t r = 0; r < m; ++r) std_val[basis[r]] = sf.rhs[r];
        out.point.resize(lp.variables());
        for (std::size_t j = 0; j < lp.variables(); ++j) {
            out.point[j] = std_val[sf.var_pos[j]];
            if (sf.var_neg[j] != npos) out.point[j] -= std_val[sf.var_neg[j]];
        }
    } else {
        out.feasible = false;
        // Simplex multipliers: y_r = 1 - reduced cost of artificial r. The
        // original-row certificate flips the scaling signs back.
        std::size_t n_ineq = lp.h.size();
        out.certificate.ineq.resize(n_ineq);
        out.certificate.eq.resize(lp.f.size());
        for (std::size_t r = 0; r < m; ++r) {
            Rat y = Rat(1) - obj[sf.art_col(r)];
            Rat mult = -y * sf.row_sign[r];
            if (r < n_ineq)
                out.certificate.ineq[r] = mult;
            else
                out.certificate.eq[r - n_ineq] = mult;
        }
    }
    return out;
}

bool verify_feasible_point(const LinearProgram& lp, const std::vector<Rat>& x) {
    if (x.size() != lp.variables()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (lp.nonneg[j] && x[j] < 0) return false;
    for (std::size_t r = 0; r < lp.h.size(); ++r) {
        Rat lhs(0);
        for (std::size_t j = 0; j < x.size(); ++j) lhs += lp.G(r, j) * x[j];
        if (lhs > lp.h[r]) return false;
    }
    for (std::size_t r = 0; r < lp.f.size(); ++r) {
        Rat lhs(0);
        for (std::size_t j = 0; j < x.size(); ++j) lhs += lp.E(r, j) * x[j];
        if (lhs != lp.f[r]) return false;
    }
    return true;
}

bool verify_infeasibility(const LinearProgram& lp, const InfeasibilityCertificate& cert) {
    if (cert.ineq.size() != lp.h.size() || cert.eq.size() != lp.f.size()) return false;
    for (const auto& u : cert.ineq)
        if (u < 0) return false;
    Rat bound(0);
    for (std::size_t r = 0; r < lp.h.size(); ++r) bound += cert.ineq[r] * lp.h[r];
    for (std::size_t r = 0; r < lp.f.size(); ++r) bound += cert.eq[r] * lp.f[r];
    if (bound >= 0) return false;
    for (std::size_t j = 0; j < lp.variables(); ++j) {
        Rat c(0);
        for (std::size_t r = 0; r < lp.h.size(); ++r) c += cert.ineq[r] * lp.G(r, j);
        for (std::size_t r = 0; r < lp.f.size(); ++r) c += cert.eq[r] * lp.E(r, j);
        if (lp.nonneg[j] ? (c < 0) : (c != 0)) return false;
    }
    return true;
}

LinearProgram nonmax_system(const NonnegMatrix& A, const Rat& shift) {
    std::size_t n = A.rows(), m = A.cols();
    if (n == 0 || m == 0) throw DimensionError("empty matrix");
    if (n > m) throw DimensionError("nonmax_system expects rows <= cols");

    LinearProgram lp;
    lp.nonneg.assign(n, true);
    lp.G = RatMatrix(n * m, n);
    lp.h.assign(n * m, Rat(0));
    for (std::size_t j = 0; j < m; ++j) {
        Rat colsum(0);
        for (std::size_t k = 0; k < n; ++k) colsum += A(k, j);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = j * n + i;
            for (std::size_t k = 0; k < n; ++k) lp.G(r, k) = (k == i) ? A(k, j) : Rat(-A(k, j));
            lp.h[r] = shift * colsum;
        }
    }
    lp.E = RatMatrix(1, n);
    for (std::size_t k = 0; k < n; ++k) lp.E(0, k) = 1;
    lp.f = {Rat(1)};
    return lp;
}

} // namespace phaseless
