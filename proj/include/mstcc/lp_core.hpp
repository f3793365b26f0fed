#pragma once

/// Bounded-variable linear programming: minimize c*x over box-constrained
/// variables subject to one equality row and appended <= rows, via a
/// two-phase revised simplex with a dense basis inverse. Deterministic,
/// returns vertex solutions. Entering variable by largest reduced cost,
/// switching to lowest-index (Bland) after a stall; ratio-test ties broken
/// by lowest basic variable index; periodic refactorization; the final
/// point is certified against every row and bound before it is returned.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cuts.hpp"

namespace mstcc {

enum class RowSense
{
    LessEqual,
    Equal
};

struct LpRow
{
    std::vector<std::pair<long, double>> coeffs;   // (variable id, coefficient)
    RowSense sense = RowSense::LessEqual;
    double rhs = 0.0;
};

struct LpModel
{
    std::vector<double> objective;
    std::vector<std::pair<double, double>> var_bounds;   // [lo, hi] per variable
    std::vector<LpRow> rows;   // row 0 is the tree cardinality equality
};

enum class LpStatus
{
    Optimal,
    Infeasible
};

struct LpSolution
{
    LpStatus status = LpStatus::Infeasible;
    double objective_value = 0.0;
    std::vector<double> values;
};

struct NumericalFailure : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Appends one row per cut; all cut classes have unit coefficients over
/// their support. Existing rows are untouched.
inline LpModel add_rows(LpModel model, const std::vector<Cut>& cuts)
{
    for (const Cut& cut : cuts)
    {
        LpRow row;
        row.sense = RowSense::LessEqual;
        row.rhs = cut.rhs;
        row.coeffs.reserve(cut.support.size());
        for (long id : cut.support)
            row.coeffs.emplace_back(id, 1.0);
        model.rows.push_back(std::move(row));
    }
    return model;
}

namespace detail {

class BoundedSimplex
{
public:
    explicit BoundedSimplex(const LpModel& model)
        : n_struct(static_cast<long>(model.objective.size())),
          n_rows(static_cast<long>(model.rows.size()))
    {
        const double inf = std::numeric_limits<double>::infinity();

        long n_slack = 0;
        for (const LpRow& row : model.rows)
            if (row.sense == RowSense::LessEqual)
                ++n_slack;
        n_total = n_struct + n_slack + n_rows;

        col.assign(n_total, {});
        lo.assign(n_total, 0.0);
        hi.assign(n_total, inf);
        phase2_cost.assign(n_total, 0.0);
        rhs.resize(n_rows);

        for (long j = 0; j < n_struct; ++j)
        {
            lo[j] = model.var_bounds[j].first;
            hi[j] = model.var_bounds[j].second;
            phase2_cost[j] = model.objective[j];
            if (!std::isfinite(lo[j]) || !(lo[j] <= hi[j]))
                throw std::invalid_argument("solve_lp: bad variable bounds");
        }
        row_sense_le.assign(n_rows, 0);
        long slack = n_struct;
        for (long i = 0; i < n_rows; ++i)
        {
            const LpRow& row = model.rows[i];
            for (const auto& [j, a] : row.coeffs)
            {
                if (j < 0 || j >= n_struct)
                    throw std::invalid_argument("solve_lp: coefficient index out of range");
                if (a != 0.0)
                    col[j].emplace_back(i, a);
            }
            rhs[i] = row.rhs;
            if (row.sense == RowSense::LessEqual)
            {
                row_sense_le[i] = 1;
                col[slack++].emplace_back(i, 1.0);
            }
        }
        art_begin = slack;
    }

    LpSolution run()
    {
        init_basis();

        std::vector<double> phase1_cost(n_total, 0.0);
        for (long j = art_begin; j < n_total; ++j)
            phase1_cost[j] = 1.0;
        iterate(phase1_cost);

        double infeas = 0.0;
        for (long i = 0; i < n_rows; ++i)
            if (basis[i] >= art_begin)
                infeas += std::max(xb[i], 0.0);
        for (long j = art_begin; j < n_total; ++j)
            if (where[j] == Loc::Upper)
                infeas += hi[j];
        if (infeas > kPhase1Tol)
            return {LpStatus::Infeasible, 0.0, {}};

        for (long j = art_begin; j < n_total; ++j)
            hi[j] = 0.0;                       // artificials locked at zero
        iterate(phase2_cost);

        return extract();
    }

private:
    static constexpr double kPivotTol = 1e-9;
    static constexpr double kCostTol = 1e-9;
    static constexpr double kCertifyTol = 1e-6;
    static constexpr double kPhase1Tol = 1e-7;
    static constexpr long kStallLimit = 100;
    static constexpr long kRefactorEvery = 64;

    enum class Loc : char
    {
        Lower,
        Upper,
        Basic
    };

    long n_struct, n_rows, n_total = 0, art_begin = 0;
    std::vector<std::vector<std::pair<long, double>>> col;
    std::vector<double> lo, hi, phase2_cost, rhs;

    std::vector<long> basis;
    std::vector<Loc> where;
    std::vector<double> binv;   // dense, row-major n_rows x n_rows
    std::vector<double> xb;

    double nonbasic_value(long j) const
    {
        return where[j] == Loc::Upper ? hi[j] : lo[j];
    }

    /// One artificial per row, signed to carry the initial residual.
    void init_basis()
    {
        where.assign(n_total, Loc::Lower);
        basis.assign(n_rows, -1);
        xb.assign(n_rows, 0.0);
        binv.assign(static_cast<std::size_t>(n_rows) * n_rows, 0.0);

        std::vector<double> residual = rhs;
        for (long j = 0; j < art_begin; ++j)
            if (lo[j] != 0.0)
                for (const auto& [i, a] : col[j])
                    residual[i] -= a * lo[j];

        for (long i = 0; i < n_rows; ++i)
        {
            const double sigma = residual[i] >= 0.0 ? 1.0 : -1.0;
            const long j = art_begin + i;
            col[j] = {{i, sigma}};
            basis[i] = j;
            where[j] = Loc::Basic;
            xb[i] = std::abs(residual[i]);
            binv[i * n_rows + i] = sigma;
        }
    }

    void refactorize()
    {
        // Gauss-Jordan inversion of the basis matrix with partial pivoting.
        std::vector<double> work(static_cast<std::size_t>(n_rows) * 2 * n_rows, 0.0);
        const long width = 2 * n_rows;
        for (long i = 0; i < n_rows; ++i)
            work[i * width + n_rows + i] = 1.0;
        for (long k = 0; k < n_rows; ++k)
            for (const auto& [i, a] : col[basis[k]])
                work[i * width + k] = a;

        for (long k = 0; k < n_rows; ++k)
        {
            long best = k;
            for (long i = k + 1; i < n_rows; ++i)
                if (std::abs(work[i * width + k]) > std::abs(work[best * width + k]))
                    best = i;
            if (std::abs(work[best * width + k]) < kPivotTol)
                throw NumericalFailure("singular basis during refactorization");
            if (best != k)
                for (long c = 0; c < width; ++c)
                    std::swap(work[k * width + c], work[best * width + c]);
            const double piv = work[k * width + k];
            for (long c = 0; c < width; ++c)
                work[k * width + c] /= piv;
            for (long i = 0; i < n_rows; ++i)
            {
                if (i == k)
                    continue;
                const double f = work[i * width + k];
                if (f == 0.0)
                    continue;
                for (long c = 0; c < width; ++c)
                    work[i * width + c] -= f * work[k * width + c];
            }
        }
        for (long i = 0; i < n_rows; ++i)
            for (long k = 0; k < n_rows; ++k)
                binv[i * n_rows + k] = work[i * width + n_rows + k];

        recompute_basics();
    }

    void recompute_basics()
    {
        std::vector<double> residual = rhs;
        for (long j = 0; j < n_total; ++j)
        {
            if (where[j] == Loc::Basic)
                continue;
            const double v = nonbasic_value(j);
            if (v != 0.0)
                for (const auto& [i, a] : col[j])
                    residual[i] -= a * v;
        }
        for (long i = 0; i < n_rows; ++i)
        {
            double sum = 0.0;
            for (long k = 0; k < n_rows; ++k)
                sum += binv[i * n_rows + k] * residual[k];
            xb[i] = sum;
        }
    }

    void iterate(const std::vector<double>& cost)
    {
        const double inf = std::numeric_limits<double>::infinity();
        const long iteration_cap = 10000 + 50 * (n_total + n_rows);
        long since_refactor = 0;
        long stall = 0;
        bool bland = false;

        std::vector<double> y(n_rows), w(n_rows);

        for (long iter = 0; iter <= iteration_cap; ++iter)
        {
            if (iter == iteration_cap)
                throw NumericalFailure("simplex iteration limit reached");

            // 1. PRICING
            for (long k = 0; k < n_rows; ++k)
            {
                double sum = 0.0;
                for (long i = 0; i < n_rows; ++i)
                    sum += cost[basis[i]] * binv[i * n_rows + k];
                y[k] = sum;
            }
            long entering = -1;
            double entering_score = kCostTol;
            double entering_d = 0.0;
            for (long j = 0; j < n_total; ++j)
            {
                if (where[j] == Loc::Basic || hi[j] - lo[j] <= 0.0)
                    continue;
                double d = cost[j];
                for (const auto& [i, a] : col[j])
                    d -= y[i] * a;
                const bool favorable = (where[j] == Loc::Lower && d < -kCostTol)
                                       || (where[j] == Loc::Upper && d > kCostTol);
                if (!favorable)
                    continue;
                if (bland)
                {
                    entering = j;
                    entering_d = d;
                    break;
                }
                if (std::abs(d) > entering_score)
                {
                    entering_score = std::abs(d);
                    entering = j;
                    entering_d = d;
                }
            }
            if (entering == -1)
                return;   // optimal for this phase

            // 2. DIRECTION
            for (long i = 0; i < n_rows; ++i)
            {
                double sum = 0.0;
                for (const auto& [k, a] : col[entering])
                    sum += binv[i * n_rows + k] * a;
                w[i] = sum;
            }
            const double t = where[entering] == Loc::Lower ? 1.0 : -1.0;

            // 3. RATIO TEST, ties to the lowest basic variable index
            double theta = hi[entering] - lo[entering];
            long leave = -1;
            Loc leave_to = Loc::Lower;
            for (long i = 0; i < n_rows; ++i)
            {
                const double delta = t * w[i];
                double cand;
                Loc to;
                if (delta > kPivotTol)
                {
                    cand = (xb[i] - lo[basis[i]]) / delta;
                    to = Loc::Lower;
                }
                else if (delta < -kPivotTol)
                {
                    if (hi[basis[i]] == inf)
                        continue;
                    cand = (hi[basis[i]] - xb[i]) / (-delta);
                    to = Loc::Upper;
                }
                else
                    continue;
                if (cand < 0.0)
                    cand = 0.0;
                if (cand < theta
                    || (cand == theta && leave != -1 && basis[i] < basis[leave]))
                {
                    theta = cand;
                    leave = i;
                    leave_to = to;
                }
            }
            if (theta == inf)
                throw NumericalFailure("unbounded direction in simplex");

            // 4. UPDATE
            const double progress = std::abs(entering_d) * theta;
            if (theta > 0.0)
                for (long i = 0; i < n_rows; ++i)
                    xb[i] -= t * theta * w[i];
            if (leave == -1)
            {
                where[entering] =
                    where[entering] == Loc::Lower ? Loc::Upper : Loc::Lower;
            }
            else
            {
                const double pivot = w[leave];
                if (std::abs(pivot) < kPivotTol)
                    throw NumericalFailure("vanishing pivot element");
                xb[leave] = nonbasic_value(entering) + t * theta;
                where[basis[leave]] = leave_to;
                basis[leave] = entering;
                where[entering] = Loc::Basic;

                double* prow = &binv[leave * n_rows];
                for (long k = 0; k < n_rows; ++k)
                    prow[k] /= pivot;
                for (long i = 0; i < n_rows; ++i)
                {
                    if (i == leave || w[i] == 0.0)
                        continue;
                    double* row = &binv[i * n_rows];
                    const double f = w[i];
                    for (long k = 0; k < n_rows; ++k)
                        row[k] -= f * prow[k];
                }
                if (++since_refactor >= kRefactorEvery)
                {
                    refactorize();
                    since_refactor = 0;
                }
            }

            if (progress > 1e-12)
            {
                stall = 0;
                bland = false;
            }
            else if (++stall >= kStallLimit)
                bland = true;
        }
    }

    LpSolution extract()
    {
        refactorize();

        LpSolution solution;
        solution.status = LpStatus::Optimal;
        solution.values.assign(n_struct, 0.0);
        std::vector<double> full(n_total, 0.0);
        for (long j = 0; j < n_total; ++j)
            if (where[j] != Loc::Basic)
                full[j] = nonbasic_value(j);
        for (long i = 0; i < n_rows; ++i)
            full[basis[i]] = xb[i];

        for (long j = 0; j < n_total; ++j)
        {
            if (full[j] < lo[j] - kCertifyTol
                || (hi[j] != std::numeric_limits<double>::infinity()
                    && full[j] > hi[j] + kCertifyTol))
                throw NumericalFailure("bound violated in final solution");
        }
        std::vector<double> activity(n_rows, 0.0);
        for (long j = 0; j < n_total; ++j)
            if (full[j] != 0.0)
                for (const auto& [i, a] : col[j])
                    activity[i] += a * full[j];
        for (long i = 0; i < n_rows; ++i)
        {
            const double gap = activity[i] - rhs[i];
            if (row_sense_le[i] ? gap > kCertifyTol : std::abs(gap) > kCertifyTol)
                throw NumericalFailure("row violated in final solution");
        }

        double value = 0.0;
        for (long j = 0; j < n_struct; ++j)
        {
            solution.values[j] = std::clamp(full[j], lo[j], hi[j]);
            value += phase2_cost[j] * solution.values[j];
        }
        solution.objective_value = value;
        return solution;
    }

    std::vector<char> row_sense_le;
};

}  // namespace detail

inline LpSolution solve_lp(const LpModel& model)
{
    if (model.var_bounds.size() != model.objective.size())
        throw std::invalid_argument("solve_lp: bounds/objective size mismatch");

    if (model.rows.empty())
    {
        LpSolution solution;
        solution.status = LpStatus::Optimal;
        solution.values.resize(model.objective.size());
        double value = 0.0;
        for (std::size_t j = 0; j < model.objective.size(); ++j)
        {
            const auto [l, h] = model.var_bounds[j];
            if (!(l <= h))
                return {LpStatus::Infeasible, 0.0, {}};
            solution.values[j] = model.objective[j] >= 0.0 ? l : h;
            value += model.objective[j] * solution.values[j];
        }
        solution.objective_value = value;
        return solution;
    }

    detail::BoundedSimplex solver(model);
    return solver.run();
}

}  // namespace mstcc
