#include <airs/simplex.hpp>

#include <cmath>
#include <limits>

namespace airs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;  // pricing and pivot tolerance
constexpr double kFeas = 1e-7; // phase-one feasibility tolerance

} // namespace

LpResult solve_relaxation(const MilpModel& model, const std::vector<double>& lower,
                          const std::vector<double>& upper, int iteration_limit) {
    const int ns = (int)model.vars.size();
    const int m = (int)model.constraints.size();
    LpResult res;

    // residuals with every structural variable parked at its lower bound
    std::vector<double> resid(m);
    for (int i = 0; i < m; ++i) {
        double r = model.constraints[i].rhs;
        for (const LinTerm& t : model.constraints[i].terms) r -= t.coef * lower[t.var];
        resid[i] = r;
    }

    // columns: structurals, slacks on <= rows, artificials where the start
    // point misses the row
    int n = ns;
    std::vector<int> slack_col(m, -1), art_col(m, -1);
    for (int i = 0; i < m; ++i)
        if (!model.constraints[i].equality) slack_col[i] = n++;
    int first_art = n;
    for (int i = 0; i < m; ++i)
        if (model.constraints[i].equality || resid[i] < 0) art_col[i] = n++;

    std::vector<double> lo(n, 0.0), up(n, kInf);
    for (int j = 0; j < ns; ++j) {
        lo[j] = lower[j];
        up[j] = upper[j];
    }

    std::vector<double> w((size_t)m * n, 0.0), y(m), d(n, 0.0);
    auto W = [&](int i, int j) -> double& { return w[(size_t)i * n + j]; };
    std::vector<int> basis(m, -1);
    std::vector<char> basic(n, 0), at_up(n, 0);

    for (int i = 0; i < m; ++i) {
        double s = resid[i] < 0 ? -1.0 : 1.0;
        for (const LinTerm& t : model.constraints[i].terms) W(i, t.var) += s * t.coef;
        if (slack_col[i] >= 0) W(i, slack_col[i]) = s;
        if (art_col[i] >= 0) W(i, art_col[i]) = 1.0;
        y[i] = std::fabs(resid[i]);
        basis[i] = art_col[i] >= 0 ? art_col[i] : slack_col[i];
        basic[basis[i]] = 1;
    }

    if (iteration_limit <= 0) iteration_limit = 100 * (m + n) + 10000;

    // current value of column j
    auto val = [&](int j, int row_of) -> double {
        if (basic[j]) return y[row_of];
        return at_up[j] ? up[j] : lo[j];
    };
    std::vector<int> row_of(n, -1);
    auto sync_rows = [&] {
        std::fill(row_of.begin(), row_of.end(), -1);
        for (int i = 0; i < m; ++i) row_of[basis[i]] = i;
    };
    sync_rows();

    auto objective_of = [&](const std::vector<double>& c) {
        double o = 0;
        for (int j = 0; j < n; ++j)
            if (c[j] != 0.0) o += c[j] * val(j, row_of[j]);
        return o;
    };

    auto init_reduced = [&](const std::vector<double>& c) {
        d = c;
        for (int i = 0; i < m; ++i) {
            double cb = c[basis[i]];
            if (cb == 0.0) continue;
            for (int j = 0; j < n; ++j) d[j] -= cb * W(i, j);
        }
    };

    // returns false on iteration exhaustion; *unbounded set when detected
    auto iterate = [&](const std::vector<double>& c, bool* unbounded) {
        *unbounded = false;
        init_reduced(c);
        bool bland = false;
        int stall = 0;
        double prev = kInf;
        for (;;) {
            if (res.iterations >= iteration_limit) return false;
            ++res.iterations;
            int je = -1;
            double best = -kEps;
            for (int j = 0; j < n; ++j) {
                if (basic[j] || up[j] - lo[j] <= kEps) continue;
                double eff = at_up[j] ? -d[j] : d[j];
                if (eff < (bland ? -kEps : best)) {
                    je = j;
                    best = eff;
                    if (bland) break;
                }
            }
            if (je < 0) return true;
            double s = at_up[je] ? -1.0 : 1.0;

            double tbest = up[je] - lo[je];
            int rlv = -1, hit = 0;
            for (int i = 0; i < m; ++i) {
                double a = s * W(i, je);
                int bi = basis[i];
                if (a > kEps) {
                    double t = (y[i] - lo[bi]) / a;
                    if (t < tbest - kEps || (t < tbest + kEps && rlv >= 0 && bi < basis[rlv])) {
                        tbest = t;
                        rlv = i;
                        hit = -1;
                    }
                } else if (a < -kEps && up[bi] < kInf) {
                    double t = (up[bi] - y[i]) / (-a);
                    if (t < tbest - kEps || (t < tbest + kEps && rlv >= 0 && bi < basis[rlv])) {
                        tbest = t;
                        rlv = i;
                        hit = 1;
                    }
                }
            }
            if (rlv < 0 && up[je] >= kInf) {
                *unbounded = true;
                return true;
            }
            if (tbest < 0) tbest = 0;

            if (rlv < 0) { // runs to its other bound, basis unchanged
                for (int i = 0; i < m; ++i) y[i] -= s * W(i, je) * tbest;
                at_up[je] ^= 1;
            } else {
                double enter_val = (at_up[je] ? up[je] : lo[je]) + s * tbest;
                for (int i = 0; i < m; ++i)
                    if (i != rlv) y[i] -= s * W(i, je) * tbest;
                y[rlv] = enter_val;

                int leave = basis[rlv];
                double inv = 1.0 / W(rlv, je);
                for (int j = 0; j < n; ++j) W(rlv, j) *= inv;
                for (int i = 0; i < m; ++i) {
                    if (i == rlv) continue;
                    double f = W(i, je);
                    if (f == 0.0) continue;
                    for (int j = 0; j < n; ++j) W(i, j) -= f * W(rlv, j);
                }
                double fd = d[je];
                if (fd != 0.0)
                    for (int j = 0; j < n; ++j) d[j] -= fd * W(rlv, j);
                d[je] = 0.0;
                basic[leave] = 0;
                at_up[leave] = hit > 0;
                if (leave >= first_art) { // an artificial never comes back
                    up[leave] = 0.0;
                    at_up[leave] = 0;
                }
                basic[je] = 1;
                basis[rlv] = je;
                row_of[leave] = -1;
                row_of[je] = rlv;
            }

            double obj = objective_of(c);
            if (obj < prev - 1e-10) {
                prev = obj;
                stall = 0;
            } else if (++stall > 2 * (m + n)) {
                bland = true;
            }
        }
    };

    bool unbounded = false;
    if (first_art < n) {
        std::vector<double> c1(n, 0.0);
        for (int j = first_art; j < n; ++j) c1[j] = 1.0;
        if (!iterate(c1, &unbounded)) {
            res.status = LpStatus::IterationLimit;
            return res;
        }
        if (objective_of(c1) > kFeas) {
            res.status = LpStatus::Infeasible;
            return res;
        }
        for (int j = first_art; j < n; ++j) up[j] = 0.0; // never again
    }

    std::vector<double> c2(n, 0.0);
    for (int j = 0; j < ns; ++j) c2[j] = model.vars[j].cost;
    if (!iterate(c2, &unbounded)) {
        res.status = LpStatus::IterationLimit;
        return res;
    }
    if (unbounded) {
        res.status = LpStatus::Unbounded;
        return res;
    }

    res.x.resize(ns);
    for (int j = 0; j < ns; ++j) {
        double v = val(j, row_of[j]);
        if (v < lower[j]) v = lower[j];
        if (v > upper[j]) v = upper[j];
        res.x[j] = v;
    }
    res.objective = 0;
    for (int j = 0; j < ns; ++j) res.objective += model.vars[j].cost * res.x[j];
    res.status = LpStatus::Optimal;
    return res;
}

} // namespace airs
