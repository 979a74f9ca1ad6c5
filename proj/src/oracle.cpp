#include "reflectode/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "reflectode/analysis.hpp"

namespace reflectode {
namespace {

void check_oracle_problem(const ProblemSpec& p, double T) {
    if (!std::isfinite(p.t0) || !std::isfinite(p.c))
        throw InvalidInputError("oracle: t0 and c must be finite");
    if (!p.h.h) throw InvalidInputError("oracle: missing forcing evaluator");
    if (!(T > 0.0) || !std::isfinite(T))
        throw InvalidInputError("oracle: T must be positive and finite");
    if (std::abs(p.t0) > T)
        throw InvalidInputError("oracle: |t0| must not exceed T");
    if (!p.h.singular_points.empty())
        throw InvalidInputError("oracle: singular forcings are not supported on fixed grids");
}

[[noreturn]] void throw_nonunique(const ProblemSpec& p, double val) {
    std::ostringstream os;
    os << "nonunique problem: homogeneous oracle value " << val << " at t0 = " << p.t0
       << "; " << degenerate_t0(p.coeffs.a, p.coeffs.b).describe();
    throw NonUniqueError(os.str());
}

// State (xh, yh, xp, yp): homogeneous and particular runs of the coupled
// system, marched together on tau in [0, T].
struct State {
    double xh, yh, xp, yp;
};

struct Rhs {
    double a, b;
    const std::function<double(double)>* h;
    State operator()(double tau, const State& s) const {
        State d;
        d.xh = -a * s.yh - b * s.xh;
        d.yh = a * s.xh + b * s.yh;
        const double ht = (*h)(tau), hmt = (*h)(-tau);
        d.xp = ht - a * s.yp - b * s.xp;
        d.yp = -hmt + a * s.xp + b * s.yp;
        return d;
    }
};

State axpy(const State& s, double w, const State& d) {
    return {s.xh + w * d.xh, s.yh + w * d.yh, s.xp + w * d.xp, s.yp + w * d.yp};
}

void rk4_step(const Rhs& f, double tau, double dt, State& s) {
    const State k1 = f(tau, s);
    const State k2 = f(tau + 0.5 * dt, axpy(s, 0.5 * dt, k1));
    const State k3 = f(tau + 0.5 * dt, axpy(s, 0.5 * dt, k2));
    const State k4 = f(tau + dt, axpy(s, dt, k3));
    s.xh += dt / 6.0 * (k1.xh + 2.0 * k2.xh + 2.0 * k3.xh + k4.xh);
    s.yh += dt / 6.0 * (k1.yh + 2.0 * k2.yh + 2.0 * k3.yh + k4.yh);
    s.xp += dt / 6.0 * (k1.xp + 2.0 * k2.xp + 2.0 * k3.xp + k4.xp);
    s.yp += dt / 6.0 * (k1.yp + 2.0 * k2.yp + 2.0 * k3.yp + k4.yp);
}

// Advance over [tau0, tau1], substepping at the sorted split points inside.
void march(const Rhs& f, double tau0, double tau1, const std::vector<double>& splits,
           State& s) {
    double lo = tau0;
    const double eps = 1e-12 * (1.0 + std::abs(tau1));
    for (double c : splits) {
        if (c <= lo + eps) continue;
        if (c >= tau1 - eps) break;
        rk4_step(f, lo, c - lo, s);
        lo = c;
    }
    if (tau1 > lo) rk4_step(f, lo, tau1 - lo, s);
}

std::vector<double> split_points(const Forcing& h, double T) {
    std::vector<double> s;
    for (double b : h.breakpoints) {
        const double x = std::abs(b);
        if (x > 0.0 && x < T) s.push_back(x);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

} // namespace

GridSolution shooting_solve(const ProblemSpec& p, double T, double step) {
    check_oracle_problem(p, T);
    if (!(step > 0.0) || !std::isfinite(step))
        throw InvalidInputError("shooting_solve: step must be positive");
    const long long N = std::max(1ll, std::llround(T / step));
    const double hstep = T / static_cast<double>(N);
    const std::vector<double> splits = split_points(p.h, T);
    const Rhs f{p.coeffs.a, p.coeffs.b, &p.h.h};

    std::vector<State> nodes(static_cast<std::size_t>(N) + 1);
    State s{1.0, 1.0, 0.0, 0.0};
    nodes[0] = s;
    for (long long k = 0; k < N; ++k) {
        march(f, k * hstep, (k + 1) * hstep, splits, s);
        nodes[static_cast<std::size_t>(k + 1)] = s;
    }

    // Evaluate both runs at t0 by a dedicated march over [0, |t0|].
    const double tau0 = std::abs(p.t0);
    State st0{1.0, 1.0, 0.0, 0.0};
    if (tau0 > 0.0) {
        const long long M = std::max(1ll, std::llround(std::ceil(tau0 / hstep)));
        const double dt0 = tau0 / static_cast<double>(M);
        for (long long k = 0; k < M; ++k)
            march(f, k * dt0, (k + 1) * dt0, splits, st0);
    }
    const double ut0 = p.t0 >= 0.0 ? st0.xh : st0.yh;
    const double pt0 = p.t0 >= 0.0 ? st0.xp : st0.yp;
    if (std::abs(ut0) <= kUniquenessTol * (1.0 + std::abs(p.t0)))
        throw_nonunique(p, ut0);
    const double lambda = (p.c - pt0) / ut0;

    GridSolution out;
    out.lambda = lambda;
    out.utilde_t0 = ut0;
    out.t.resize(2 * static_cast<std::size_t>(N) + 1);
    out.u.resize(out.t.size());
    for (long long i = -N; i <= N; ++i) {
        const std::size_t idx = static_cast<std::size_t>(i + N);
        out.t[idx] = static_cast<double>(i) * hstep;
        const State& nd = nodes[static_cast<std::size_t>(std::llabs(i))];
        out.u[idx] = i >= 0 ? nd.xp + lambda * nd.xh : nd.yp + lambda * nd.yh;
    }
    return out;
}

CollocationResult collocation_solve(const ProblemSpec& p, double T, int n_points) {
    check_oracle_problem(p, T);
    if (n_points < 11 || n_points % 2 == 0)
        throw InvalidInputError("collocation_solve: n_points must be odd and >= 11");
    const int N = n_points;
    const double dt = 2.0 * T / (N - 1);
    const double a = p.coeffs.a, b = p.coeffs.b;
    std::vector<double> grid(N);
    for (int i = 0; i < N; ++i) grid[i] = -T + dt * i;
    const int ic = (N - 1) / 2; // t = 0
    int i0 = static_cast<int>(std::llround((p.t0 + T) / dt));
    i0 = std::clamp(i0, 0, N - 1);

    // System rows: central differences inside, one-sided second-order at the
    // ends; reflection couples node i with node N-1-i.
    auto fill = [&](Eigen::MatrixXd& A, Eigen::VectorXd& r, int ic_row, double ic_val,
                    bool homogeneous) {
        A.setZero();
        r.setZero();
        for (int i = 0; i < N; ++i) {
            if (i == ic_row) {
                A(i, i) = 1.0;
                r(i) = ic_val;
                continue;
            }
            if (i == 0) {
                A(i, 0) += -3.0 / (2.0 * dt);
                A(i, 1) += 4.0 / (2.0 * dt);
                A(i, 2) += -1.0 / (2.0 * dt);
            } else if (i == N - 1) {
                A(i, N - 1) += 3.0 / (2.0 * dt);
                A(i, N - 2) += -4.0 / (2.0 * dt);
                A(i, N - 3) += 1.0 / (2.0 * dt);
            } else {
                A(i, i + 1) += 1.0 / (2.0 * dt);
                A(i, i - 1) += -1.0 / (2.0 * dt);
            }
            A(i, N - 1 - i) += a;
            A(i, i) += b;
            r(i) = homogeneous ? 0.0 : p.h(grid[i]);
        }
    };

    Eigen::MatrixXd A(N, N);
    Eigen::VectorXd r(N);

    // Discrete homogeneous utilde: IC u(0) = 1 at the center node.
    fill(A, r, ic, 1.0, true);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_h(A);
    Eigen::VectorXd ut = lu_h.solve(r);
    if (!ut.allFinite()) throw_nonunique(p, std::numeric_limits<double>::quiet_NaN());
    const double v0 = ut(i0);
    double slope;
    if (i0 == 0)
        slope = (ut(1) - ut(0)) / dt;
    else if (i0 == N - 1)
        slope = (ut(N - 1) - ut(N - 2)) / dt;
    else
        slope = (ut(i0 + 1) - ut(i0 - 1)) / (2.0 * dt);
    const double scale = ut.cwiseAbs().maxCoeff();
    const double thresh =
        0.75 * dt * std::max(std::abs(slope), 1e-3) + 1e-9 * (1.0 + scale);
    if (std::abs(v0) <= thresh) throw_nonunique(p, v0);

    fill(A, r, i0, p.c, false);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    Eigen::VectorXd u = lu.solve(r);
    if (!u.allFinite()) throw_nonunique(p, v0);

    CollocationResult out;
    out.t = grid;
    out.u.assign(u.data(), u.data() + N);
    const double rc = lu.rcond();
    out.condition = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    out.snapped_t0 = grid[i0];
    return out;
}

ResidualSample residual(const std::function<double(double)>& u, const ProblemSpec& p,
                        double t, double fd_step) {
    if (!u) throw InvalidInputError("residual: null evaluator");
    if (!(fd_step > 0.0)) throw InvalidInputError("residual: fd_step must be positive");
    ResidualSample out;
    const double du = (u(t + fd_step) - u(t - fd_step)) / (2.0 * fd_step);
    out.value = du + p.coeffs.a * u(-t) + p.coeffs.b * u(t) - p.h(t);
    auto near_any = [&](double x) {
        for (double q : p.h.breakpoints)
            if (std::abs(x - q) <= 2.0 * fd_step) return true;
        for (double q : p.h.singular_points)
            if (std::abs(x - q) <= 2.0 * fd_step) return true;
        return false;
    };
    out.near_breakpoint = near_any(t) || near_any(-t);
    return out;
}

OracleResult compare(const GridSolution& oracle, const std::function<double(double)>& cand,
                     const ProblemSpec& p, int n_residual_points, double fd_step,
                     std::size_t max_points) {
    if (oracle.t.empty()) throw InvalidInputError("compare: empty oracle grid");
    if (!cand) throw InvalidInputError("compare: null candidate");
    if (max_points < 2) max_points = 2;
    const std::size_t n = oracle.t.size();
    const std::size_t stride = n <= max_points ? 1 : (n + max_points - 1) / max_points;
    OracleResult out;
    for (std::size_t i = 0; i < n; i += stride) {
        out.grid.push_back(oracle.t[i]);
        out.oracle_u.push_back(oracle.u[i]);
    }
    if (out.grid.back() != oracle.t.back()) {
        out.grid.push_back(oracle.t.back());
        out.oracle_u.push_back(oracle.u.back());
    }
    out.candidate_u.resize(out.grid.size());
    for (std::size_t i = 0; i < out.grid.size(); ++i) {
        out.candidate_u[i] = cand(out.grid[i]);
        out.sup_error = std::max(out.sup_error,
                                 std::abs(out.candidate_u[i] - out.oracle_u[i]));
    }
    const double lo = oracle.t.front(), hi = oracle.t.back();
    for (int j = 0; j < n_residual_points; ++j) {
        const double t = lo + (hi - lo) * (j + 0.5) / n_residual_points;
        const ResidualSample r = residual(cand, p, t, fd_step);
        if (r.near_breakpoint) continue;
        out.residual_sup = std::max(out.residual_sup, std::abs(r.value));
    }
    return out;
}

} // namespace reflectode
