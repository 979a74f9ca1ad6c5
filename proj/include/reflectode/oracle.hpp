#pragma once

#include <functional>
#include <vector>

#include "reflectode/solver.hpp"

namespace reflectode {

// Oracle output on the symmetric grid t in [-T, T].
struct GridSolution {
    std::vector<double> t;
    std::vector<double> u;
    double lambda = 0.0;     // weight of the homogeneous run
    double utilde_t0 = 0.0;  // homogeneous run evaluated at t0 (the combination denominator)
};

// Independent validator: reduce to the coupled system in x(t)=u(t), y(t)=u(-t)
// for t >= 0 (x' = h(t) - a y - b x, y' = -h(-t) + a x + b y, x(0)=y(0)=u(0)),
// integrate with fixed-step RK4 (split at forcing breakpoints), run it once
// homogeneously (u(0)=1, h=0) and once with h (u(0)=0), then combine to meet
// u(t0) = c. Throws NonUniqueError when the homogeneous run vanishes at t0,
// InvalidInputError for singular forcings (unbounded h is not representable
// on a fixed grid).
GridSolution shooting_solve(const ProblemSpec& p, double T, double step);

struct CollocationResult {
    std::vector<double> t;
    std::vector<double> u;
    double condition = 0.0;  // LU-based estimate of the system's condition number
    double snapped_t0 = 0.0; // t0 after snapping onto the grid
};

// Second independent validator: central differences for u' on a symmetric
// (2m+1)-point grid; the reflection couples node i with node N-1-i; the row
// at (snapped) t0 carries the initial condition. Nonuniqueness is detected on
// the discrete homogeneous solution before the main solve. n_points must be
// odd and >= 11.
CollocationResult collocation_solve(const ProblemSpec& p, double T, int n_points);

struct ResidualSample {
    double value = 0.0;
    bool near_breakpoint = false; // stencil touches a breakpoint/singularity
};

// Pointwise residual u'(t) + a u(-t) + b u(t) - h(t) with central-difference
// u' at stencil width fd_step.
ResidualSample residual(const std::function<double(double)>& u, const ProblemSpec& p,
                        double t, double fd_step = 1e-5);

struct OracleResult {
    std::vector<double> grid;
    std::vector<double> oracle_u;
    std::vector<double> candidate_u;
    double sup_error = 0.0;
    double residual_sup = 0.0;
};

// Compare a candidate evaluator against an oracle grid: sup |oracle - cand|
// over the compared nodes, plus the candidate's residual sup over
// n_residual_points interior samples (skipping stencils that touch
// breakpoints). When the oracle grid exceeds max_points nodes it is strided
// down (endpoints kept) so candidate evaluation cost stays bounded; the
// returned grid/oracle_u/candidate_u arrays are the compared (strided) nodes.
OracleResult compare(const GridSolution& oracle, const std::function<double(double)>& cand,
                     const ProblemSpec& p, int n_residual_points = 33,
                     double fd_step = 1e-5, std::size_t max_points = 301);

} // namespace reflectode
