#pragma once

#include <optional>
#include <stdexcept>

#include "roe/operators.hpp"
#include "roe/space.hpp"

namespace roe {

struct HRParams {
  double R = kInf;
  double eps = kInf;
  double S = kInf;
};

/// A family x -> xi_x of sparse real vectors over the point set, aiming at
/// the slow-variation conditions: unit norm with values in [0,1], small
/// deviation at scale R, support inside the S-ball. Vectors may be defined on
/// a subset only (empty slot = undefined), as happens for net-supported
/// families.
class HRFamily {
 public:
  using Vec = kernels::SparseVec;  // sorted (index, value), nonzero values

  HRFamily(PointSet points, std::vector<Vec> xi, HRParams params);

  const PointSet& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const HRParams& params() const { return params_; }
  bool defined(std::size_t x) const { return !xi_[x].empty(); }
  const Vec& vec(std::size_t x) const { return xi_[x]; }
  const std::vector<Vec>& all() const { return xi_; }
  std::size_t defined_count() const;

  HRFamily with_params(HRParams params) const { return HRFamily(points_, xi_, params); }

 private:
  PointSet points_;
  std::vector<Vec> xi_;
  HRParams params_;
};

struct HRViolation {
  std::size_t x;
  std::string message;
};

struct HRReport {
  bool hr1_ok = true;
  std::vector<HRViolation> hr1_violations;
  double eps_star = 0.0;  // max deviation over defined pairs within R
  std::optional<std::pair<std::size_t, std::size_t>> eps_witness;
  double s_star = 0.0;    // max support radius over defined points
  std::optional<std::size_t> s_witness;
  double R = 0.0, eps = 0.0;
  bool pass = false;      // hr1_ok && eps_star < eps && s_star <= params.S
};

/// Verifies unit norms and value range, measures the exact deviation profile
/// at scale R and the minimal support radius, and compares them against eps
/// and the family's declared S.
HRReport hr_check(const HRFamily& xi, const ExtMetric& d, double R, double eps);

/// xi_x = |component(x)|^{-1/2} times the indicator of x's coarse component.
/// Deviations vanish at every scale; S is the largest component diameter.
HRFamily uniform_hr_family(const ExtMetric& d);

/// xi_x = normalized indicator of ball(x, S) intersected with the net. The
/// intersection is nonempty because the assigned net point is within l <= S.
HRFamily ball_averaging_family(const ExtMetric& d, const NetData& net, double S);

/// Transports a net-supported family along the net assignment:
/// eta_x = xi_{p(x)}. Shifts the declared parameters to (R - 2l, eps, S + l).
HRFamily net_transport(const HRFamily& xi_on_net, const NetData& net, double R, double eps,
                       double S);

/// Symmetric kernel with entries in [-1, 1]; Gram kernels of unit families
/// are positive semidefinite with unit diagonal.
class SchurKernel {
 public:
  SchurKernel(PointSet points, std::vector<double> values, bool from_unit_family);

  const PointSet& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double at(std::size_t x, std::size_t y) const { return values_[x * size() + y]; }
  const std::vector<double>& matrix() const { return values_; }
  bool from_unit_family() const { return from_unit_family_; }

 private:
  PointSet points_;
  std::vector<double> values_;
  bool from_unit_family_;
};

/// k(x,y) = <xi_x, xi_y>. Requires a fully defined family with valid unit
/// norms (throws std::invalid_argument otherwise). For real nonnegative unit
/// vectors, 1 - k(x,y) = ||xi_x - xi_y||^2 / 2 exactly.
SchurKernel gram_kernel(const HRFamily& xi, kernels::Exec exec = kernels::default_exec());

/// Entrywise product [k * T]_{xy} = k(x,y) T_{xy}. The support only shrinks,
/// so propagation never grows under any metric.
SparseOp schur_apply(const SchurKernel& k, const SparseOp& T);

/// The multiplier written as a sum of two-sided diagonal compressions:
/// one raw term phi_z per support point z with phi_z(x) = xi_x(z), greedily
/// grouped so that terms in a class have pairwise disjoint supports.
struct CPTerms {
  std::vector<std::size_t> zs;              // support points, ascending
  std::vector<kernels::SparseVec> phi;      // phi[i] lists (x, xi_x(z_i))
  std::vector<std::size_t> group_of;        // class index per raw term
  std::size_t group_count = 0;
  std::size_t coloring_bound = 0;           // max conflict degree + 1
};

CPTerms cp_decomposition(const HRFamily& xi, const ExtMetric& d, double S);

/// Sum of phi_z T phi_z computed term by term; the independent route for
/// checking against schur_apply(gram_kernel(xi), T).
SparseOp apply_cp(const CPTerms& terms, const SparseOp& T);

struct ConvergenceStage {
  double R = 0.0;
  double eps = 0.0;
  HRFamily family;
};

struct StageFailure : std::runtime_error {
  StageFailure(std::size_t stage_index, HRReport r)
      : std::runtime_error("convergence stage " + std::to_string(stage_index) +
                           " fails the family check"),
        stage(stage_index),
        report(std::move(r)) {}
  std::size_t stage;
  HRReport report;
};

/// ||M_k(T) - T|| per stage. Every family must pass hr_check at its (R, eps)
/// or the run aborts with the stage index.
std::vector<double> convergence_run(const ExtMetric& d, const SparseOp& T,
                                    const std::vector<ConvergenceStage>& schedule,
                                    double tol = 1e-10);

}  // namespace roe
