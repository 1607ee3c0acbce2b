#pragma once

#include <optional>

#include "roe/operators.hpp"

namespace roe {

/// A map f between two point sets, optionally with a coarse inverse g and a
/// closeness bound C for both compositions.
struct CoarseMapData {
  PointSet X, Y;
  std::vector<std::size_t> f;                  // total, X index -> Y index
  std::optional<std::vector<std::size_t>> g;   // total when present
  std::optional<double> C;
  bool claims_surjective = false;
};

/// S(R) = max d_to(f(x), f(x')) over pairs with d_from(x, x') <= R, at every
/// distinct finite value of d_from. inf values are reported, not hidden.
struct ExpansionProfile {
  std::vector<double> breakpoints;
  std::vector<double> bounds;
  bool all_finite = true;

  /// Bound at radius r (0 when r is below every breakpoint).
  double bound_at(double r) const;
};

ExpansionProfile expansion_profile(const std::vector<std::size_t>& map, const ExtMetric& d_from,
                                   const ExtMetric& d_to);

/// max d_to(f(y), f(y')) over d_from(y, y') <= R for one radius.
double expansion_at(const std::vector<std::size_t>& map, const ExtMetric& d_from,
                    const ExtMetric& d_to, double R);

struct CoarseWitness {
  std::string rule;
  std::string message;
};

struct CoarseReport {
  bool pass = false;
  std::vector<CoarseWitness> witnesses;
  ExpansionProfile rho_f, rho_g;
  double C_gf = 0.0;  // max d_X(g(f(x)), x)
  double C_fg = 0.0;  // max d_Y(f(g(y)), y)
};

/// Verifies both expansion profiles are finite at finite breakpoints, the
/// closeness bound in both directions (against data.C when supplied,
/// otherwise reporting the minimal bounds), and surjectivity when claimed.
/// Requires g (throws std::invalid_argument without it).
CoarseReport check_coarse_equivalence(const CoarseMapData& data, const ExtMetric& dX,
                                      const ExtMetric& dY);

struct BGBoundRow {
  std::size_t x;
  std::size_t lhs;  // |B(f(x), R) ∩ f(A)|
  std::size_t rhs;  // |B(x, rho_g(R) + 2C) ∩ A|
};

struct BGBoundReport {
  bool pass = false;
  double rho_g_at_R = 0.0;
  double transfer_radius = 0.0;  // rho_g(R) + 2C
  std::vector<BGBoundRow> rows;  // one per point of A
  std::vector<CoarseWitness> witnesses;
};

/// The bounded-geometry transfer inequality for the image of A: counts both
/// sides per point of A at radius R. Preconditions (equivalence passes, f
/// surjective) are reported as witnesses, not thrown.
BGBoundReport image_bg_bound(const CoarseMapData& data, std::span<const std::size_t> A,
                             const ExtMetric& dX, const ExtMetric& dY, double R);

/// First preimage in point order for each y in B. Throws when some y has
/// none.
std::vector<std::size_t> choose_section(const CoarseMapData& data,
                                        std::span<const std::size_t> B);

/// Replaces Y by the image of f; returns the shrunk data plus the dropped
/// Y-points. The image keeps Y's declared order.
struct SurjectiveReduction {
  CoarseMapData data;
  std::vector<std::size_t> image;    // Y indices kept, ascending
  std::vector<std::size_t> dropped;  // Y indices removed, ascending
};

SurjectiveReduction restrict_to_image(const CoarseMapData& data);

/// Fiber bookkeeping over a subset A: N(y) = |f^{-1}(y) ∩ A| and the
/// order-based position pi(x) inside its fiber.
struct MoritaIndex {
  PointSet X, Y;
  std::vector<std::size_t> f;
  std::vector<std::size_t> A;                    // ascending
  std::vector<std::size_t> fiber_count;          // by Y index; 0 off the image
  std::vector<std::size_t> pi;                   // by X index; valid on A
  std::vector<std::vector<std::size_t>> fibers;  // by Y index, each ascending
  std::size_t max_fiber = 0;

  bool in_A(std::size_t x) const;
};

MoritaIndex morita_index(const CoarseMapData& data, std::span<const std::size_t> A);

/// phi_A(x, j) = (f(x), pi(x) + j * N(f(x))). Throws when x is outside A.
std::pair<std::size_t, std::size_t> morita_forward(const MoritaIndex& idx, std::size_t x,
                                                   std::size_t j);

/// Inverse by Euclidean division: j = m / N(y), x = the fiber point with
/// pi(x) = m mod N(y). Throws when y is off the image of A.
std::pair<std::size_t, std::size_t> morita_inverse(const MoritaIndex& idx, std::size_t y,
                                                   std::size_t m);

/// Point set for a window subset x range {0..J-1}: ids "x#j", x-major in
/// subset order.
PointSet window_points(const PointSet& base, std::span<const std::size_t> subset, std::size_t J);

struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Conjugation by the 0/1 operator delta_(x,j) -> delta_phi(x,j): relabels a
/// window operator over A x {0..J-1} to one over f(A) x {0..out_window-1}.
/// The default output window J * max N always fits; a smaller explicit window
/// raises WindowError when an image index leaves it.
SparseOp induced_conjugation(const MoritaIndex& idx, const SparseOp& T, std::size_t J,
                             std::optional<std::size_t> out_window = std::nullopt);

}  // namespace roe
