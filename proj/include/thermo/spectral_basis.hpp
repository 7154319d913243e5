// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact eigenbases on the rectangle [0, Lx] x [0, Ly].
//
// Scalars expand in the Neumann cosine modes
//   phi_kl = C_k(x) C_l(y),  C_k(x) = c_k cos(k pi x / Lx),
// vectors in the eigenmodes of -Laplacian with u.n = 0 and curl u = 0 on the
// boundary, split into
//   Gradient(k, l)   = grad phi_kl / sqrt(xi),            k + l >= 1,
//   Rotational(k, l) = (psi_y, -psi_x) / sqrt(xi),        k, l >= 1,
// where psi_kl = S_k(x) S_l(y) is the Dirichlet sine mode. All modes are
// orthonormal in L2 and share xi = (k pi / Lx)^2 + (l pi / Ly)^2.
//
// Coefficients are stored densely as (K+1) x (K+1) arrays indexed k * (K+1) + l.
// Slots that do not correspond to a mode (Gradient (0,0), Rotational with k = 0
// or l = 0) are held at zero.

#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace thermo {

struct DomainSpec {
  double lx = std::numbers::pi;
  double ly = std::numbers::pi;
  int cutoff = 16;   // K, maximal mode index per direction
  int grid_n = 48;   // collocation points per direction

  // Throws Error(InvalidArgument) on Lx, Ly <= 0, K < 1 or grid_n < 2K + 1.
  void validate() const;
  double area() const { return lx * ly; }
  bool operator==(const DomainSpec&) const = default;
};

struct ScalarMode {
  int k = 0;
  int l = 0;
  double xi = 0.0;
};

enum class VectorKind { Gradient, Rotational };

struct VectorMode {
  VectorKind kind = VectorKind::Gradient;
  int k = 0;
  int l = 0;
  double xi = 0.0;
};

// Sorted by (xi, k, l); includes the constant mode.
std::vector<ScalarMode> enumerate_scalar_modes(const DomainSpec& domain);
// Sorted by (xi, kind, k, l).
std::vector<VectorMode> enumerate_vector_modes(const DomainSpec& domain);

// Samples on the midpoint grid x_i = (i + 1/2) Lx / n, y_j = (j + 1/2) Ly / n,
// stored row-major with x as the slow index.
struct ScalarGrid {
  int n = 0;
  std::vector<double> values;

  ScalarGrid() = default;
  explicit ScalarGrid(int size) : n(size), values(static_cast<std::size_t>(size) * size, 0.0) {}
  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
};

struct VectorGrid {
  ScalarGrid x;
  ScalarGrid y;
};

// Cartesian second derivatives sampled on the grid.
struct HessianGrid {
  ScalarGrid xx;
  ScalarGrid xy;
  ScalarGrid yy;
};

enum class Parity { Cos, Sin };

class SpectralBasis;
using BasisPtr = std::shared_ptr<const SpectralBasis>;

// Precomputed 1-D mode tables for one domain. Immutable after construction.
class SpectralBasis {
 public:
  static BasisPtr create(const DomainSpec& domain);

  const DomainSpec& domain() const { return domain_; }
  int cutoff() const { return domain_.cutoff; }
  int grid_n() const { return domain_.grid_n; }
  std::size_t stride() const { return static_cast<std::size_t>(domain_.cutoff) + 1; }
  std::size_t coef_count() const { return stride() * stride(); }
  std::size_t index(int k, int l) const { return static_cast<std::size_t>(k) * stride() + l; }

  double wavenumber_x(int k) const { return k * std::numbers::pi / domain_.lx; }
  double wavenumber_y(int l) const { return l * std::numbers::pi / domain_.ly; }
  double xi(int k, int l) const;
  double min_nonzero_xi() const;

  double grid_x(int i) const { return (i + 0.5) * domain_.lx / domain_.grid_n; }
  double grid_y(int j) const { return (j + 0.5) * domain_.ly / domain_.grid_n; }

  // Normalized 1-D functions C_k / S_k evaluated anywhere.
  double eval_x(Parity p, int k, double x) const;
  double eval_y(Parity p, int l, double y) const;

  // L2 projection of samples onto the tensor family (px in x) x (py in y), by
  // midpoint quadrature. Exact for inputs bandlimited to 2 * grid_n - K - 1.
  std::vector<double> analyze(const ScalarGrid& grid, Parity px, Parity py) const;
  // Samples of sum_kl coef[k,l] P_k(x) P_l(y) on the grid.
  ScalarGrid synthesize(std::span<const double> coef, Parity px, Parity py) const;
  // Value of the same series at one point.
  double evaluate(std::span<const double> coef, Parity px, Parity py, double x, double y) const;

  // Midpoint-rule integral over the rectangle.
  double integrate(const ScalarGrid& grid) const;

 private:
  explicit SpectralBasis(const DomainSpec& domain);

  const std::vector<double>& table_x(Parity p) const { return p == Parity::Cos ? cos_x_ : sin_x_; }
  const std::vector<double>& table_y(Parity p) const { return p == Parity::Cos ? cos_y_ : sin_y_; }
  const std::vector<double>& table_x_t(Parity p) const {
    return p == Parity::Cos ? cos_x_t_ : sin_x_t_;
  }
  const std::vector<double>& weighted_y_t(Parity p) const {
    return p == Parity::Cos ? wcos_y_t_ : wsin_y_t_;
  }

  DomainSpec domain_;
  // (K+1) x n tables of mode values at grid points, and their transposes.
  std::vector<double> cos_x_, sin_x_, cos_y_, sin_y_;
  std::vector<double> cos_x_t_, sin_x_t_;
  // n x (K+1), scaled by the quadrature weight Ly / n.
  std::vector<double> wcos_y_t_, wsin_y_t_;
};

// Coefficients on the orthonormal Neumann modes phi_kl.
struct ScalarField {
  BasisPtr basis;
  std::vector<double> coef;

  static ScalarField zeros(BasisPtr basis);
  static ScalarField constant(BasisPtr basis, double value);

  double& at(int k, int l) { return coef[basis->index(k, l)]; }
  double at(int k, int l) const { return coef[basis->index(k, l)]; }
  ScalarGrid samples() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double factor);
};

// Coefficients on the Gradient and Rotational vector modes.
struct VectorField {
  BasisPtr basis;
  std::vector<double> grad;
  std::vector<double> rot;

  static VectorField zeros(BasisPtr basis);

  double& at(VectorKind kind, int k, int l) {
    return (kind == VectorKind::Gradient ? grad : rot)[basis->index(k, l)];
  }
  double at(VectorKind kind, int k, int l) const {
    return (kind == VectorKind::Gradient ? grad : rot)[basis->index(k, l)];
  }
  VectorGrid samples() const;

  VectorField& operator+=(const VectorField& other);
  VectorField& operator-=(const VectorField& other);
  VectorField& operator*=(double factor);
};

// Coefficients on the orthonormal Dirichlet modes psi_kl (the curl of a vector field).
struct StreamField {
  BasisPtr basis;
  std::vector<double> coef;

  ScalarGrid samples() const;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double factor, ScalarField a);
VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double factor, VectorField a);

// Grid <-> coefficients. forward() throws Error(DomainMismatch) when the sample
// count differs from the basis grid.
ScalarField forward(const BasisPtr& basis, const ScalarGrid& samples);
VectorField forward(const BasisPtr& basis, const VectorGrid& samples);
inline ScalarGrid inverse(const ScalarField& s) { return s.samples(); }
inline VectorGrid inverse(const VectorField& v) { return v.samples(); }

VectorField grad(const ScalarField& s);
ScalarField div(const VectorField& v);
StreamField curl(const VectorField& v);
// (psi_y, -psi_x): lifts a stream function onto the Rotational modes.
VectorField perp_grad(const StreamField& psi);
ScalarField laplacian(const ScalarField& s);

VectorGrid gradient_samples(const ScalarField& s);
HessianGrid hessian_samples(const ScalarField& s);

double l2_inner(const ScalarField& a, const ScalarField& b);
double l2_inner(const VectorField& a, const VectorField& b);
double l2_norm(const ScalarField& s);
double l2_norm(const VectorField& v);
// sqrt(||div v||^2 + ||curl v||^2) = sqrt(sum xi c^2).
double h_norm(const VectorField& v);

// w with -Laplacian w = f, mode by mode.
VectorField solve_vector_poisson(const VectorField& f);

struct BoundaryResidual {
  double normal = 0.0;   // max |v . n|
  double curl = 0.0;     // max |curl v|
  double neumann = 0.0;  // max |grad s . n|
};

// Evaluates the expansions at max(8K, 16) points per edge, corners included.
BoundaryResidual boundary_residual(const VectorField& v, const ScalarField& s);

// Same quantities estimated directly from grid samples by one-sided polynomial
// extrapolation to the edges; detects samples that are not in the basis span.
BoundaryResidual sampled_boundary_residual(const DomainSpec& domain, const VectorGrid& v,
                                           const ScalarGrid& s);

// Throws Error(DomainMismatch) unless both refer to the same domain.
void require_same_domain(const SpectralBasis& a, const SpectralBasis& b);

}  // namespace thermo
