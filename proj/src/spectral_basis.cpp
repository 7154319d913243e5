// SPDX-License-Identifier: Apache-2.0
#include "thermo/spectral_basis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <tuple>

#include "thermo/error.hpp"
#include "thermo/simd.hpp"

namespace thermo {

void DomainSpec::validate() const {
  if (!(lx > 0.0) || !(ly > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "domain lengths must be positive");
  }
  if (cutoff < 1) throw Error(ErrorKind::InvalidArgument, "cutoff K must be at least 1");
  if (grid_n < 2 * cutoff + 1) {
    throw Error(ErrorKind::InvalidArgument,
                "grid_n must be at least 2K+1 (got grid_n=" + std::to_string(grid_n) +
                    ", K=" + std::to_string(cutoff) + ")");
  }
}

namespace {

double mode_xi(const DomainSpec& d, int k, int l) {
  const double a = k * std::numbers::pi / d.lx;
  const double b = l * std::numbers::pi / d.ly;
  return a * a + b * b;
}

double basis_value(Parity p, int k, double length, double x) {
  const double arg = k * std::numbers::pi * x / length;
  if (p == Parity::Sin) return k == 0 ? 0.0 : std::sqrt(2.0 / length) * std::sin(arg);
  return k == 0 ? 1.0 / std::sqrt(length) : std::sqrt(2.0 / length) * std::cos(arg);
}

}  // namespace

std::vector<ScalarMode> enumerate_scalar_modes(const DomainSpec& domain) {
  domain.validate();
  std::vector<ScalarMode> modes;
  for (int k = 0; k <= domain.cutoff; ++k) {
    for (int l = 0; l <= domain.cutoff; ++l) modes.push_back({k, l, mode_xi(domain, k, l)});
  }
  std::stable_sort(modes.begin(), modes.end(), [](const ScalarMode& a, const ScalarMode& b) {
    return std::tie(a.xi, a.k, a.l) < std::tie(b.xi, b.k, b.l);
  });
  return modes;
}

std::vector<VectorMode> enumerate_vector_modes(const DomainSpec& domain) {
  domain.validate();
  std::vector<VectorMode> modes;
  for (int k = 0; k <= domain.cutoff; ++k) {
    for (int l = 0; l <= domain.cutoff; ++l) {
      const double xi = mode_xi(domain, k, l);
      if (k + l >= 1) modes.push_back({VectorKind::Gradient, k, l, xi});
      if (k >= 1 && l >= 1) modes.push_back({VectorKind::Rotational, k, l, xi});
    }
  }
  std::stable_sort(modes.begin(), modes.end(), [](const VectorMode& a, const VectorMode& b) {
    return std::tie(a.xi, a.kind, a.k, a.l) < std::tie(b.xi, b.kind, b.k, b.l);
  });
  return modes;
}

BasisPtr SpectralBasis::create(const DomainSpec& domain) {
  domain.validate();
  return BasisPtr(new SpectralBasis(domain));
}

SpectralBasis::SpectralBasis(const DomainSpec& domain) : domain_(domain) {
  const std::size_t m = stride();
  const std::size_t n = static_cast<std::size_t>(domain.grid_n);
  auto fill = [&](std::vector<double>& table, Parity p, double length, bool along_x) {
    table.assign(m * n, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        const double x = along_x ? grid_x(static_cast<int>(i)) : grid_y(static_cast<int>(i));
        table[k * n + i] = basis_value(p, static_cast<int>(k), length, x);
      }
    }
  };
  fill(cos_x_, Parity::Cos, domain.lx, true);
  fill(sin_x_, Parity::Sin, domain.lx, true);
  fill(cos_y_, Parity::Cos, domain.ly, false);
  fill(sin_y_, Parity::Sin, domain.ly, false);

  auto transpose = [&](const std::vector<double>& table, double scale) {
    std::vector<double> out(m * n);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < n; ++i) out[i * m + k] = scale * table[k * n + i];
    }
    return out;
  };
  cos_x_t_ = transpose(cos_x_, 1.0);
  sin_x_t_ = transpose(sin_x_, 1.0);
  const double wy = domain.ly / domain.grid_n;
  wcos_y_t_ = transpose(cos_y_, wy);
  wsin_y_t_ = transpose(sin_y_, wy);
}

double SpectralBasis::xi(int k, int l) const { return mode_xi(domain_, k, l); }

double SpectralBasis::min_nonzero_xi() const {
  return std::min(mode_xi(domain_, 1, 0), mode_xi(domain_, 0, 1));
}

double SpectralBasis::eval_x(Parity p, int k, double x) const {
  return basis_value(p, k, domain_.lx, x);
}

double SpectralBasis::eval_y(Parity p, int l, double y) const {
  return basis_value(p, l, domain_.ly, y);
}

std::vector<double> SpectralBasis::analyze(const ScalarGrid& grid, Parity px, Parity py) const {
  const auto& kern = simd::active();
  const std::size_t m = stride();
  const std::size_t n = static_cast<std::size_t>(domain_.grid_n);
  if (grid.n != domain_.grid_n || grid.values.size() != n * n) {
    throw Error(ErrorKind::DomainMismatch, "sample grid size does not match the domain");
  }
  const double wx = domain_.lx / domain_.grid_n;
  const auto& tx = table_x(px);
  // partial[k][j] = wx * sum_i P_k(x_i) f(x_i, y_j)
  std::vector<double> partial(m * n, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    double* row = partial.data() + k * n;
    for (std::size_t i = 0; i < n; ++i) {
      kern.axpy(n, wx * tx[k * n + i], grid.values.data() + i * n, row);
    }
  }
  const auto& wyt = weighted_y_t(py);
  std::vector<double> coef(m * m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    double* out = coef.data() + k * m;
    for (std::size_t j = 0; j < n; ++j) kern.axpy(m, partial[k * n + j], wyt.data() + j * m, out);
  }
  return coef;
}

ScalarGrid SpectralBasis::synthesize(std::span<const double> coef, Parity px, Parity py) const {
  const auto& kern = simd::active();
  const std::size_t m = stride();
  const std::size_t n = static_cast<std::size_t>(domain_.grid_n);
  const auto& ty = table_y(py);
  // partial[k][j] = sum_l coef[k][l] P_l(y_j)
  std::vector<double> partial(m * n, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    double* row = partial.data() + k * n;
    for (std::size_t l = 0; l < m; ++l) {
      const double c = coef[k * m + l];
      if (c != 0.0) kern.axpy(n, c, ty.data() + l * n, row);
    }
  }
  const auto& txt = table_x_t(px);
  ScalarGrid grid(domain_.grid_n);
  for (std::size_t i = 0; i < n; ++i) {
    double* out = grid.values.data() + i * n;
    for (std::size_t k = 0; k < m; ++k) kern.axpy(n, txt[i * m + k], partial.data() + k * n, out);
  }
  return grid;
}

double SpectralBasis::evaluate(std::span<const double> coef, Parity px, Parity py, double x,
                               double y) const {
  const int m = static_cast<int>(stride());
  std::vector<double> bx(m), by(m);
  for (int k = 0; k < m; ++k) {
    bx[k] = eval_x(px, k, x);
    by[k] = eval_y(py, k, y);
  }
  double total = 0.0;
  for (int k = 0; k < m; ++k) {
    double row = 0.0;
    for (int l = 0; l < m; ++l) row += coef[static_cast<std::size_t>(k) * m + l] * by[l];
    total += bx[k] * row;
  }
  return total;
}

double SpectralBasis::integrate(const ScalarGrid& grid) const {
  const double w = (domain_.lx / domain_.grid_n) * (domain_.ly / domain_.grid_n);
  return w * simd::active().sum(grid.values.size(), grid.values.data());
}

void require_same_domain(const SpectralBasis& a, const SpectralBasis& b) {
  if (&a != &b && !(a.domain() == b.domain())) {
    throw Error(ErrorKind::DomainMismatch, "fields live on different domains");
  }
}

// --- fields ---------------------------------------------------------------

ScalarField ScalarField::zeros(BasisPtr basis) {
  const std::size_t count = basis->coef_count();
  return ScalarField{std::move(basis), std::vector<double>(count, 0.0)};
}

ScalarField ScalarField::constant(BasisPtr basis, double value) {
  ScalarField s = zeros(std::move(basis));
  s.at(0, 0) = value * std::sqrt(s.basis->domain().area());
  return s;
}

ScalarGrid ScalarField::samples() const { return basis->synthesize(coef, Parity::Cos, Parity::Cos); }

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_domain(*basis, *other.basis);
  simd::active().axpy(coef.size(), 1.0, other.coef.data(), coef.data());
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_domain(*basis, *other.basis);
  simd::active().axpy(coef.size(), -1.0, other.coef.data(), coef.data());
  return *this;
}

ScalarField& ScalarField::operator*=(double factor) {
  for (double& c : coef) c *= factor;
  return *this;
}

VectorField VectorField::zeros(BasisPtr basis) {
  const std::size_t count = basis->coef_count();
  return VectorField{std::move(basis), std::vector<double>(count, 0.0),
                     std::vector<double>(count, 0.0)};
}

namespace {

// Per-(k, l) rotation between (Gradient, Rotational) coefficients and the
// Cartesian component coefficients on S_k C_l (x) and C_k S_l (y).
struct ModeFrame {
  double gx, rx, gy, ry;
};

ModeFrame mode_frame(const SpectralBasis& b, int k, int l) {
  const double kx = b.wavenumber_x(k);
  const double ly = b.wavenumber_y(l);
  const double root = std::sqrt(kx * kx + ly * ly);
  return {-kx / root, ly / root, -ly / root, -kx / root};
}

}  // namespace

VectorGrid VectorField::samples() const {
  const int m = static_cast<int>(basis->stride());
  std::vector<double> ax(basis->coef_count(), 0.0), ay(basis->coef_count(), 0.0);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      if (k == 0 && l == 0) continue;
      const std::size_t idx = basis->index(k, l);
      const ModeFrame f = mode_frame(*basis, k, l);
      ax[idx] = f.gx * grad[idx] + f.rx * rot[idx];
      ay[idx] = f.gy * grad[idx] + f.ry * rot[idx];
    }
  }
  return {basis->synthesize(ax, Parity::Sin, Parity::Cos),
          basis->synthesize(ay, Parity::Cos, Parity::Sin)};
}

VectorField& VectorField::operator+=(const VectorField& other) {
  require_same_domain(*basis, *other.basis);
  simd::active().axpy(grad.size(), 1.0, other.grad.data(), grad.data());
  simd::active().axpy(rot.size(), 1.0, other.rot.data(), rot.data());
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
  require_same_domain(*basis, *other.basis);
  simd::active().axpy(grad.size(), -1.0, other.grad.data(), grad.data());
  simd::active().axpy(rot.size(), -1.0, other.rot.data(), rot.data());
  return *this;
}

VectorField& VectorField::operator*=(double factor) {
  for (double& c : grad) c *= factor;
  for (double& c : rot) c *= factor;
  return *this;
}

ScalarGrid StreamField::samples() const { return basis->synthesize(coef, Parity::Sin, Parity::Sin); }

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double factor, ScalarField a) { return a *= factor; }
VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double factor, VectorField a) { return a *= factor; }

ScalarField forward(const BasisPtr& basis, const ScalarGrid& samples) {
  return ScalarField{basis, basis->analyze(samples, Parity::Cos, Parity::Cos)};
}

VectorField forward(const BasisPtr& basis, const VectorGrid& samples) {
  const std::vector<double> ax = basis->analyze(samples.x, Parity::Sin, Parity::Cos);
  const std::vector<double> ay = basis->analyze(samples.y, Parity::Cos, Parity::Sin);
  VectorField v = VectorField::zeros(basis);
  const int m = static_cast<int>(basis->stride());
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      if (k == 0 && l == 0) continue;
      const std::size_t idx = basis->index(k, l);
      const ModeFrame f = mode_frame(*basis, k, l);
      v.grad[idx] = f.gx * ax[idx] + f.gy * ay[idx];
      if (k >= 1 && l >= 1) v.rot[idx] = f.rx * ax[idx] + f.ry * ay[idx];
    }
  }
  return v;
}

VectorField grad(const ScalarField& s) {
  VectorField v = VectorField::zeros(s.basis);
  const int m = static_cast<int>(s.basis->stride());
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      if (k == 0 && l == 0) continue;
      const std::size_t idx = s.basis->index(k, l);
      v.grad[idx] = std::sqrt(s.basis->xi(k, l)) * s.coef[idx];
    }
  }
  return v;
}

ScalarField div(const VectorField& v) {
  ScalarField s = ScalarField::zeros(v.basis);
  const int m = static_cast<int>(v.basis->stride());
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const std::size_t idx = v.basis->index(k, l);
      s.coef[idx] = -std::sqrt(v.basis->xi(k, l)) * v.grad[idx];
    }
  }
  return s;
}

StreamField curl(const VectorField& v) {
  StreamField psi{v.basis, std::vector<double>(v.basis->coef_count(), 0.0)};
  const int m = static_cast<int>(v.basis->stride());
  for (int k = 1; k < m; ++k) {
    for (int l = 1; l < m; ++l) {
      const std::size_t idx = v.basis->index(k, l);
      psi.coef[idx] = std::sqrt(v.basis->xi(k, l)) * v.rot[idx];
    }
  }
  return psi;
}

VectorField perp_grad(const StreamField& psi) {
  VectorField v = VectorField::zeros(psi.basis);
  const int m = static_cast<int>(psi.basis->stride());
  for (int k = 1; k < m; ++k) {
    for (int l = 1; l < m; ++l) {
      const std::size_t idx = psi.basis->index(k, l);
      v.rot[idx] = std::sqrt(psi.basis->xi(k, l)) * psi.coef[idx];
    }
  }
  return v;
}

ScalarField laplacian(const ScalarField& s) {
  ScalarField out = ScalarField::zeros(s.basis);
  const int m = static_cast<int>(s.basis->stride());
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const std::size_t idx = s.basis->index(k, l);
      out.coef[idx] = -s.basis->xi(k, l) * s.coef[idx];
    }
  }
  return out;
}

VectorGrid gradient_samples(const ScalarField& s) {
  const auto& b = *s.basis;
  std::vector<double> dx(b.coef_count(), 0.0), dy(b.coef_count(), 0.0);
  const int m = static_cast<int>(b.stride());
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const std::size_t idx = b.index(k, l);
      dx[idx] = -b.wavenumber_x(k) * s.coef[idx];
      dy[idx] = -b.wavenumber_y(l) * s.coef[idx];
    }
  }
  return {b.synthesize(dx, Parity::Sin, Parity::Cos), b.synthesize(dy, Parity::Cos, Parity::Sin)};
}

HessianGrid hessian_samples(const ScalarField& s) {
  const auto& b = *s.basis;
  std::vector<double> xx(b.coef_count(), 0.0), xy(b.coef_count(), 0.0), yy(b.coef_count(), 0.0);
  const int m = static_cast<int>(b.stride());
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const std::size_t idx = b.index(k, l);
      const double kx = b.wavenumber_x(k);
      const double ly = b.wavenumber_y(l);
      xx[idx] = -kx * kx * s.coef[idx];
      yy[idx] = -ly * ly * s.coef[idx];
      xy[idx] = kx * ly * s.coef[idx];
    }
  }
  return {b.synthesize(xx, Parity::Cos, Parity::Cos), b.synthesize(xy, Parity::Sin, Parity::Sin),
          b.synthesize(yy, Parity::Cos, Parity::Cos)};
}

double l2_inner(const ScalarField& a, const ScalarField& b) {
  require_same_domain(*a.basis, *b.basis);
  return simd::active().dot(a.coef.size(), a.coef.data(), b.coef.data());
}

double l2_inner(const VectorField& a, const VectorField& b) {
  require_same_domain(*a.basis, *b.basis);
  const auto& kern = simd::active();
  return kern.dot(a.grad.size(), a.grad.data(), b.grad.data()) +
         kern.dot(a.rot.size(), a.rot.data(), b.rot.data());
}

double l2_norm(const ScalarField& s) { return std::sqrt(l2_inner(s, s)); }
double l2_norm(const VectorField& v) { return std::sqrt(l2_inner(v, v)); }

double h_norm(const VectorField& v) {
  const int m = static_cast<int>(v.basis->stride());
  double total = 0.0;
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const std::size_t idx = v.basis->index(k, l);
      const double xi = v.basis->xi(k, l);
      total += xi * (v.grad[idx] * v.grad[idx] + v.rot[idx] * v.rot[idx]);
    }
  }
  return std::sqrt(total);
}

VectorField solve_vector_poisson(const VectorField& f) {
  VectorField w = VectorField::zeros(f.basis);
  const int m = static_cast<int>(f.basis->stride());
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      if (k == 0 && l == 0) continue;
      const std::size_t idx = f.basis->index(k, l);
      const double xi = f.basis->xi(k, l);
      w.grad[idx] = f.grad[idx] / xi;
      w.rot[idx] = f.rot[idx] / xi;
    }
  }
  return w;
}

BoundaryResidual boundary_residual(const VectorField& v, const ScalarField& s) {
  require_same_domain(*v.basis, *s.basis);
  const auto& b = *v.basis;
  const DomainSpec& d = b.domain();
  const int m = static_cast<int>(b.stride());

  std::vector<double> ax(b.coef_count(), 0.0), ay(b.coef_count(), 0.0);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      if (k == 0 && l == 0) continue;
      const std::size_t idx = b.index(k, l);
      const ModeFrame f = mode_frame(b, k, l);
      ax[idx] = f.gx * v.grad[idx] + f.rx * v.rot[idx];
      ay[idx] = f.gy * v.grad[idx] + f.ry * v.rot[idx];
    }
  }
  const StreamField w = curl(v);
  std::vector<double> sx(b.coef_count(), 0.0), sy(b.coef_count(), 0.0);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      const std::size_t idx = b.index(k, l);
      sx[idx] = -b.wavenumber_x(k) * s.coef[idx];
      sy[idx] = -b.wavenumber_y(l) * s.coef[idx];
    }
  }

  BoundaryResidual r;
  const int points = std::max(8 * d.cutoff, 16);
  for (int p = 0; p < points; ++p) {
    const double tx = d.lx * p / (points - 1);
    const double ty = d.ly * p / (points - 1);
    for (const double x : {0.0, d.lx}) {
      r.normal = std::max(r.normal, std::abs(b.evaluate(ax, Parity::Sin, Parity::Cos, x, ty)));
      r.curl = std::max(r.curl, std::abs(b.evaluate(w.coef, Parity::Sin, Parity::Sin, x, ty)));
      r.neumann = std::max(r.neumann, std::abs(b.evaluate(sx, Parity::Sin, Parity::Cos, x, ty)));
    }
    for (const double y : {0.0, d.ly}) {
      r.normal = std::max(r.normal, std::abs(b.evaluate(ay, Parity::Cos, Parity::Sin, tx, y)));
      r.curl = std::max(r.curl, std::abs(b.evaluate(w.coef, Parity::Sin, Parity::Sin, tx, y)));
      r.neumann = std::max(r.neumann, std::abs(b.evaluate(sy, Parity::Cos, Parity::Sin, tx, y)));
    }
  }
  return r;
}

namespace {

constexpr int kStencil = 5;

struct EdgeWeights {
  std::array<double, kStencil> value;
  std::array<double, kStencil> slope;
};

// Lagrange weights on the first kStencil midpoints (m + 1/2) h for the value
// and first derivative at the edge x = 0.
EdgeWeights edge_weights(double h) {
  std::array<double, kStencil> nodes;
  for (int m = 0; m < kStencil; ++m) nodes[m] = (m + 0.5) * h;
  EdgeWeights w{};
  for (int m = 0; m < kStencil; ++m) {
    double value = 1.0;
    for (int q = 0; q < kStencil; ++q) {
      if (q != m) value *= (0.0 - nodes[q]) / (nodes[m] - nodes[q]);
    }
    w.value[m] = value;
    double slope = 0.0;
    for (int p = 0; p < kStencil; ++p) {
      if (p == m) continue;
      double term = 1.0 / (nodes[m] - nodes[p]);
      for (int q = 0; q < kStencil; ++q) {
        if (q != m && q != p) term *= (0.0 - nodes[q]) / (nodes[m] - nodes[q]);
      }
      slope += term;
    }
    w.slope[m] = slope;
  }
  return w;
}

// Edge trace (value or outward-pointing coordinate derivative) of a grid along
// one of the four edges, as a function of the tangential grid index.
enum class Edge { Left, Right, Bottom, Top };

std::vector<double> edge_trace(const ScalarGrid& g, Edge edge, const std::array<double, kStencil>& w,
                               double sign_for_far_edge) {
  const int n = g.n;
  std::vector<double> out(n, 0.0);
  for (int t = 0; t < n; ++t) {
    double acc = 0.0;
    for (int m = 0; m < kStencil; ++m) {
      switch (edge) {
        case Edge::Left: acc += w[m] * g.at(m, t); break;
        case Edge::Right: acc += w[m] * g.at(n - 1 - m, t); break;
        case Edge::Bottom: acc += w[m] * g.at(t, m); break;
        case Edge::Top: acc += w[m] * g.at(t, n - 1 - m); break;
      }
    }
    const bool far = edge == Edge::Right || edge == Edge::Top;
    out[t] = far ? sign_for_far_edge * acc : acc;
  }
  return out;
}

// Derivative of uniformly spaced midpoint data along the edge.
std::vector<double> tangential_derivative(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) d[i] = (f[1] - f[0]) / h;
    else if (i + 1 == n) d[i] = (f[n - 1] - f[n - 2]) / h;
    else d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  }
  return d;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

BoundaryResidual sampled_boundary_residual(const DomainSpec& domain, const VectorGrid& v,
                                           const ScalarGrid& s) {
  domain.validate();
  const int n = domain.grid_n;
  if (s.n != n || v.x.n != n || v.y.n != n) {
    throw Error(ErrorKind::DomainMismatch, "sample grid size does not match the domain");
  }
  const double hx = domain.lx / n;
  const double hy = domain.ly / n;
  const EdgeWeights wx = edge_weights(hx);
  const EdgeWeights wy = edge_weights(hy);

  BoundaryResidual r;
  // Derivatives at the far edge come out with respect to the inward coordinate.
  r.neumann = std::max({max_abs(edge_trace(s, Edge::Left, wx.slope, -1.0)),
                        max_abs(edge_trace(s, Edge::Right, wx.slope, -1.0)),
                        max_abs(edge_trace(s, Edge::Bottom, wy.slope, -1.0)),
                        max_abs(edge_trace(s, Edge::Top, wy.slope, -1.0))});
  r.normal = std::max({max_abs(edge_trace(v.x, Edge::Left, wx.value, 1.0)),
                       max_abs(edge_trace(v.x, Edge::Right, wx.value, 1.0)),
                       max_abs(edge_trace(v.y, Edge::Bottom, wy.value, 1.0)),
                       max_abs(edge_trace(v.y, Edge::Top, wy.value, 1.0))});

  // curl = d(v_y)/dx - d(v_x)/dy on each edge
  for (Edge e : {Edge::Left, Edge::Right}) {
    const auto dvy_dx = edge_trace(v.y, e, wx.slope, -1.0);
    const auto dvx_dy = tangential_derivative(edge_trace(v.x, e, wx.value, 1.0), hy);
    for (int t = 0; t < n; ++t) r.curl = std::max(r.curl, std::abs(dvy_dx[t] - dvx_dy[t]));
  }
  for (Edge e : {Edge::Bottom, Edge::Top}) {
    const auto dvx_dy = edge_trace(v.x, e, wy.slope, -1.0);
    const auto dvy_dx = tangential_derivative(edge_trace(v.y, e, wy.value, 1.0), hx);
    for (int t = 0; t < n; ++t) r.curl = std::max(r.curl, std::abs(dvy_dx[t] - dvx_dy[t]));
  }
  return r;
}

}  // namespace thermo
