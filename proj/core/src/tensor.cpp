#include "ahgeom/tensor.hpp"

#include <cmath>

#include "ahgeom/errors.hpp"

namespace ahg {

namespace {
std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}
}  // namespace

PointTensor::PointTensor(std::size_t dim, std::vector<Variance> variance)
    : dim_(dim), variance_(std::move(variance)), data_(ipow(dim, variance_.size()), 0.0) {}

PointTensor PointTensor::covariant4(std::size_t dim) {
  return PointTensor(dim, {Variance::Lower, Variance::Lower, Variance::Lower, Variance::Lower});
}

PointTensor PointTensor::from_matrix(const Eigen::MatrixXd& m, Variance first, Variance second) {
  if (m.rows() != m.cols()) throw DimensionError("tensor components must be square");
  PointTensor t(static_cast<std::size_t>(m.rows()), {first, second});
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) t(i, j) = m(i, j);
  return t;
}

PointTensor PointTensor::moved_slot(std::size_t slot, const Eigen::MatrixXd& m, Variance to) const {
  if (slot >= rank()) throw UsageError("tensor slot out of range");
  if (static_cast<std::size_t>(m.rows()) != dim_) throw DimensionError("metric dimension mismatch");
  auto variance = variance_;
  variance[slot] = to;
  PointTensor out(dim_, std::move(variance));
  // Split the flat index around `slot`: outer * dim * inner.
  const std::size_t inner = ipow(dim_, rank() - slot - 1);
  const std::size_t outer = ipow(dim_, slot);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t a = 0; a < dim_; ++a) {
      for (std::size_t in = 0; in < inner; ++in) {
        double s = 0.0;
        for (std::size_t b = 0; b < dim_; ++b) {
          s += m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *
               data_[(o * dim_ + b) * inner + in];
        }
        out.data_[(o * dim_ + a) * inner + in] = s;
      }
    }
  }
  return out;
}

PointTensor PointTensor::raised(std::size_t slot, const Eigen::MatrixXd& g_inverse) const {
  if (variance(slot) != Variance::Lower) throw UsageError("slot is already upper");
  return moved_slot(slot, g_inverse, Variance::Upper);
}

PointTensor PointTensor::lowered(std::size_t slot, const Eigen::MatrixXd& g) const {
  if (variance(slot) != Variance::Upper) throw UsageError("slot is already lower");
  return moved_slot(slot, g, Variance::Lower);
}

Eigen::MatrixXd PointTensor::matrix() const {
  if (rank() != 2) throw UsageError("matrix() needs a rank-2 tensor");
  Eigen::MatrixXd m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
  return m;
}

double PointTensor::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double PointTensor::frobenius() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

PointTensor& PointTensor::operator+=(const PointTensor& other) {
  if (other.data_.size() != data_.size()) throw DimensionError("tensor shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

PointTensor& PointTensor::operator-=(const PointTensor& other) {
  if (other.data_.size() != data_.size()) throw DimensionError("tensor shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

PointTensor& PointTensor::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

PointTensor operator-(PointTensor a, const PointTensor& b) { return a -= b; }
PointTensor operator+(PointTensor a, const PointTensor& b) { return a += b; }
PointTensor operator*(double s, PointTensor a) { return a *= s; }

double contract4(const PointTensor& t, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                 const Eigen::VectorXd& z, const Eigen::VectorXd& u) {
  const std::size_t n = t.dim();
  const auto d = t.data();
  double s = 0.0;
  std::size_t f = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double xy = x[a] * y[b];
      if (xy == 0.0) {
        f += n * n;
        continue;
      }
      double inner = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        double row = 0.0;
        for (std::size_t e = 0; e < n; ++e) row += d[f++] * u[e];
        inner += z[c] * row;
      }
      s += xy * inner;
    }
  }
  return s;
}

Eigen::VectorXd curvature_operator(const PointTensor& r, const Eigen::MatrixXd& g_inverse,
                                   const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                   const Eigen::VectorXd& z) {
  const std::size_t n = r.dim();
  Eigen::VectorXd lower = Eigen::VectorXd::Zero(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const double xy = x[a] * y[b];
      if (xy == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        const double w = xy * z[c];
        if (w == 0.0) continue;
        for (std::size_t d = 0; d < n; ++d) lower[d] += w * r(a, b, c, d);
      }
    }
  return g_inverse * lower;
}

}  // namespace ahg
