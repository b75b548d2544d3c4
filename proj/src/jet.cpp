#include "ptctl/jet.hpp"

#include <cmath>
#include <stdexcept>

namespace ptctl {
namespace {

std::size_t size_of(int dims, int depth) {
  std::size_t s = 1;
  for (int d = 0; d < depth; ++d) s = 1 + static_cast<std::size_t>(dims) * s;
  return s;
}

// All helpers below operate on raw blocks of the layout described in jet.hpp.
// `m` is the seed count, `d` the depth of the operand blocks.

// depth d -> depth d-1 (drop the deepest derivative level). Requires d >= 1.
void trunc_rec(const double* a, double* out, int m, int d) {
  out[0] = a[0];
  if (d == 1) return;
  const std::size_t si = size_of(m, d - 1);
  const std::size_t so = size_of(m, d - 2);
  for (int k = 0; k < m; ++k) trunc_rec(a + 1 + k * si, out + 1 + k * so, m, d - 1);
}

void mul_rec(const double* a, const double* b, double* out, int m, int d) {
  out[0] = a[0] * b[0];
  if (d == 0) return;
  const std::size_t s = size_of(m, d - 1);
  std::vector<double> ta(s), tb(s), t1(s), t2(s);
  trunc_rec(a, ta.data(), m, d);
  trunc_rec(b, tb.data(), m, d);
  for (int k = 0; k < m; ++k) {
    mul_rec(a + 1 + k * s, tb.data(), t1.data(), m, d - 1);
    mul_rec(ta.data(), b + 1 + k * s, t2.data(), m, d - 1);
    double* ok = out + 1 + k * s;
    for (std::size_t i = 0; i < s; ++i) ok[i] = t1[i] + t2[i];
  }
}

void inv_rec(const double* a, double* out, int m, int d) {
  out[0] = 1.0 / a[0];
  if (d == 0) return;
  const std::size_t s = size_of(m, d - 1);
  std::vector<double> ta(s), it(s), t1(s), t2(s);
  trunc_rec(a, ta.data(), m, d);
  inv_rec(ta.data(), it.data(), m, d - 1);
  for (int k = 0; k < m; ++k) {
    mul_rec(a + 1 + k * s, it.data(), t1.data(), m, d - 1);
    mul_rec(t1.data(), it.data(), t2.data(), m, d - 1);
    double* ok = out + 1 + k * s;
    for (std::size_t i = 0; i < s; ++i) ok[i] = -t2[i];
  }
}

void sqrt_rec(const double* a, double* out, int m, int d) {
  out[0] = std::sqrt(a[0]);
  if (d == 0) return;
  const std::size_t s = size_of(m, d - 1);
  std::vector<double> ta(s), st(s), ist(s), t1(s);
  trunc_rec(a, ta.data(), m, d);
  sqrt_rec(ta.data(), st.data(), m, d - 1);
  inv_rec(st.data(), ist.data(), m, d - 1);
  for (int k = 0; k < m; ++k) {
    mul_rec(a + 1 + k * s, ist.data(), t1.data(), m, d - 1);
    double* ok = out + 1 + k * s;
    for (std::size_t i = 0; i < s; ++i) ok[i] = 0.5 * t1[i];
  }
}

void exp_rec(const double* a, double* out, int m, int d) {
  out[0] = std::exp(a[0]);
  if (d == 0) return;
  const std::size_t s = size_of(m, d - 1);
  std::vector<double> ta(s), et(s);
  trunc_rec(a, ta.data(), m, d);
  exp_rec(ta.data(), et.data(), m, d - 1);
  for (int k = 0; k < m; ++k) mul_rec(a + 1 + k * s, et.data(), out + 1 + k * s, m, d - 1);
}

void sin_rec(const double* a, double* out, int m, int d);

void cos_rec(const double* a, double* out, int m, int d) {
  out[0] = std::cos(a[0]);
  if (d == 0) return;
  const std::size_t s = size_of(m, d - 1);
  std::vector<double> ta(s), st(s), t1(s);
  trunc_rec(a, ta.data(), m, d);
  sin_rec(ta.data(), st.data(), m, d - 1);
  for (int k = 0; k < m; ++k) {
    mul_rec(a + 1 + k * s, st.data(), t1.data(), m, d - 1);
    double* ok = out + 1 + k * s;
    for (std::size_t i = 0; i < s; ++i) ok[i] = -t1[i];
  }
}

void sin_rec(const double* a, double* out, int m, int d) {
  out[0] = std::sin(a[0]);
  if (d == 0) return;
  const std::size_t s = size_of(m, d - 1);
  std::vector<double> ta(s), ct(s);
  trunc_rec(a, ta.data(), m, d);
  cos_rec(ta.data(), ct.data(), m, d - 1);
  for (int k = 0; k < m; ++k) mul_rec(a + 1 + k * s, ct.data(), out + 1 + k * s, m, d - 1);
}

}  // namespace

std::size_t Jet::storage_size(int dims, int depth) { return size_of(dims, depth); }

Jet Jet::constant(double v, int dims, int depth) {
  Jet j(dims, depth);
  j.data_[0] = v;
  return j;
}

Jet Jet::seed(double v, int dims, int depth, int index) {
  if (index < 0 || index >= dims) throw std::invalid_argument("jet seed index out of range");
  Jet j(dims, depth);
  j.data_[0] = v;
  if (depth >= 1) {
    // first derivative 1 in direction `index`, constant at the lower level
    j.data_[1 + static_cast<std::size_t>(index) * storage_size(dims, depth - 1)] = 1.0;
  }
  return j;
}

void Jet::check_same_shape(const Jet& other) const {
  if (dims_ != other.dims_ || depth_ != other.depth_)
    throw std::invalid_argument("jet shape mismatch");
}

Jet Jet::partial(int k) const {
  if (depth_ < 1) throw std::logic_error("jet partial at depth 0");
  if (k < 0 || k >= dims_) throw std::invalid_argument("jet partial index out of range");
  Jet out(dims_, depth_ - 1);
  const std::size_t s = storage_size(dims_, depth_ - 1);
  const double* src = data_.data() + 1 + k * s;
  std::copy(src, src + s, out.data_.begin());
  return out;
}

Jet Jet::lower() const {
  if (depth_ < 1) throw std::logic_error("jet lower at depth 0");
  Jet out(dims_, depth_ - 1);
  trunc_rec(data_.data(), out.data_.data(), dims_, depth_);
  return out;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& v : out.data_) v = -v;
  return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
  check_same_shape(rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  check_same_shape(rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet out = a;
  out += b;
  return out;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet out = a;
  out -= b;
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_same_shape(b);
  Jet out(a.dims_, a.depth_);
  mul_rec(a.data_.data(), b.data_.data(), out.data_.data(), a.dims_, a.depth_);
  return out;
}

Jet operator/(const Jet& a, const Jet& b) {
  a.check_same_shape(b);
  Jet ib(b.dims_, b.depth_);
  inv_rec(b.data_.data(), ib.data_.data(), b.dims_, b.depth_);
  return a * ib;
}

Jet operator+(double c, const Jet& a) {
  Jet out = a;
  out.data_[0] += c;
  return out;
}
Jet operator+(const Jet& a, double c) { return c + a; }

Jet operator-(double c, const Jet& a) {
  Jet out = -a;
  out.data_[0] += c;
  return out;
}
Jet operator-(const Jet& a, double c) { return a + (-c); }

Jet operator*(double c, const Jet& a) {
  Jet out = a;
  for (double& v : out.data_) v *= c;
  return out;
}
Jet operator*(const Jet& a, double c) { return c * a; }

Jet operator/(const Jet& a, double c) { return a * (1.0 / c); }

Jet operator/(double c, const Jet& a) {
  Jet ia(a.dims_, a.depth_);
  inv_rec(a.data_.data(), ia.data_.data(), a.dims_, a.depth_);
  return c * ia;
}

Jet sqrt(const Jet& a) {
  Jet out(a.dims_, a.depth_);
  sqrt_rec(a.data_.data(), out.data_.data(), a.dims_, a.depth_);
  return out;
}

Jet exp(const Jet& a) {
  Jet out(a.dims_, a.depth_);
  exp_rec(a.data_.data(), out.data_.data(), a.dims_, a.depth_);
  return out;
}

Jet sin(const Jet& a) {
  Jet out(a.dims_, a.depth_);
  sin_rec(a.data_.data(), out.data_.data(), a.dims_, a.depth_);
  return out;
}

Jet cos(const Jet& a) {
  Jet out(a.dims_, a.depth_);
  cos_rec(a.data_.data(), out.data_.data(), a.dims_, a.depth_);
  return out;
}

}  // namespace ptctl
