#pragma once

#include <cstddef>
#include <vector>

namespace ptctl {

/// Forward-mode derivative number: a value carried together with its partial
/// derivatives with respect to a fixed seed set, nested `depth` levels deep so
/// that an extracted partial is itself a Jet one level shallower.
///
/// Storage is a flat array in the recursive layout
///   [value, block_0, ..., block_{dims-1}]
/// where block k holds d/d(seed_k) of the number as a depth-1 jet of the same
/// dims. A depth-0 jet is a bare value. All operands of a binary operation
/// must share (dims, depth).
class Jet {
 public:
  Jet() : dims_(0), depth_(0), data_(1, 0.0) {}

  static Jet constant(double v, int dims, int depth);
  /// Seed number for coordinate `index`: value v, first derivative 1 in that
  /// direction, all higher cross-derivatives zero.
  static Jet seed(double v, int dims, int depth, int index);

  static std::size_t storage_size(int dims, int depth);

  double value() const { return data_[0]; }
  int dims() const { return dims_; }
  int depth() const { return depth_; }

  /// d/d(seed_k), one level shallower. Requires depth >= 1.
  Jet partial(int k) const;
  /// Same number with the highest derivative order dropped.
  Jet lower() const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  friend Jet operator+(double c, const Jet& a);
  friend Jet operator+(const Jet& a, double c);
  friend Jet operator-(double c, const Jet& a);
  friend Jet operator-(const Jet& a, double c);
  friend Jet operator*(double c, const Jet& a);
  friend Jet operator*(const Jet& a, double c);
  friend Jet operator/(const Jet& a, double c);
  friend Jet operator/(double c, const Jet& a);

  friend Jet sqrt(const Jet& a);
  friend Jet exp(const Jet& a);
  friend Jet sin(const Jet& a);
  friend Jet cos(const Jet& a);

 private:
  Jet(int dims, int depth) : dims_(dims), depth_(depth), data_(storage_size(dims, depth), 0.0) {}

  void check_same_shape(const Jet& other) const;

  int dims_;
  int depth_;
  std::vector<double> data_;
};

}  // namespace ptctl
