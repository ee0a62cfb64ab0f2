#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "kgraph/errors.hpp"

namespace kgraph {

/// Element of N^k, extended with per-coordinate infinity for degrees of
/// generalized paths. Finite-only contexts assert via require_finite().
class Deg {
 public:
  static constexpr int kInf = std::numeric_limits<int>::max();

  Deg() = default;
  explicit Deg(int rank, int fill = 0) : c_(static_cast<size_t>(rank), fill) {}
  Deg(std::initializer_list<int> xs) : c_(xs) {}
  static Deg zero(int rank) { return Deg(rank, 0); }
  static Deg infinite(int rank) { return Deg(rank, kInf); }
  static Deg unit(int rank, int color) {
    Deg d(rank, 0);
    d.c_[static_cast<size_t>(color)] = 1;
    return d;
  }

  int rank() const { return static_cast<int>(c_.size()); }
  int operator[](int i) const { return c_[static_cast<size_t>(i)]; }
  int& at(int i) { return c_[static_cast<size_t>(i)]; }
  const std::vector<int>& coords() const { return c_; }

  bool is_finite() const {
    return std::none_of(c_.begin(), c_.end(), [](int x) { return x == kInf; });
  }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](int x) { return x == 0; });
  }
  void require_finite(const char* where) const {
    if (!is_finite()) fail(Errc::out_of_range, std::string(where) + ": degree must be finite");
  }

  /// Sum of coordinates (finite only).
  int total() const {
    require_finite("total");
    return std::accumulate(c_.begin(), c_.end(), 0);
  }

  std::vector<int> support() const {
    std::vector<int> s;
    for (int i = 0; i < rank(); ++i)
      if (c_[static_cast<size_t>(i)] > 0) s.push_back(i);
    return s;
  }

  friend bool operator==(const Deg& a, const Deg& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Deg& a, const Deg& b) { return a.c_ != b.c_; }
  /// Lexicographic; used for deterministic container ordering, not the lattice order.
  friend bool operator<(const Deg& a, const Deg& b) { return a.c_ < b.c_; }

  bool leq(const Deg& o) const {
    for (int i = 0; i < rank(); ++i)
      if (c_[static_cast<size_t>(i)] > o[i]) return false;
    return true;
  }
  bool geq(const Deg& o) const { return o.leq(*this); }

  Deg meet(const Deg& o) const {
    Deg r(rank());
    for (int i = 0; i < rank(); ++i) r.at(i) = std::min((*this)[i], o[i]);
    return r;
  }
  Deg join(const Deg& o) const {
    Deg r(rank());
    for (int i = 0; i < rank(); ++i) r.at(i) = std::max((*this)[i], o[i]);
    return r;
  }

  Deg operator+(const Deg& o) const {
    Deg r(rank());
    for (int i = 0; i < rank(); ++i) {
      int a = (*this)[i], b = o[i];
      r.at(i) = (a == kInf || b == kInf) ? kInf : a + b;
    }
    return r;
  }
  /// Componentwise difference; requires o ≤ *this and finite subtrahend entries
  /// wherever *this is finite.
  Deg operator-(const Deg& o) const {
    Deg r(rank());
    for (int i = 0; i < rank(); ++i) {
      int a = (*this)[i], b = o[i];
      if (b > a) fail(Errc::out_of_range, "degree subtraction underflow");
      if (a == kInf) {
        if (b == kInf) fail(Errc::out_of_range, "inf - inf undefined");
        r.at(i) = kInf;
      } else {
        r.at(i) = a - b;
      }
    }
    return r;
  }

  std::string str() const {
    std::ostringstream os;
    for (int i = 0; i < rank(); ++i) {
      if (i) os << ',';
      if ((*this)[i] == kInf)
        os << "inf";
      else
        os << (*this)[i];
    }
    return os.str();
  }

 private:
  std::vector<int> c_;
};

/// Visit every n with 0 ≤ n ≤ bound (bound finite), in lexicographic order.
inline void for_each_leq(const Deg& bound, const std::function<void(const Deg&)>& fn) {
  bound.require_finite("for_each_leq");
  Deg n(bound.rank(), 0);
  while (true) {
    fn(n);
    int i = bound.rank() - 1;
    while (i >= 0) {
      if (n[i] < bound[i]) {
        n.at(i)++;
        break;
      }
      n.at(i) = 0;
      --i;
    }
    if (i < 0) break;
  }
}

/// Visit every n with lo ≤ n ≤ hi.
inline void for_each_between(const Deg& lo, const Deg& hi,
                             const std::function<void(const Deg&)>& fn) {
  if (!lo.leq(hi)) return;
  for_each_leq(hi - lo, [&](const Deg& t) { fn(lo + t); });
}

}  // namespace kgraph
