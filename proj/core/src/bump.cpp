#include "eulat/bump.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <atomic>
#include <deque>
#include <mutex>
#include <stdexcept>
#include <string>

namespace eulat {

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

// ---- half-bump table: P_{n+1} = u^2 (P_n + P_n') --------------------------

std::deque<std::vector<BigInt>>& half_table() {
  static std::deque<std::vector<BigInt>> t{{BigInt(1)}};
  return t;
}
std::atomic<int> half_built{1};
std::mutex half_mu;

void grow_half(int n) {
  std::lock_guard<std::mutex> lock(half_mu);
  auto& tab = half_table();
  for (int k = half_built.load(std::memory_order_relaxed); k <= n; ++k) {
    const auto& prev = tab[k - 1];
    std::vector<BigInt> next(prev.size() + 2);
    for (std::size_t p = 0; p < prev.size(); ++p) {
      if (prev[p] == 0) continue;
      next[p + 2] += prev[p];
      next[p + 1] += BigInt(p) * prev[p];
    }
    tab.push_back(std::move(next));
    half_built.store(k + 1, std::memory_order_release);
  }
}

// ---- compact-bump table ---------------------------------------------------
// f = exp(-u1 - u2), u1 = 1/(t-T1), u2 = 1/(T2-t).  With f^(n) = Q_n * f:
//   u1' = -u1^2, u2' = u2^2, so
//   Q_{n+1} = -u1^2 dQ/du1 + u2^2 dQ/du2 + (u1^2 - u2^2) Q.
// Dense coefficient grid, a[i * stride + j] multiplies u1^i u2^j.

struct Bivar {
  int stride = 1;  // = 2n + 1
  std::vector<BigInt> a;

  const BigInt& at(int i, int j) const { return a[i * stride + j]; }
};

std::deque<Bivar>& compact_table() {
  static std::deque<Bivar> t{Bivar{1, {BigInt(1)}}};
  return t;
}
std::atomic<int> compact_built{1};
std::mutex compact_mu;

void grow_compact(int n) {
  std::lock_guard<std::mutex> lock(compact_mu);
  auto& tab = compact_table();
  for (int k = compact_built.load(std::memory_order_relaxed); k <= n; ++k) {
    const Bivar& q = tab[k - 1];
    Bivar next;
    next.stride = q.stride + 2;
    next.a.assign(next.stride * next.stride, BigInt(0));
    auto add = [&next](int i, int j, const BigInt& v) {
      next.a[i * next.stride + j] += v;
    };
    for (int i = 0; i < q.stride; ++i) {
      for (int j = 0; j < q.stride; ++j) {
        const BigInt& c = q.at(i, j);
        if (c == 0) continue;
        if (i > 0) add(i + 1, j, BigInt(-i) * c);
        if (j > 0) add(i, j + 1, BigInt(j) * c);
        add(i + 2, j, c);
        add(i, j + 2, -c);
      }
    }
    tab.push_back(std::move(next));
    compact_built.store(k + 1, std::memory_order_release);
  }
}

double half_eval(int n, double t, double T) {
  const Big u = Big(1) / (Big(T) - Big(t));  // < 0 on the support
  const auto& poly = half_table()[n];
  Big p = 0;
  for (std::size_t i = poly.size(); i-- > 0;) p = p * u + Big(poly[i]);
  return static_cast<double>(p * exp(u));
}

double compact_eval(int n, double t, double T1, double T2) {
  const Big u1 = Big(1) / (Big(t) - Big(T1));
  const Big u2 = Big(1) / (Big(T2) - Big(t));
  const Bivar& q = compact_table()[n];
  Big acc = 0;
  Big pow1 = 1;
  for (int i = 0; i < q.stride; ++i) {
    Big row = 0;
    for (int j = q.stride - 1; j >= 0; --j) row = row * u2 + Big(q.at(i, j));
    acc += pow1 * row;
    pow1 *= u1;
  }
  return static_cast<double>(acc * exp(-u1 - u2));
}

}  // namespace

const std::vector<BigInt>& half_deriv_polynomial(int n) {
  if (n < 0) throw std::out_of_range("derivative order must be nonnegative");
  if (half_built.load(std::memory_order_acquire) <= n) grow_half(n);
  return half_table()[n];
}

double half_bump_deriv(int n, double t, double T) {
  if (n < 0) throw std::out_of_range("derivative order must be nonnegative");
  if (!(t > T)) return 0.0;
  if (half_built.load(std::memory_order_acquire) <= n) grow_half(n);
  return half_eval(n, t, T);
}

double compact_bump_deriv(int n, double t, double T1, double T2) {
  if (n < 0) throw std::out_of_range("derivative order must be nonnegative");
  if (!(t > T1 && t < T2)) return 0.0;
  if (compact_built.load(std::memory_order_acquire) <= n) grow_compact(n);
  return compact_eval(n, t, T1, T2);
}

BumpSpec BumpSpec::half(double T, int max_order) {
  BumpSpec s;
  s.kind = Kind::half;
  s.T = T;
  s.max_order = max_order;
  s.validate();
  return s;
}

BumpSpec BumpSpec::compact(double T1, double T2, int max_order) {
  BumpSpec s;
  s.kind = Kind::compact;
  s.windows = {{T1, T2}};
  s.max_order = max_order;
  s.validate();
  return s;
}

BumpSpec BumpSpec::multi(std::vector<Interval> windows, int max_order) {
  BumpSpec s;
  s.kind = Kind::multi;
  s.windows = std::move(windows);
  s.max_order = max_order;
  s.validate();
  return s;
}

void BumpSpec::validate() const {
  if (max_order < 0) throw std::invalid_argument("max_order must be nonnegative");
  switch (kind) {
    case Kind::half:
      if (!(T > 0)) throw std::invalid_argument("half bump needs T > 0");
      if (!windows.empty())
        throw std::invalid_argument("half bump takes no windows");
      return;
    case Kind::compact:
      if (windows.size() != 1)
        throw std::invalid_argument("compact bump needs exactly one window");
      break;
    case Kind::multi:
      if (windows.empty())
        throw std::invalid_argument("multi bump needs at least one window");
      break;
  }
  double prev_hi = 0;
  for (const auto& w : windows) {
    if (!(w.lo > 0) || !(w.lo < w.hi))
      throw std::invalid_argument("bump window needs 0 < lo < hi");
    if (!(w.lo >= prev_hi))
      throw std::invalid_argument("bump windows must be disjoint and ordered");
    prev_hi = w.hi;
  }
}

BumpOracle::BumpOracle(BumpSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  if (spec_.kind == BumpSpec::Kind::half) {
    if (half_built.load(std::memory_order_acquire) <= spec_.max_order)
      grow_half(spec_.max_order);
  } else {
    if (compact_built.load(std::memory_order_acquire) <= spec_.max_order)
      grow_compact(spec_.max_order);
  }
}

double BumpOracle::derivative(int n, double t) const {
  if (n < 0 || n > spec_.max_order)
    throw std::out_of_range("derivative order " + std::to_string(n) +
                            " exceeds max_order " +
                            std::to_string(spec_.max_order));
  switch (spec_.kind) {
    case BumpSpec::Kind::half:
      return half_bump_deriv(n, t, spec_.T);
    case BumpSpec::Kind::compact:
      return compact_bump_deriv(n, t, spec_.windows[0].lo, spec_.windows[0].hi);
    case BumpSpec::Kind::multi:
      for (const auto& w : spec_.windows) {
        if (t > w.lo && t < w.hi) return compact_bump_deriv(n, t, w.lo, w.hi);
        if (t <= w.lo) break;
      }
      return 0.0;
  }
  return 0.0;
}

}  // namespace eulat
