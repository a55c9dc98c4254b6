#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace infodyn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Stationary vector is not unique (eigenvalue-1 multiplicity > 1).
struct ReducibleChain : Error {
  using Error::Error;
};

/// Iterative eigensolver failed to reach the required residual.
struct ConvergenceFailure : Error {
  using Error::Error;
};

/// A function that must satisfy the a-priori normalization does not.
struct NotNormalized : Error {
  using Error::Error;
};

/// Exhaustive cylinder enumeration would exceed the configured bound.
struct EnumerationTooLarge : Error {
  using Error::Error;
};

/// Malformed or inconsistent job input (CLI layer).
struct SchemaError : Error {
  using Error::Error;
};

/// Extended real value: a finite double or a +infinity sentinel.
///
/// Divergences (KL against a singular reference, entropy production of a
/// chain with one-way transitions) are values, not errors. The sentinel is
/// set explicitly by the producing operation, never by float overflow, and
/// arithmetic on it saturates.
class ExtReal {
 public:
  ExtReal() : v_(0.0), inf_(false) {}
  ExtReal(double v) : v_(v), inf_(false) {}

  static ExtReal infinity() {
    ExtReal r;
    r.inf_ = true;
    return r;
  }

  bool is_infinite() const { return inf_; }
  bool is_finite() const { return !inf_; }

  /// Finite payload; calling this on the sentinel is a logic error.
  double value() const {
    if (inf_) throw Error("ExtReal: value() on +infinity sentinel");
    return v_;
  }

  /// IEEE view: the payload, or +inf for the sentinel.
  double as_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : v_;
  }

  ExtReal& operator+=(const ExtReal& o) {
    if (o.inf_) inf_ = true;
    if (!inf_) v_ += o.v_;
    return *this;
  }
  friend ExtReal operator+(ExtReal a, const ExtReal& b) { return a += b; }

  /// Scaling by a positive constant (base conversion, 1/n factors).
  ExtReal scaled(double c) const {
    if (inf_) return *this;
    return ExtReal(v_ * c);
  }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
    return a.v_ == b.v_;
  }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }

 private:
  double v_;
  bool inf_;
};

/// Output-side logarithm base. All internal computation is in nats.
enum class LogBase { natural, two, ten };

inline double log_base_factor(LogBase b) {
  switch (b) {
    case LogBase::two:
      return 1.0 / std::log(2.0);
    case LogBase::ten:
      return 1.0 / std::log(10.0);
    default:
      return 1.0;
  }
}

/// 0*log(0) = 0 convention used throughout.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

/// x*log(y) with the convention that x = 0 kills the term.
inline double xlogy(double x, double y) { return x > 0.0 ? x * std::log(y) : 0.0; }

namespace detail {

/// SplitMix64 step; used to derive independent per-trial substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s = a ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL);
  return splitmix64(s);
}

}  // namespace detail

}  // namespace infodyn
