#pragma once

#include "hirefire/errors.hpp"

namespace hirefire {

/// A firing policy on one signal branch: never stop, stop at time zero, or
/// stop the first time the belief falls to an interior threshold.
///
/// Degenerate policies are explicit markers rather than sentinel floats, so
/// a threshold value is only readable when one actually exists.
class StoppingRule {
 public:
  static StoppingRule never_stop() { return StoppingRule(Kind::Never, 0.0); }
  static StoppingRule stop_immediately() { return StoppingRule(Kind::Immediate, 0.0); }

  /// Threshold rules carry a belief level in the open interval (0,1).
  static StoppingRule at_threshold(double b) {
    if (!(b > 0.0 && b < 1.0)) throw DomainViolation("stopping threshold must lie in (0,1)");
    return StoppingRule(Kind::Threshold, b);
  }

  bool is_never_stop() const { return kind_ == Kind::Never; }
  bool is_stop_immediately() const { return kind_ == Kind::Immediate; }
  bool has_threshold() const { return kind_ == Kind::Threshold; }

  double threshold() const {
    if (kind_ != Kind::Threshold) throw Error("stopping rule carries no threshold");
    return value_;
  }

  /// True if a path currently at belief pi stops under this rule.
  bool triggers(double pi) const {
    switch (kind_) {
      case Kind::Never: return false;
      case Kind::Immediate: return true;
      case Kind::Threshold: return pi <= value_;
    }
    return false;
  }

  friend bool operator==(const StoppingRule& a, const StoppingRule& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Threshold || a.value_ == b.value_);
  }

 private:
  enum class Kind { Never, Immediate, Threshold };
  StoppingRule(Kind kind, double value) : kind_(kind), value_(value) {}
  Kind kind_;
  double value_;
};

}  // namespace hirefire
