#pragma once

#include <string>

namespace hydrolim {

/// Which dynamics a run integrates.
struct System {
  enum class Kind { Primitive, ANS };
  Kind kind = Kind::Primitive;
  double epsilon = 1.0;  // ANS only

  static System primitive() { return {Kind::Primitive, 1.0}; }
  static System ans(double eps) { return {Kind::ANS, eps}; }
  bool is_ans() const noexcept { return kind == Kind::ANS; }
  std::string name() const { return is_ans() ? "ans" : "primitive"; }
};

}  // namespace hydrolim
