#pragma once
#include <cmath>

namespace rfim {

/** Compensated accumulator (Kahan-Babuska-Neumaier): exact also when a large
 *  term lands on a small running sum.
 *  https://en.wikipedia.org/wiki/Kahan_summation_algorithm#Further_enhancements */
struct Kahan {
  double s = 0.0;
  double c = 0.0;  // accumulated low-order part: true sum ~= s + c

  void add(double x) {
    double t = s + x;
    if (std::fabs(s) >= std::fabs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
  void scale(double f) {
    s *= f;
    c *= f;
  }
};

}  // namespace rfim
