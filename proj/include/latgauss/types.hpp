#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <vector>

namespace latgauss {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

inline Vector to_real(const IntVector& x) { return x.cast<double>(); }

// Lexicographic order on coefficient vectors; canonical state ordering.
bool lex_less(const IntVector& a, const IntVector& b);

struct LexLess {
  bool operator()(const IntVector& a, const IntVector& b) const {
    return lex_less(a, b);
  }
};

// Round to nearest integer, ties to even. Independent of the FP environment.
double round_half_even(double v);

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// log(sum(exp(v))) without overflow or underflow of the largest term.
double log_sum_exp(const std::vector<double>& v);

}  // namespace latgauss
