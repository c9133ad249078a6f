#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace morphnmt {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reserved vocabulary ids, fixed across every artifact.
enum special_id : int { kPad = 0, kGo = 1, kEos = 2, kUnk = 3 };

inline double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(sigmoid(x)) without overflow for large |x|.
inline double log_sigmoid(double x) {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

inline Vec sigmoid(const Vec& v) {
  return v.unaryExpr([](double x) { return sigmoid(x); });
}

// Stable softmax; the input may be any finite vector.
inline Vec softmax(const Vec& scores) {
  const double m = scores.maxCoeff();
  Vec e = (scores.array() - m).exp();
  return e / e.sum();
}

inline Vec log_softmax(const Vec& scores) {
  const double m = scores.maxCoeff();
  const double lse = std::log((scores.array() - m).exp().sum()) + m;
  return scores.array() - lse;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }

  // Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_);
  }

  std::mt19937_64& engine() { return gen_; }

  void fill_uniform(Mat& m, double scale) {
    for (Eigen::Index i = 0; i < m.size(); ++i)
      m.data()[i] = uniform(-scale, scale);
  }

  void fill_uniform(Vec& v, double scale) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
      v[i] = uniform(-scale, scale);
  }

 private:
  std::mt19937_64 gen_;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw error(msg);
}

}  // namespace morphnmt
