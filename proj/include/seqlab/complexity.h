// Copyright 2026 The seqlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEQLAB_COMPLEXITY_H_
#define SEQLAB_COMPLEXITY_H_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "seqlab/core.h"

namespace seqlab {

inline constexpr std::size_t kDefaultMonteCarloSamples = 100000;

double Zeta(double x);

struct ZetaParams {
  int n = 7;
  int alphabet = 2;
  double offset() const;  // c = 1 / (4 log(n |Y|))
  double range() const;   // n^2 |Y|
};

struct ZetaGrids {
  std::size_t log_points = 10000;
  std::size_t divergence_side = 50;
  std::size_t lipschitz_pairs = 10000;
  std::uint64_t seed = 0;
};

struct ZetaReport {
  double log_min_slack = 0.0;   // min of zeta - c zeta^2 - log x
  double log_argmin = 0.0;
  double log_quarter_min_slack = 0.0;  // same with c zeta^2 / 4
  double divergence_min = 0.0;         // min of E_p[-zeta(f/p) - c zeta(f/p)^2]
  double lipschitz_min_slack = 0.0;   // min of 2|sqrt a - sqrt b| - |zeta a - zeta b|
  std::size_t evaluations = 0;
  bool ok = false;
};

// Tolerance used by every check in this module.
inline constexpr double kCheckTolerance = 1e-12;

ZetaReport CheckZetaProperties(const ZetaParams& params, const ZetaGrids& grids = {});
// Divergence property on the 3-letter simplex grid with `side` points per axis.
double ZetaDivergenceMinTernary(const ZetaParams& params, std::size_t side);

struct CircleDotSample {
  std::vector<int> eps;  // +1 / -1
  Path w, y, z;
  std::uint64_t seed = 0;
};

CircleDotSample SampleCircleDot(const JointDistribution& p, std::uint64_t seed);

struct SymmetrizationOptions {
  bool force_monte_carlo = false;
  std::size_t samples = kDefaultMonteCarloSamples;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct SymmetrizationReport {
  double lhs = 0.0;
  double first_term = 0.0;
  double second_term = 0.0;
  double rhs = 0.0;
  double rhs_stderr = 0.0;  // zero in exact mode
  bool exact = false;
  std::size_t atoms = 0;
  bool holds = false;
};

SymmetrizationReport SymmetrizationCheck(const ExpertClass& q, const JointDistribution& p,
                                         const SymmetrizationOptions& options = {});

// a_t(eps_{1:t-1}) stored on the depth-n binary tree; the child for
// eps = +1 is outcome 1.
struct CoefficientFamily {
  int n = 0;
  std::vector<std::vector<double>> members;
};

struct FiniteClassOptions {
  bool force_monte_carlo = false;
  std::size_t samples = kDefaultMonteCarloSamples;
  std::uint64_t seed = 0;
};

struct FiniteClassReport {
  double offset_value = 0.0;
  double offset_bound = 0.0;
  double nonoffset_value = 0.0;
  double nonoffset_bound = 0.0;
  double sup_square_mean = 0.0;
  double offset_stderr = 0.0;
  double nonoffset_stderr = 0.0;
  bool exact = false;
  bool offset_holds = false;
  bool nonoffset_holds = false;
};

FiniteClassReport FiniteClassOffset(const CoefficientFamily& family, double lambda,
                                    const FiniteClassOptions& options = {});

enum class BoundForm { kGeneral, kFunctionClass };  // with / without sqrt(|Y|)

struct BoundInputs {
  std::optional<double> exponent;                   // H(a) = coefficient * a^-p
  double coefficient = 1.0;
  std::vector<std::pair<double, double>> table;     // (scale, entropy) points
  double n = 1.0;
  int alphabet = 2;
  BoundForm form = BoundForm::kGeneral;
  int substeps = 16;   // grid points per octave
  int levels = 0;      // smallest scale 2^-levels; 0 picks 2 log2(n) + 8
};

struct ChainingBound {
  double value = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double trapezoid_error = 0.0;
  std::size_t grid_points = 0;
};

ChainingBound ComputeChainingBound(const BoundInputs& inputs);
double RateExponent(double p);
// Least-squares slope of log(y) against log(x).
double LogLogSlope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace seqlab

#endif  // SEQLAB_COMPLEXITY_H_
