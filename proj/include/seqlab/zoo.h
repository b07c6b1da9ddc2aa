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

#ifndef SEQLAB_ZOO_H_
#define SEQLAB_ZOO_H_

#include <cstdint>
#include <span>
#include <vector>

#include "seqlab/core.h"
#include "seqlab/covering.h"

namespace seqlab {

// One iid Bernoulli joint per grid point theta (probability of outcome 1).
ExpertClass BernoulliIidClass(const std::vector<double>& theta_grid, int n);

// All iid Bernoulli sources. Members are the n+1 maximum-likelihood points
// j/n; the sup is the likelihood at the empirical frequency.
ExpertClass BernoulliMlClass(int n);

// 1-Lipschitz functions on contexts i/g, i = 0..g, with values on the same
// grid. Consecutive values differ by at most one grid step.
ExpertClass LipschitzClass(int grid_res);

// pmf[i-1] = P(T = i); mass 1 - sum(pmf) lies beyond the horizon.
std::vector<double> RenewalHazards(std::span<const double> pmf, int n);
JointDistribution RenewalJoint(std::span<const double> pmf, int n);
ExpertClass RenewalClass(const std::vector<std::vector<double>>& pmfs, int n);
// Geometric inter-arrival law truncated at n: constant hazard h.
std::vector<double> GeometricPmf(double hazard, int n);

struct HilbertBallClass {
  int dim = 0;
  double radius = 1.0;
  int horizon = 0;
  std::vector<std::vector<double>> weights;   // ||w|| <= radius
  std::vector<std::vector<double>> contexts;  // ||x|| <= 1
};

// Weights: lattice points of step 1/resolution inside the unit ball.
HilbertBallClass MakeHilbertBall(int dim, int resolution, int horizon,
                                 std::vector<std::vector<double>> contexts);
double HilbertValue(std::span<const double> w, std::span<const double> x);
ExpertClass HilbertExpertClass(const HilbertBallClass& f);
HilbertBallClass HilbertShrink(const HilbertBallClass& f);

// log((1+a)/2) - log((1+(1-1/n)a)/2) <= 1/(n-1); returns the slack.
double HilbertRoundSlack(double a, int n);

struct HilbertTruncationReport {
  std::size_t draws = 0;
  double min_slack = 0.0;  // min of sup_shrunk + 2 - sup_full
  bool holds = false;
};

// Each draw samples the contexts met along one path of a random tree, and
// the path itself. Contexts lie in the unit ball.
HilbertTruncationReport CheckHilbertTruncation(const HilbertBallClass& f, std::size_t draws,
                                               std::uint64_t seed);

EntropyProfile HilbertEntropyScan(const HilbertBallClass& f, const ContextTree& x,
                                  const std::vector<double>& scales);

}  // namespace seqlab

#endif  // SEQLAB_ZOO_H_
