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

#ifndef SEQLAB_DIMENSION_H_
#define SEQLAB_DIMENSION_H_

#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "seqlab/core.h"

namespace seqlab {

using BigInt = boost::multiprecision::cpp_int;

// Trees are stored in PathSpace(depth, 2) prefix order.
struct ShatterWitness {
  int depth = 0;
  std::vector<int> contexts;                    // 2^d - 1
  std::vector<std::pair<double, double>> s;     // 2^d - 1, s[0] < s[1]
  std::vector<std::size_t> experts;             // 2^d, path-code order
};

struct ShatterResult {
  int dimension = 0;
  std::optional<ShatterWitness> witness;  // present when dimension > 0
  bool truncated = false;                 // search budget ran out; dimension is a lower bound
};

// Checks every clause of the (alpha, beta)-shattering definition.
bool ValidateShatterWitness(const ExpertClass& f, const ShatterWitness& w, double alpha,
                            double beta);

// s-values searched on the grid beta + i beta/2 inside [beta, 1 - beta].
ShatterResult ShatterDimension(const ExpertClass& f, double alpha, double beta, int max_depth);

// M = 1/(2 beta) when it is an integer; domain error otherwise.
int GridCount(double beta);
// The grid value (2i + 1) beta for index i in [0, M).
double GridValue(int index, double beta);
// Index of the U_beta value nearest to v (ties go to the lower value).
int RoundToGrid(double v, double beta);
ExpertClass RoundClass(const ExpertClass& f, double beta);

ShatterResult DiscreteShatterDimension(const ExpertClass& f, double beta, double alpha,
                                       int max_depth);

BigInt GBeta(int n, int d, int m);  // sum_{i<=d} C(n,i) (m-1)^i
BigInt GBeta(int n, int d, double beta);

struct DimensionEntropyReport {
  int dimension = 0;                 // discrete dimension of the rounded class
  std::size_t cover_size = 0;
  BigInt g_bound;                    // g_beta(n, dimension)
  double entropy = 0.0;              // log cover_size
  double entropy_bound = 0.0;        // dimension * log(e n / beta)
  bool rounded_cover_valid = false;  // cover of the rounded class at alpha
  bool cover_valid = false;          // cover of F∘x at alpha + sqrt(2 beta)
  bool size_holds = false;           // cover_size <= g_bound
  bool entropy_holds = false;
  std::vector<std::vector<double>> cover;  // value trees
};

DimensionEntropyReport DimensionEntropyBound(const ExpertClass& f, const ContextTree& x,
                                             double alpha, double beta);

struct SkippingTree {
  int color = 0;
  int depth = 0;
  std::vector<std::size_t> nodes;  // input node per output node, prefix order
};

bool ValidateSkippingTree(const std::vector<int>& colors, int n, const SkippingTree& tree);
// `colors` holds one color in [0, k) per node of a depth-n tree.
std::optional<SkippingTree> FindMonochromeSkippingTree(const std::vector<int>& colors, int n,
                                                       int k, int d);

}  // namespace seqlab

#endif  // SEQLAB_DIMENSION_H_
