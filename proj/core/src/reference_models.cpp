// Copyright 2026 The qhit Authors
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


#include "qhit/reference_models.hpp"

#include <cmath>

#include "qhit/errors.hpp"

namespace qhit::models {

std::vector<ComplexMatrix> two_level_kraus() {
  const double s = 1.0 / std::sqrt(3.0);
  ComplexMatrix l(2, 2);
  l << s, s, 0.0, s;
  ComplexMatrix r(2, 2);
  r << s, 0.0, -s, s;
  return {l, r};
}

SuperOperator two_level_channel() { return from_kraus(two_level_kraus()); }

std::vector<ComplexMatrix> four_level_kraus(double a) {
  if (!(a > 0.0 && a < 1.0)) throw ArgumentError("four_level_kraus: parameter must lie in (0, 1)");
  const double b = std::sqrt(1.0 - a * a);
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<ComplexMatrix> v(4, ComplexMatrix::Zero(4, 4));
  v[0](0, 0) = a;
  v[0](0, 3) = b;
  v[1](1, 0) = -b;
  v[1](1, 3) = a;
  v[2](2, 1) = h;
  v[2](2, 2) = h;
  v[3](3, 1) = h;
  v[3](3, 2) = -h;
  return v;
}

SuperOperator four_level_channel(double a) { return from_kraus(four_level_kraus(a)); }

RealMatrix two_state_chain(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw ArgumentError("two_state_chain: switch probability must lie in (0, 1]");
  RealMatrix m(2, 2);
  m << 1.0 - p, p, p, 1.0 - p;
  return m;
}

RealMatrix cycle_chain(Eigen::Index n) {
  if (n < 2) throw ArgumentError("cycle_chain: need at least two states");
  RealMatrix m = RealMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m((k + 1) % n, k) = 1.0;
  return m;
}

}  // namespace qhit::models
