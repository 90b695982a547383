// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The risce Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "risce/bench.hpp"
#include "risce/error.hpp"

namespace risce {

CMatrix align_column_signs(const CMatrix& H_true, const CMatrix& H_est) {
  if (H_true.rows() != H_est.rows() || H_true.cols() != H_est.cols()) {
    throw ShapeError("align_column_signs: shape mismatch");
  }
  CMatrix out = H_est;
  for (Eigen::Index n = 0; n < out.cols(); ++n) {
    if ((H_true.col(n) + out.col(n)).squaredNorm() < (H_true.col(n) - out.col(n)).squaredNorm()) {
      out.col(n) = -out.col(n);
    }
  }
  return out;
}

double nmse(const CMatrix& H_true, const CMatrix& H_est, Alignment alignment) {
  if (H_true.rows() != H_est.rows() || H_true.cols() != H_est.cols()) {
    throw ShapeError("nmse: shape mismatch");
  }
  const double ref = H_true.squaredNorm();
  if (ref == 0.0) throw UndefinedMetricError("nmse: true channel is zero");
  if (alignment == Alignment::column_sign) {
    return (H_true - align_column_signs(H_true, H_est)).squaredNorm() / ref;
  }
  return (H_true - H_est).squaredNorm() / ref;
}

double effective_power(const CMatrix& H, const CVector& theta) {
  if (H.cols() != theta.size()) throw ShapeError("effective_power: theta length != N");
  return (H * theta).squaredNorm();
}

}  // namespace risce
