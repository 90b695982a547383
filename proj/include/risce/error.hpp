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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace risce {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value (dimensions, path counts, solver options...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An estimator was handed an observation it cannot interpret, e.g. a
/// DFT estimator fed with an ON/OFF schedule.
class MisuseError : public Error {
 public:
  using Error::Error;
};

/// The stacked measurement system does not determine the unknowns.
class IdentifiabilityError : public Error {
 public:
  using Error::Error;
};

/// Typical-user columns too small to serve as a reference for the
/// multi-user correlation estimator.
class DegenerateColumnError : public IdentifiabilityError {
 public:
  DegenerateColumnError(const std::string& what, std::vector<int> columns)
      : IdentifiabilityError(what), columns_(std::move(columns)) {}
  const std::vector<int>& columns() const noexcept { return columns_; }

 private:
  std::vector<int> columns_;
};

/// A metric is undefined for its arguments (NMSE against a zero channel).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace risce
