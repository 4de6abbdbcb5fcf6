// Copyright 2026 The mapnet Authors
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

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mapnet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or subsystem indices that do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A k-copy operator would exceed the configured row cap.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

/// Out-of-range scalar argument (k = 0, werner p > 1, c1 > c2, ...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class NotPsdError : public Error {
 public:
  using Error::Error;
};

/// A matrix failed the density-matrix checks. The message names the violated
/// property ("trace", "hermitian" or "psd") and the numeric residue.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// Observable whose shifted spectrum collapses to zero (a_plus <= 0).
class DegenerateObservableError : public Error {
 public:
  using Error::Error;
};

/// V0 and V1 do not commute, so the block dilation is not unitary.
class InconsistentPovmError : public Error {
 public:
  using Error::Error;
};

class InvalidVisibilityError : public Error {
 public:
  using Error::Error;
};

class InvalidGammaError : public Error {
 public:
  using Error::Error;
};

/// Positive-map pipeline handed a map that does not preserve hermiticity.
class CriterionMisuseError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON state, map or network file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Polynomial root finding produced roots that are not real within tolerance.
class ReconstructionError : public Error {
 public:
  ReconstructionError(const std::string& what, std::vector<std::complex<double>> roots)
      : Error(what), roots_(std::move(roots)) {}

  const std::vector<std::complex<double>>& roots() const noexcept { return roots_; }

 private:
  std::vector<std::complex<double>> roots_;
};

}  // namespace mapnet
