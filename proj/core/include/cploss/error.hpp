// Copyright 2026 The cploss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CPLOSS_ERROR_HPP_
#define CPLOSS_ERROR_HPP_

#include <limits>
#include <stdexcept>
#include <string>

namespace cploss {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument is outside the domain of the operation (bad probability,
// unknown catalog name, invalid tolerance, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A numerical routine failed (NaN encountered, no convergence).
class NumericError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature stopped before meeting its tolerance. The best
// available estimate and its error bound are kept for diagnostics.
class QuadratureError : public NumericError {
 public:
  QuadratureError(const std::string& what, double partial_estimate,
                  double error_estimate)
      : NumericError(what),
        partial_estimate_(partial_estimate),
        error_estimate_(error_estimate) {}

  double partial_estimate() const { return partial_estimate_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double partial_estimate_;
  double error_estimate_;
};

// The integrand took an infinite value: the integral diverges.
class DivergentIntegralError : public QuadratureError {
 public:
  DivergentIntegralError(const std::string& what, double partial_estimate)
      : QuadratureError(what, partial_estimate,
                        std::numeric_limits<double>::infinity()) {}
};

// A supplied loss or weight is not proper (negative weight estimate,
// non-monotone reference link, ...).
class ImpropernessError : public Error {
 public:
  using Error::Error;
};

// A margin loss has flat spots, so its proper link is not unique.
class FlatSpotError : public Error {
 public:
  using Error::Error;
};

}  // namespace cploss

#endif  // CPLOSS_ERROR_HPP_
