// Copyright 2026 The revgeo Authors
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

#ifndef REVGEO_ERROR_HPP_
#define REVGEO_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <utility>

namespace revgeo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed surface description: bad JSON, unknown field, wrong type.
class SpecError : public Error {
 public:
  SpecError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Well-formed input outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  DomainError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// A numerical procedure could not finish (step underflow, budget, ...).
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double t)
      : Error(what), t_(t) {}
  // Time (or abscissa) at which the failure was detected.
  double t() const { return t_; }

 private:
  double t_;
};

}  // namespace revgeo

#endif  // REVGEO_ERROR_HPP_
