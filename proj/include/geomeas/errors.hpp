// Copyright 2026 The geomeas Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace geomeas {

/// Malformed or out-of-domain input (bad literal, bad file, non-unit Bloch vector, bad range).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The state itself cannot be used: zero vector, or not normalized where that is required.
class StateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Broken numerical invariant (e.g. a "real" trace with a large imaginary part).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The stationarity solver found no admissible root from any start.
class NoStationaryPoint : public std::runtime_error {
 public:
  NoStationaryPoint() : std::runtime_error("no stationary point") {}
};

/// Both fixed factors are orthogonal to the state; every third factor gives zero overlap.
class OrthogonalPair : public std::runtime_error {
 public:
  OrthogonalPair() : std::runtime_error("orthogonal pair") {}
};

}  // namespace geomeas
