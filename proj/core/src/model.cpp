// Copyright 2026 The qvis Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qvis/model.hpp"

#include <cmath>
#include <string>

#include "qvis/error.hpp"

namespace qvis {

void QuorumSpec::validate() const {
  if (n < 1 || n > kMaxReplicas) {
    throw InvalidArgument("N must satisfy 1 <= N <= " +
                          std::to_string(kMaxReplicas) + ", got " +
                          std::to_string(n));
  }
  if (w < 1 || w > n) {
    throw InvalidArgument("W must satisfy 1 <= W <= N, got W=" +
                          std::to_string(w) + " N=" + std::to_string(n));
  }
  if (r < 1 || r > n) {
    throw InvalidArgument("R must satisfy 1 <= R <= N, got R=" +
                          std::to_string(r) + " N=" + std::to_string(n));
  }
}

void DelayModel::validate() const {
  if (!std::isfinite(write_shift) || write_shift < 0.0) {
    throw InvalidArgument("write shift must be finite and >= 0");
  }
  if (!std::isfinite(read_shift) || read_shift < 0.0) {
    throw InvalidArgument("read shift must be finite and >= 0");
  }
}

}  // namespace qvis
