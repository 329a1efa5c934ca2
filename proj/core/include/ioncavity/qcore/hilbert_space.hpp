// Copyright 2026 The ioncavity Authors
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

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ioncavity::qcore {

// Ordered list of subsystem dimensions. Slot 0 is the most significant digit
// of the flattened basis index, matching Kronecker-product order.
class HilbertSpace {
 public:
  HilbertSpace() = default;
  HilbertSpace(std::initializer_list<std::size_t> factors);
  explicit HilbertSpace(std::vector<std::size_t> factors);

  std::span<const std::size_t> factors() const { return factors_; }
  std::size_t num_factors() const { return factors_.size(); }
  std::size_t factor(std::size_t slot) const;
  std::size_t dim() const { return dim_; }

  HilbertSpace concat(const HilbertSpace& other) const;
  HilbertSpace without(std::span<const std::size_t> slots) const;

  std::size_t flatten(std::span<const std::size_t> digits) const;
  std::vector<std::size_t> unflatten(std::size_t index) const;
  std::size_t digit(std::size_t index, std::size_t slot) const;

  std::string to_string() const;

  bool operator==(const HilbertSpace& other) const { return factors_ == other.factors_; }

 private:
  std::vector<std::size_t> factors_;
  std::size_t dim_ = 1;
};

// Throws DimensionError naming `what` when the spaces differ.
void require_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* what);

}  // namespace ioncavity::qcore
