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

#include "ioncavity/qcore/hilbert_space.hpp"

#include <algorithm>
#include <sstream>

#include "ioncavity/error.hpp"

namespace ioncavity::qcore {

HilbertSpace::HilbertSpace(std::initializer_list<std::size_t> factors)
    : HilbertSpace(std::vector<std::size_t>(factors)) {}

HilbertSpace::HilbertSpace(std::vector<std::size_t> factors) : factors_(std::move(factors)) {
  dim_ = 1;
  for (std::size_t f : factors_) {
    if (f == 0) {
      throw DimensionError("HilbertSpace: factor dimension must be >= 1");
    }
    dim_ *= f;
  }
}

std::size_t HilbertSpace::factor(std::size_t slot) const {
  if (slot >= factors_.size()) {
    throw DimensionError("HilbertSpace: slot " + std::to_string(slot) + " out of range for " +
                         to_string());
  }
  return factors_[slot];
}

HilbertSpace HilbertSpace::concat(const HilbertSpace& other) const {
  std::vector<std::size_t> f = factors_;
  f.insert(f.end(), other.factors_.begin(), other.factors_.end());
  return HilbertSpace(std::move(f));
}

HilbertSpace HilbertSpace::without(std::span<const std::size_t> slots) const {
  std::vector<std::size_t> f;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (std::find(slots.begin(), slots.end(), k) == slots.end()) f.push_back(factors_[k]);
  }
  for (std::size_t s : slots) factor(s);
  return HilbertSpace(std::move(f));
}

std::size_t HilbertSpace::flatten(std::span<const std::size_t> digits) const {
  if (digits.size() != factors_.size()) {
    throw DimensionError("HilbertSpace::flatten: expected " + std::to_string(factors_.size()) +
                         " digits, got " + std::to_string(digits.size()));
  }
  std::size_t index = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (digits[k] >= factors_[k]) {
      throw DimensionError("HilbertSpace::flatten: digit " + std::to_string(digits[k]) +
                           " out of range in slot " + std::to_string(k));
    }
    index = index * factors_[k] + digits[k];
  }
  return index;
}

std::vector<std::size_t> HilbertSpace::unflatten(std::size_t index) const {
  std::vector<std::size_t> digits(factors_.size());
  for (std::size_t k = factors_.size(); k-- > 0;) {
    digits[k] = index % factors_[k];
    index /= factors_[k];
  }
  return digits;
}

std::size_t HilbertSpace::digit(std::size_t index, std::size_t slot) const {
  std::size_t stride = 1;
  for (std::size_t k = factors_.size(); k-- > slot + 1;) stride *= factors_[k];
  return (index / stride) % factor(slot);
}

std::string HilbertSpace::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (k) out << ',';
    out << factors_[k];
  }
  out << ']';
  return out.str();
}

void require_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* what) {
  if (!(a == b)) {
    throw DimensionError(std::string(what) + ": space mismatch " + a.to_string() + " vs " +
                         b.to_string());
  }
}

}  // namespace ioncavity::qcore
