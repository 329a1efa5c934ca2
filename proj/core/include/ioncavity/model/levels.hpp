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

namespace ioncavity::model {

// Ion level indices. The four-level effective ion uses the first four.
//   S  = S1/2 m=-1/2      S' = S1/2 m=+1/2
//   D  = D5/2 m=-1/2      D' = D5/2 m=+3/2
//   Pm = P3/2 m=-1/2      Pp = P3/2 m=+1/2
namespace level {
inline constexpr std::size_t S = 0;
inline constexpr std::size_t Sp = 1;
inline constexpr std::size_t D = 2;
inline constexpr std::size_t Dp = 3;
inline constexpr std::size_t Pm = 4;
inline constexpr std::size_t Pp = 5;
}  // namespace level

inline constexpr std::size_t kFullIonLevels = 6;
inline constexpr std::size_t kEffectiveIonLevels = 4;

// Factor order [ion1, ion2, mode H, mode V].
namespace slot {
inline constexpr std::size_t ion1 = 0;
inline constexpr std::size_t ion2 = 1;
inline constexpr std::size_t mode_H = 2;
inline constexpr std::size_t mode_V = 3;
}  // namespace slot

inline constexpr std::size_t kDefaultPhotonCutoff = 2;

}  // namespace ioncavity::model
