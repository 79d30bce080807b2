// Copyright 2026 The plateau-lab Authors
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

#include <array>
#include <complex>
#include <cstdint>
#include <limits>

namespace plateau {

// Philox4x64-10 block function (Salmon et al., SC'11).
std::array<std::uint64_t, 4> philox4x64(std::array<std::uint64_t, 4> counter,
                                        std::array<std::uint64_t, 2> key);

// Counter-based stream keyed by (seed, stream_id). `domain` separates
// independent uses of the same (seed, stream_id) pair.
// Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t domain = 0)
      : seed_(seed), stream_id_(stream_id), domain_(domain) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  double uniform();                   // [0, 1)
  double normal();                    // N(0, 1)
  std::complex<double> complex_normal();  // real and imaginary parts N(0, 1/2)
  std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound)

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t domain() const { return domain_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t domain_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 4> buffer_{};
  int used_ = 4;
};

// Domain tags used by the library. Experiment cells derive their own tags
// from these with cell_domain().
namespace domain {
inline constexpr std::uint64_t kSample = 0x1000;
inline constexpr std::uint64_t kBootstrap = 0x2000;
inline constexpr std::uint64_t kMoments = 0x3000;
inline constexpr std::uint64_t kInstance = 0x4000;
}  // namespace domain

}  // namespace plateau
