// mamimo: massive-MIMO uplink rate engine for human/machine-type coexistence
// Copyright (C) 2026 The mamimo authors
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
// ------------------------------------------------------------------------

#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace mamimo {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer, used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Engine for stream `stream` of a seeded family. Streams with distinct
/// indices are statistically independent and reproducible in isolation,
/// so parallel batches do not depend on scheduling order.
inline Rng make_stream(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{splitmix64(seed), splitmix64(seed ^ splitmix64(stream + 1)), stream};
    return Rng(seq);
}

/// Circularly-symmetric complex Gaussian sampler with variance `variance`
/// (half per real dimension).
class ComplexNormal {
public:
    explicit ComplexNormal(double variance = 1.0) : real_(0.0, std::sqrt(variance / 2.0)) {}

    std::complex<double> operator()(Rng& rng) {
        const double re = real_(rng);
        const double im = real_(rng);
        return {re, im};
    }

    template <typename Derived>
    void fill(const Eigen::MatrixBase<Derived>& out, Rng& rng) {
        auto& m = const_cast<Eigen::MatrixBase<Derived>&>(out);
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = (*this)(rng);
    }

private:
    std::normal_distribution<double> real_;
};

}  // namespace mamimo
