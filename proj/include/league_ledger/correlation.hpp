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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "league_ledger/errors.hpp"

namespace ledger {

/// Fractional (average) ranks, 1-based; tied observations share the mean of
/// the positions they occupy.
inline std::vector<double> fractional_ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b];
    });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = avg;
        }
        i = j + 1;
    }
    return ranks;
}

/// Pearson correlation; 0 when either side has zero variance.
inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        fail(ErrorKind::invalid_argument, "pearson: size mismatch");
    }
    if (x.size() < 2) {
        fail(ErrorKind::invalid_argument, "pearson: need at least 2 observations");
    }
    double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx;
        double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    double denom = std::sqrt(sxx * syy);
    if (denom == 0.0) return 0.0;
    return sxy / denom;
}

/// Spearman's rho: Pearson correlation of fractional ranks (tie-aware).
inline double spearman_rho(std::span<const double> x, std::span<const double> y) {
    std::vector<double> rx = fractional_ranks(x);
    std::vector<double> ry = fractional_ranks(y);
    return pearson(rx, ry);
}

/// Kendall's tau-b (tie-adjusted):
///   tau_b = (C - D) / sqrt((C + D + Tx) * (C + D + Ty))
/// where Tx / Ty count pairs tied only in x / only in y; pairs tied in both
/// are discounted entirely. 0 when a denominator factor vanishes.
inline double kendall_tau_b(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        fail(ErrorKind::invalid_argument, "kendall_tau_b: size mismatch");
    }
    if (x.size() < 2) {
        fail(ErrorKind::invalid_argument, "kendall_tau_b: need at least 2 observations");
    }
    long long concordant = 0;
    long long discordant = 0;
    long long ties_x = 0;
    long long ties_y = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            double dx = x[i] - x[j];
            double dy = y[i] - y[j];
            if (dx == 0.0 && dy == 0.0) continue;
            if (dx == 0.0) {
                ++ties_x;
            } else if (dy == 0.0) {
                ++ties_y;
            } else if (dx * dy > 0.0) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    double fx = static_cast<double>(concordant + discordant + ties_x);
    double fy = static_cast<double>(concordant + discordant + ties_y);
    double denom = std::sqrt(fx * fy);
    if (denom == 0.0) return 0.0;
    return static_cast<double>(concordant - discordant) / denom;
}

}  // namespace ledger
