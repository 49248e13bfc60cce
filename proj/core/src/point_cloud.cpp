/*
 Copyright 2026 The reachtree Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#include "reachtree/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace reachtree {

double bbox_diagonal(const PointCloud& cloud) {
    if (cloud.empty()) return 0.0;
    const int d = cloud.dim();
    std::vector<double> lo(static_cast<std::size_t>(d), std::numeric_limits<double>::infinity());
    std::vector<double> hi(static_cast<std::size_t>(d), -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto p = cloud[i];
        for (std::size_t k = 0; k < p.size(); ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    }
    double s = 0.0;
    for (std::size_t k = 0; k < lo.size(); ++k) s += (hi[k] - lo[k]) * (hi[k] - lo[k]);
    return std::sqrt(s);
}

std::vector<std::size_t> unique_point_indices(const PointCloud& cloud, double tol) {
    const std::size_t n = cloud.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (n == 0) return order;

    // sweep along the widest axis; only points within tol along it can merge
    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t k = 0; k < static_cast<std::size_t>(cloud.dim()); ++k) {
        double lo = cloud[0][k], hi = cloud[0][k];
        for (std::size_t i = 1; i < n; ++i) {
            lo = std::min(lo, cloud[i][k]);
            hi = std::max(hi, cloud[i][k]);
        }
        if (hi - lo > widest) {
            widest = hi - lo;
            axis = k;
        }
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double xa = cloud[a][axis], xb = cloud[b][axis];
        return xa < xb || (xa == xb && a < b);
    });
    const double tol2 = tol * tol;
    std::vector<char> removed(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
        const std::size_t i = order[s];
        if (removed[i]) continue;
        const auto pi = cloud[i];
        for (std::size_t t = s + 1; t < n; ++t) {
            const std::size_t j = order[t];
            if (cloud[j][axis] - pi[axis] > tol) break;
            if (removed[j]) continue;
            double d2 = 0.0;
            const auto pj = cloud[j];
            for (std::size_t k = 0; k < pi.size(); ++k) d2 += (pi[k] - pj[k]) * (pi[k] - pj[k]);
            if (d2 <= tol2) {
                if (j < i) {
                    removed[i] = 1;
                    break;
                }
                removed[j] = 1;
            }
        }
    }
    std::vector<std::size_t> kept;
    kept.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!removed[i]) kept.push_back(i);
    }
    return kept;
}

}  // namespace reachtree
