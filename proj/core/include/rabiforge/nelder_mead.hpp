// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

namespace rabiforge {

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// Derivative-free simplex minimiser with the standard reflection/expansion/
/// contraction/shrink coefficients (1, 2, 0.5, 0.5). Terminates when the
/// simplex cost spread drops below spread_tol or the evaluation budget runs
/// out; always returns the best point seen.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0, double initial_step,
                                    double spread_tol, long max_evals) {
    const std::size_t n = x0.size();
    NelderMeadResult result;
    if (n == 0) {
        result.x = std::move(x0);
        result.converged = true;
        return result;
    }

    constexpr double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += initial_step;

    std::vector<double> fv(n + 1);
    long evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };
    for (std::size_t i = 0; i <= n && evals < max_evals; ++i) fv[i] = eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&]() {
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    };

    bool converged = false;
    while (evals < max_evals) {
        sort_simplex();
        if (fv[order[n]] - fv[order[0]] < spread_tol) {
            converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[order[i]][d] / double(n);
        const std::vector<double>& worst = pts[order[n]];

        std::vector<double> reflected(n);
        for (std::size_t d = 0; d < n; ++d)
            reflected[d] = centroid[d] + alpha * (centroid[d] - worst[d]);
        const double fr = eval(reflected);

        if (fr < fv[order[0]]) {
            std::vector<double> expanded(n);
            for (std::size_t d = 0; d < n; ++d)
                expanded[d] = centroid[d] + gamma * (reflected[d] - centroid[d]);
            const double fe = eval(expanded);
            if (fe < fr) {
                pts[order[n]] = std::move(expanded);
                fv[order[n]] = fe;
            } else {
                pts[order[n]] = std::move(reflected);
                fv[order[n]] = fr;
            }
        } else if (fr < fv[order[n - 1]]) {
            pts[order[n]] = std::move(reflected);
            fv[order[n]] = fr;
        } else {
            const bool outside = fr < fv[order[n]];
            std::vector<double> contracted(n);
            for (std::size_t d = 0; d < n; ++d) {
                const double towards = outside ? reflected[d] : worst[d];
                contracted[d] = centroid[d] + rho * (towards - centroid[d]);
            }
            const double fc = eval(contracted);
            if (fc < (outside ? fr : fv[order[n]])) {
                pts[order[n]] = std::move(contracted);
                fv[order[n]] = fc;
            } else {
                for (std::size_t i = 1; i <= n && evals < max_evals; ++i) {
                    for (std::size_t d = 0; d < n; ++d)
                        pts[order[i]][d] =
                            pts[order[0]][d] + sigma * (pts[order[i]][d] - pts[order[0]][d]);
                    fv[order[i]] = eval(pts[order[i]]);
                }
            }
        }
    }

    sort_simplex();
    result.x = pts[order[0]];
    result.value = fv[order[0]];
    result.evaluations = evals;
    result.converged = converged;
    return result;
}

}  // namespace rabiforge
