#pragma once

#include <cmath>
#include <vector>

#include "foldkit/errors.hpp"

namespace foldkit {

struct WlsFit {
    std::vector<double> coefficients;  // one per feature column
    double intercept = 0.0;
};

// Weighted least squares with ridge damping, solved through the normal
// equations: (X'WX + lambda*I) b = X'Wy with an intercept column appended.
// The damping applies to every diagonal entry, intercept included, which
// keeps singular designs (constant or collinear columns) well-posed and the
// solution deterministic. Gaussian elimination with partial pivoting.
inline WlsFit solve_weighted_ridge(const std::vector<std::vector<double>>& rows,
                                   const std::vector<double>& targets,
                                   const std::vector<double>& weights, double lambda) {
    const std::size_t n = rows.size();
    if (n == 0 || targets.size() != n || weights.size() != n)
        throw ContractError("solve_weighted_ridge: inconsistent input sizes");
    const std::size_t d = rows[0].size();
    const std::size_t m = d + 1;  // + intercept

    double weight_mass = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ContractError("solve_weighted_ridge: negative weight");
        weight_mass += w;
    }
    if (weight_mass <= 0.0) throw ContractError("solve_weighted_ridge: all weights are zero");

    // G = X'WX + lambda*I (augmented), b = X'Wy
    std::vector<std::vector<double>> g(m, std::vector<double>(m, 0.0));
    std::vector<double> b(m, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        if (rows[r].size() != d)
            throw ContractError("solve_weighted_ridge: ragged design matrix");
        const double w = weights[r];
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < m; ++i) {
            const double xi = i < d ? rows[r][i] : 1.0;
            b[i] += w * xi * targets[r];
            for (std::size_t j = i; j < m; ++j) {
                const double xj = j < d ? rows[r][j] : 1.0;
                g[i][j] += w * xi * xj;
            }
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        g[i][i] += lambda;
        for (std::size_t j = 0; j < i; ++j) g[i][j] = g[j][i];
    }

    // forward elimination with partial pivoting
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::fabs(g[order[r]][col]) > std::fabs(g[order[pivot]][col])) pivot = r;
        std::swap(order[col], order[pivot]);
        const double head = g[order[col]][col];
        if (head == 0.0) continue;  // lambda > 0 prevents this in practice
        for (std::size_t r = col + 1; r < m; ++r) {
            const double factor = g[order[r]][col] / head;
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < m; ++c) g[order[r]][c] -= factor * g[order[col]][c];
            b[order[r]] -= factor * b[order[col]];
        }
    }

    // back substitution
    std::vector<double> solution(m, 0.0);
    for (std::size_t i = m; i-- > 0;) {
        double acc = b[order[i]];
        for (std::size_t j = i + 1; j < m; ++j) acc -= g[order[i]][j] * solution[j];
        const double head = g[order[i]][i];
        solution[i] = head != 0.0 ? acc / head : 0.0;
    }

    WlsFit fit;
    fit.coefficients.assign(solution.begin(), solution.begin() + d);
    fit.intercept = solution[d];
    return fit;
}

}  // namespace foldkit
