// Copyright 2026 The mubkit Authors
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

#include "test_util.h"

#include <cmath>
#include <functional>
#include <random>

namespace testing_oracles {

namespace {

std::size_t rank_of(const std::vector<int> &v, int d) {
    std::size_t r = 0;
    for (int c : v) r = r * d + static_cast<std::size_t>(c);
    return r;
}

std::vector<int> unrank(std::size_t r, int d, int len) {
    std::vector<int> v(len);
    for (int i = len - 1; i >= 0; --i) {
        v[i] = static_cast<int>(r % d);
        r /= d;
    }
    return v;
}

int form(const std::vector<int> &u, const std::vector<int> &v, int n, int d) {
    int s = 0;
    for (int i = 0; i < n; ++i) s += u[i] * v[n + i] - v[i] * u[n + i];
    return ((s % d) + d) % d;
}

}  // namespace

std::set<std::size_t> span_ranks(const std::vector<std::vector<int>> &vectors, int d) {
    const int len = static_cast<int>(vectors.at(0).size());
    std::set<std::size_t> out{0};
    // Every coefficient tuple in Z_d^k.
    std::vector<int> coeff(vectors.size(), 0);
    while (true) {
        std::vector<int> sum(len, 0);
        for (std::size_t k = 0; k < vectors.size(); ++k) {
            for (int i = 0; i < len; ++i) sum[i] = (sum[i] + coeff[k] * vectors[k][i]) % d;
        }
        out.insert(rank_of(sum, d));
        std::size_t k = 0;
        while (k < coeff.size() && ++coeff[k] == d) coeff[k++] = 0;
        if (k == coeff.size()) break;
    }
    return out;
}

std::size_t brute_force_lagrangian_count(int d, int n) {
    const int len = 2 * n;
    std::size_t total = 1;
    for (int i = 0; i < len; ++i) total *= d;
    std::size_t m = 1;
    for (int i = 0; i < n; ++i) m *= d;
    std::set<std::set<std::size_t>> found;
    std::vector<std::size_t> pick(n, 1);
    std::function<void(int)> rec = [&](int depth) {
        if (depth == n) {
            std::vector<std::vector<int>> vs;
            for (auto r : pick) vs.push_back(unrank(r, d, len));
            for (int a = 0; a < n; ++a) {
                for (int b = a + 1; b < n; ++b) {
                    if (form(vs[a], vs[b], n, d) != 0) return;
                }
            }
            auto members = span_ranks(vs, d);
            if (members.size() == m) found.insert(members);
            return;
        }
        // Non-decreasing picks are enough to reach every spanning set.
        for (std::size_t r = depth == 0 ? 1 : pick[depth - 1] + 1; r < total; ++r) {
            pick[depth] = r;
            rec(depth + 1);
        }
    };
    rec(0);
    return found.size();
}

Eigen::MatrixXcd explicit_weyl(int d, const std::vector<int> &x, const std::vector<int> &z) {
    const double pi = std::acos(-1.0);
    const std::complex<double> omega = std::polar(1.0, 2 * pi / d);
    Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        X((j + 1) % d, j) = 1.0;
        Z(j, j) = std::pow(omega, j);
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t p = 0; p < x.size(); ++p) {
        Eigen::MatrixXcd local = Eigen::MatrixXcd::Identity(d, d);
        for (int k = 0; k < x[p]; ++k) local = X * local;
        Eigen::MatrixXcd zpow = Eigen::MatrixXcd::Identity(d, d);
        for (int k = 0; k < z[p]; ++k) zpow = Z * zpow;
        local = local * zpow;
        std::complex<double> phase;
        if (d == 2) {
            phase = std::pow(std::complex<double>(0, 1), x[p] * z[p]);
        } else {
            int half = (d + 1) / 2;  // inverse of 2 mod d
            phase = std::pow(omega, (half * x[p] * z[p]) % d);
        }
        local *= phase;
        Eigen::MatrixXcd next(out.rows() * d, out.cols() * d);
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(i * d, j * d, d, d) = out(i, j) * local;
        }
        out = next;
    }
    return out;
}

Eigen::MatrixXcd joint_eigenvectors(const std::vector<Eigen::MatrixXcd> &ops) {
    const Eigen::Index m = ops.at(0).rows();
    // Irrational weights separate joint eigenvalues generically.
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(m, m);
    double w = 1.0;
    for (const auto &op : ops) {
        h += w * (op + op.adjoint());
        h += std::complex<double>(0, w * std::sqrt(2.0)) * (op - op.adjoint());
        w *= std::sqrt(3.0);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    return es.eigenvectors();
}

int schmidt_rank(const Eigen::VectorXcd &psi, const std::vector<int> &dims, const std::vector<int> &block,
                 double cutoff) {
    const int n = static_cast<int>(dims.size());
    std::vector<bool> in(n, false);
    for (int b : block) in[b] = true;
    std::size_t rows = 1, cols = 1;
    for (int p = 0; p < n; ++p) (in[p] ? rows : cols) *= dims[p];
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(rows, cols);
    for (Eigen::Index idx = 0; idx < psi.size(); ++idx) {
        // Decode digits, particle 0 most significant.
        std::vector<int> digit(n);
        std::size_t rest = idx;
        for (int p = n - 1; p >= 0; --p) {
            digit[p] = static_cast<int>(rest % dims[p]);
            rest /= dims[p];
        }
        std::size_t r = 0, c = 0;
        for (int p = 0; p < n; ++p) {
            if (in[p]) {
                r = r * dims[p] + digit[p];
            } else {
                c = c * dims[p] + digit[p];
            }
        }
        mat(r, c) = psi(idx);
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(mat);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) rank += svd.singularValues()(i) > cutoff;
    return rank;
}

bool same_rays(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b, double tol) {
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
        bool hit = false;
        for (Eigen::Index j = 0; j < b.cols() && !hit; ++j) {
            hit = std::abs(std::abs(a.col(i).dot(b.col(j))) - 1.0) < tol;
        }
        if (!hit) return false;
    }
    return true;
}

Eigen::VectorXcd random_vector(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(dim);
    for (std::size_t i = 0; i < dim; ++i) v(i) = {g(rng), g(rng)};
    return v.normalized();
}

}  // namespace testing_oracles
