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

#include "mubkit/weyl.h"

#include <algorithm>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mubkit/errors.h"

namespace mubkit {

int inverse_mod(int a, int d) {
    a = mod(a, d);
    if (a == 0) {
        throw std::invalid_argument("zero has no inverse");
    }
    // Extended Euclid.
    int t = 0, new_t = 1, r = d, new_r = a;
    while (new_r != 0) {
        int q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    return mod(t, d);
}

int row_reduce(ModMatrix &rows, int d) {
    if (rows.empty()) {
        return 0;
    }
    const std::size_t cols = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && mod(rows[pivot][c], d) == 0) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        int inv = inverse_mod(rows[rank][c], d);
        for (auto &v : rows[rank]) {
            v = mod(static_cast<long long>(v) * inv, d);
        }
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) {
                continue;
            }
            int f = mod(rows[r][c], d);
            if (f == 0) {
                continue;
            }
            for (std::size_t k = 0; k < cols; ++k) {
                rows[r][k] = mod(rows[r][k] - static_cast<long long>(f) * rows[rank][k], d);
            }
        }
        ++rank;
    }
    rows.resize(rank);
    return static_cast<int>(rank);
}

int rank_on_columns(const ModMatrix &rows, const std::vector<int> &columns, int d) {
    if (columns.empty()) {
        return 0;
    }
    ModMatrix restricted;
    restricted.reserve(rows.size());
    for (const auto &row : rows) {
        std::vector<int> r;
        r.reserve(columns.size());
        for (int c : columns) {
            r.push_back(row[c]);
        }
        restricted.push_back(std::move(r));
    }
    return row_reduce(restricted, d);
}

bool is_prime(long long n) {
    if (n < 2) {
        return false;
    }
    for (long long f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            return false;
        }
    }
    return true;
}

PrimeDim::PrimeDim(int d, int n) : d_(d), n_(n), m_(1) {
    if (!is_prime(d)) {
        throw std::invalid_argument("local dimension " + std::to_string(d) + " is not prime");
    }
    if (n < 1) {
        throw std::invalid_argument("particle count must be at least 1");
    }
    for (int i = 0; i < n; ++i) {
        m_ *= static_cast<std::size_t>(d);
        if (m_ > kMaxDimension) {
            throw std::invalid_argument("composite dimension exceeds 2^20");
        }
    }
}

WeylLabel::WeylLabel(std::vector<int> x_part, std::vector<int> z_part)
    : x(std::move(x_part)), z(std::move(z_part)) {
    if (x.size() != z.size()) {
        throw std::invalid_argument("incompatible labels");
    }
}

WeylLabel WeylLabel::from_coords(const std::vector<int> &coords, int d) {
    if (coords.size() % 2 != 0) {
        throw std::invalid_argument("symplectic vector must have even length");
    }
    std::size_t n = coords.size() / 2;
    WeylLabel out;
    for (std::size_t i = 0; i < n; ++i) {
        out.x.push_back(mod(coords[i], d));
        out.z.push_back(mod(coords[n + i], d));
    }
    return out;
}

WeylLabel WeylLabel::from_index(std::size_t index, const PrimeDim &dims) {
    std::vector<int> coords(dims.coords());
    for (int i = dims.coords() - 1; i >= 0; --i) {
        coords[i] = static_cast<int>(index % dims.d());
        index /= dims.d();
    }
    return from_coords(coords, dims.d());
}

WeylLabel WeylLabel::from_pauli_string(const std::string &text) {
    WeylLabel out;
    for (char c : text) {
        switch (c) {
            case 'I': case '_': out.x.push_back(0); out.z.push_back(0); break;
            case 'X': out.x.push_back(1); out.z.push_back(0); break;
            case 'Y': out.x.push_back(1); out.z.push_back(1); break;
            case 'Z': out.x.push_back(0); out.z.push_back(1); break;
            default:
                throw std::invalid_argument(std::string("unknown Pauli letter '") + c + "'");
        }
    }
    return out;
}

bool WeylLabel::is_zero() const {
    return std::all_of(x.begin(), x.end(), [](int v) { return v == 0; }) &&
           std::all_of(z.begin(), z.end(), [](int v) { return v == 0; });
}

std::vector<int> WeylLabel::coords() const {
    std::vector<int> out(x);
    out.insert(out.end(), z.begin(), z.end());
    return out;
}

std::size_t WeylLabel::index(int d) const {
    std::size_t out = 0;
    for (int v : x) {
        out = out * d + v;
    }
    for (int v : z) {
        out = out * d + v;
    }
    return out;
}

std::string WeylLabel::str(int d) const {
    std::ostringstream os;
    if (d == 2) {
        for (std::size_t i = 0; i < n(); ++i) {
            os << "IZXY"[2 * x[i] + z[i]];
        }
        return os.str();
    }
    os << '[';
    for (int v : x) os << v;
    os << '|';
    for (int v : z) os << v;
    os << ']';
    return os.str();
}

WeylLabel add(const WeylLabel &u, const WeylLabel &v, int d) {
    if (u.n() != v.n()) {
        throw std::invalid_argument("incompatible labels");
    }
    WeylLabel out = u;
    for (std::size_t i = 0; i < u.n(); ++i) {
        out.x[i] = mod(u.x[i] + v.x[i], d);
        out.z[i] = mod(u.z[i] + v.z[i], d);
    }
    return out;
}

WeylLabel scale(const WeylLabel &u, int c, int d) {
    WeylLabel out = u;
    for (std::size_t i = 0; i < u.n(); ++i) {
        out.x[i] = mod(static_cast<long long>(c) * u.x[i], d);
        out.z[i] = mod(static_cast<long long>(c) * u.z[i], d);
    }
    return out;
}

int symplectic_form(const WeylLabel &u, const WeylLabel &v, int d) {
    if (u.n() != v.n() || u.z.size() != u.x.size() || v.z.size() != v.x.size()) {
        throw std::invalid_argument("incompatible labels");
    }
    long long acc = 0;
    for (std::size_t i = 0; i < u.n(); ++i) {
        acc += static_cast<long long>(u.x[i]) * v.z[i] - static_cast<long long>(v.x[i]) * u.z[i];
    }
    return mod(acc, d);
}

bool commutes(const WeylLabel &u, const WeylLabel &v, int d) { return symplectic_form(u, v, d) == 0; }

namespace {

int flat_form(const std::vector<int> &u, const std::vector<int> &v, int n, int d) {
    long long acc = 0;
    for (int i = 0; i < n; ++i) {
        acc += static_cast<long long>(u[i]) * v[n + i] - static_cast<long long>(v[i]) * u[n + i];
    }
    return mod(acc, d);
}

std::vector<std::uint32_t> span_indices(const ModMatrix &rows, int d) {
    const std::size_t k = rows.size();
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        total *= d;
    }
    std::vector<std::uint32_t> out;
    out.reserve(total - 1);
    std::vector<int> coeff(k, 0);
    std::vector<int> v(cols);
    for (std::size_t t = 1; t < total; ++t) {
        // Increment the coefficient odometer.
        for (std::size_t i = 0; i < k; ++i) {
            if (++coeff[i] < d) {
                break;
            }
            coeff[i] = 0;
        }
        std::fill(v.begin(), v.end(), 0);
        for (std::size_t i = 0; i < k; ++i) {
            if (coeff[i] == 0) continue;
            for (std::size_t c = 0; c < cols; ++c) {
                v[c] += coeff[i] * rows[i][c];
            }
        }
        std::uint32_t idx = 0;
        for (std::size_t c = 0; c < cols; ++c) {
            idx = idx * d + static_cast<std::uint32_t>(v[c] % d);
        }
        out.push_back(idx);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

CommutingClass::CommutingClass(const std::vector<WeylLabel> &generators, const PrimeDim &dims)
    : dims_(dims) {
    const int d = dims.d();
    const int n = dims.n();
    ModMatrix m;
    for (const auto &g : generators) {
        if (static_cast<int>(g.n()) != n) {
            throw std::invalid_argument("incompatible labels");
        }
        std::vector<int> c = g.coords();
        for (auto &v : c) v = mod(v, d);
        m.push_back(std::move(c));
    }
    if (row_reduce(m, d) != n) {
        throw std::invalid_argument("generators do not span an N-dimensional subspace");
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (flat_form(m[i], m[j], n, d) != 0) {
                throw std::invalid_argument("generators do not commute");
            }
        }
    }
    for (const auto &row : m) {
        rows_.push_back(WeylLabel::from_coords(row, d));
    }
    members_ = span_indices(m, d);
}

std::vector<WeylLabel> CommutingClass::members() const {
    std::vector<WeylLabel> out;
    out.reserve(members_.size());
    for (auto idx : members_) {
        out.push_back(WeylLabel::from_index(idx, dims_));
    }
    return out;
}

bool CommutingClass::contains(const WeylLabel &label) const {
    if (label.is_zero()) {
        return true;
    }
    auto idx = static_cast<std::uint32_t>(label.index(dims_.d()));
    return std::binary_search(members_.begin(), members_.end(), idx);
}

std::size_t lagrangian_count(const PrimeDim &dims) {
    std::size_t out = 1;
    std::size_t power = 1;
    for (int i = 1; i <= dims.n(); ++i) {
        power *= dims.d();
        out *= power + 1;
    }
    return out;
}

namespace {

// Builds reduced row-echelon matrices from the last row upward: each new row has
// a smaller pivot and zeros in every pivot column already chosen, so each
// isotropic subspace is produced exactly once.
class LagrangianEnumerator {
   public:
    LagrangianEnumerator(const PrimeDim &dims, std::vector<CommutingClass> &out)
        : dims_(dims), d_(dims.d()), n_(dims.n()), cols_(2 * dims.n()), out_(out) {}

    void run() { extend(cols_); }

   private:
    void extend(int last_pivot) {
        const int placed = static_cast<int>(rows_.size());
        if (placed == n_) {
            emit();
            return;
        }
        const int remaining_after = n_ - placed - 1;
        for (int p = last_pivot - 1; p >= remaining_after; --p) {
            std::vector<int> free;
            for (int c = p + 1; c < cols_; ++c) {
                if (std::find(pivots_.begin(), pivots_.end(), c) == pivots_.end()) {
                    free.push_back(c);
                }
            }
            std::vector<int> row(cols_, 0);
            row[p] = 1;
            std::vector<int> digits(free.size(), 0);
            while (true) {
                for (std::size_t i = 0; i < free.size(); ++i) {
                    row[free[i]] = digits[i];
                }
                bool isotropic = true;
                for (const auto &other : rows_) {
                    if (flat_form(row, other, n_, d_) != 0) {
                        isotropic = false;
                        break;
                    }
                }
                if (isotropic) {
                    rows_.push_back(row);
                    pivots_.push_back(p);
                    extend(p);
                    rows_.pop_back();
                    pivots_.pop_back();
                }
                std::size_t i = 0;
                for (; i < digits.size(); ++i) {
                    if (++digits[i] < d_) break;
                    digits[i] = 0;
                }
                if (i == digits.size()) break;
            }
        }
    }

    void emit() {
        std::vector<WeylLabel> generators;
        for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
            generators.push_back(WeylLabel::from_coords(*it, d_));
        }
        out_.emplace_back(generators, dims_);
    }

    const PrimeDim &dims_;
    int d_;
    int n_;
    int cols_;
    std::vector<CommutingClass> &out_;
    ModMatrix rows_;
    std::vector<int> pivots_;
};

}  // namespace

std::vector<CommutingClass> enumerate_lagrangians(const PrimeDim &dims, const EnumerationLimits &limits) {
    if (dims.m() > limits.max_dimension || lagrangian_count(dims) > limits.max_classes) {
        throw BudgetError("enumeration too large; use sampled mode");
    }
    std::vector<CommutingClass> out;
    out.reserve(lagrangian_count(dims));
    LagrangianEnumerator(dims, out).run();
    std::sort(out.begin(), out.end());
    return out;
}

MonomialOperator::MonomialOperator(int root_order, std::vector<std::uint32_t> target, std::vector<int> phase)
    : root_order_(root_order), target_(std::move(target)), phase_(std::move(phase)) {
    if (target_.size() != phase_.size()) {
        throw std::invalid_argument("monomial operator size mismatch");
    }
}

MonomialOperator MonomialOperator::identity(std::size_t dim, int root_order) {
    std::vector<std::uint32_t> t(dim);
    for (std::size_t j = 0; j < dim; ++j) t[j] = static_cast<std::uint32_t>(j);
    return MonomialOperator(root_order, std::move(t), std::vector<int>(dim, 0));
}

MonomialOperator MonomialOperator::operator*(const MonomialOperator &rhs) const {
    if (dim() != rhs.dim() || root_order_ != rhs.root_order_) {
        throw std::invalid_argument("incompatible monomial operators");
    }
    std::vector<std::uint32_t> t(dim());
    std::vector<int> p(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
        std::uint32_t mid = rhs.target_[j];
        t[j] = target_[mid];
        p[j] = mod(rhs.phase_[j] + phase_[mid], root_order_);
    }
    return MonomialOperator(root_order_, std::move(t), std::move(p));
}

MonomialOperator MonomialOperator::pow(int k) const {
    MonomialOperator out = identity(dim(), root_order_);
    for (int i = 0; i < k; ++i) {
        out = *this * out;
    }
    return out;
}

bool MonomialOperator::is_identity() const {
    for (std::size_t j = 0; j < dim(); ++j) {
        if (target_[j] != j || phase_[j] != 0) return false;
    }
    return true;
}

bool MonomialOperator::proportional_to(const MonomialOperator &other) const {
    if (dim() != other.dim() || target_ != other.target_ || root_order_ != other.root_order_) {
        return false;
    }
    for (std::size_t j = 1; j < dim(); ++j) {
        if (mod(phase_[j] - other.phase_[j] - phase_[0] + other.phase_[0], root_order_) != 0) {
            return false;
        }
    }
    return true;
}

std::complex<double> MonomialOperator::root(int exponent) const {
    return std::polar(1.0, 2.0 * std::numbers::pi * mod(exponent, root_order_) / root_order_);
}

Eigen::MatrixXcd MonomialOperator::dense() const {
    const auto n = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t j = 0; j < dim(); ++j) {
        out(target_[j], static_cast<Eigen::Index>(j)) = root(phase_[j]);
    }
    return out;
}

int phase_root_order(int d) { return d == 2 ? 4 : d; }

MonomialOperator weyl_operator(const WeylLabel &label, const PrimeDim &dims) {
    const int d = dims.d();
    const int n = dims.n();
    if (static_cast<int>(label.n()) != n) {
        throw std::invalid_argument("incompatible labels");
    }
    const int root = phase_root_order(d);
    // omega = zeta^(root/d); the fixed per-particle factor makes the representative
    // Hermitian for qubits and of order d otherwise.
    const int omega_step = root / d;
    int base_phase = 0;
    if (d == 2) {
        for (int k = 0; k < n; ++k) base_phase += label.x[k] * label.z[k];
    } else {
        const int half = inverse_mod(2, d);
        for (int k = 0; k < n; ++k) base_phase += half * label.x[k] * label.z[k];
    }
    std::vector<std::uint32_t> target(dims.m());
    std::vector<int> phase(dims.m());
    std::vector<int> digits(n);
    for (std::size_t j = 0; j < dims.m(); ++j) {
        std::size_t rest = j;
        for (int k = n - 1; k >= 0; --k) {
            digits[k] = static_cast<int>(rest % d);
            rest /= d;
        }
        long long exponent = base_phase;
        std::size_t t = 0;
        for (int k = 0; k < n; ++k) {
            exponent += static_cast<long long>(omega_step) * label.z[k] * digits[k];
            t = t * d + static_cast<std::size_t>(mod(digits[k] + label.x[k], d));
        }
        target[j] = static_cast<std::uint32_t>(t);
        phase[j] = mod(exponent, root);
    }
    return MonomialOperator(root, std::move(target), std::move(phase));
}

Eigen::MatrixXcd weyl_matrix(const WeylLabel &label, const PrimeDim &dims) {
    return weyl_operator(label, dims).dense();
}

}  // namespace mubkit
