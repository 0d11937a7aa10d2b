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

#ifndef MUBKIT_WEYL_H
#define MUBKIT_WEYL_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mubkit/finite_field.h"

namespace mubkit {

bool is_prime(long long n);

/// N particles of prime local dimension d; composite dimension M = d^N.
class PrimeDim {
   public:
    static constexpr std::size_t kMaxDimension = std::size_t{1} << 20;

    PrimeDim(int d, int n);

    int d() const { return d_; }
    int n() const { return n_; }
    std::size_t m() const { return m_; }
    /// Number of symplectic coordinates, 2N.
    int coords() const { return 2 * n_; }
    /// Number of Weyl labels, d^{2N}.
    std::size_t label_count() const { return m_ * m_; }

    bool operator==(const PrimeDim &other) const = default;

   private:
    int d_;
    int n_;
    std::size_t m_;
};

/// A generalized Pauli operator X^x Z^z up to phase, as a vector in Z_d^{2N}.
struct WeylLabel {
    std::vector<int> x;
    std::vector<int> z;

    WeylLabel() = default;
    WeylLabel(std::vector<int> x_part, std::vector<int> z_part);

    /// Parses the flat layout (x_1..x_N, z_1..z_N).
    static WeylLabel from_coords(const std::vector<int> &coords, int d);
    static WeylLabel from_index(std::size_t index, const PrimeDim &dims);
    /// Single-qubit-style string such as "XYZ" or "IX" (d = 2 only).
    static WeylLabel from_pauli_string(const std::string &text);

    std::size_t n() const { return x.size(); }
    bool is_zero() const;
    std::vector<int> coords() const;
    /// Lexicographic rank of coords() in [0, d^{2N}).
    std::size_t index(int d) const;
    std::string str(int d) const;

    bool operator==(const WeylLabel &other) const = default;
    auto operator<=>(const WeylLabel &other) const = default;
};

WeylLabel add(const WeylLabel &u, const WeylLabel &v, int d);
WeylLabel scale(const WeylLabel &u, int c, int d);

/// (u.x . v.z - v.x . u.z) mod d. Throws std::invalid_argument on a size mismatch.
int symplectic_form(const WeylLabel &u, const WeylLabel &v, int d);
bool commutes(const WeylLabel &u, const WeylLabel &v, int d);

/// An N-dimensional isotropic subspace of Z_d^{2N}: one maximal commuting set.
///
/// Stored by the reduced row-echelon form of any spanning set, so two
/// instances compare equal exactly when they span the same subspace.
class CommutingClass {
   public:
    /// Throws std::invalid_argument unless the generators span an isotropic
    /// subspace of dimension N.
    CommutingClass(const std::vector<WeylLabel> &generators, const PrimeDim &dims);

    const PrimeDim &dims() const { return dims_; }
    const std::vector<WeylLabel> &rows() const { return rows_; }
    /// Label indices of the d^N - 1 nonzero members, ascending.
    const std::vector<std::uint32_t> &member_indices() const { return members_; }
    std::vector<WeylLabel> members() const;
    bool contains(const WeylLabel &label) const;

    bool operator==(const CommutingClass &other) const { return rows_ == other.rows_; }
    auto operator<=>(const CommutingClass &other) const { return rows_ <=> other.rows_; }

   private:
    PrimeDim dims_;
    std::vector<WeylLabel> rows_;
    std::vector<std::uint32_t> members_;
};

/// Number of maximal isotropic subspaces, prod_{i=1..N} (d^i + 1).
std::size_t lagrangian_count(const PrimeDim &dims);

struct EnumerationLimits {
    std::size_t max_dimension = 4096;
    std::size_t max_classes = 250000;
};

/// Every maximal commuting class, sorted by canonical rows. Throws BudgetError
/// past the limits.
std::vector<CommutingClass> enumerate_lagrangians(const PrimeDim &dims,
                                                  const EnumerationLimits &limits = {});

/// Monomial unitary U e_j = zeta^{phase[j]} e_{target[j]}, zeta = exp(2 pi i / root_order).
///
/// Weyl operators are monomial in the computational basis, so products and
/// powers are carried out exactly on integer phase exponents.
class MonomialOperator {
   public:
    MonomialOperator(int root_order, std::vector<std::uint32_t> target, std::vector<int> phase);
    static MonomialOperator identity(std::size_t dim, int root_order);

    int root_order() const { return root_order_; }
    std::size_t dim() const { return target_.size(); }
    const std::vector<std::uint32_t> &target() const { return target_; }
    const std::vector<int> &phase() const { return phase_; }

    MonomialOperator operator*(const MonomialOperator &rhs) const;
    MonomialOperator pow(int k) const;
    bool is_identity() const;
    /// True when the operators agree up to a global phase.
    bool proportional_to(const MonomialOperator &other) const;
    std::complex<double> root(int exponent) const;
    Eigen::MatrixXcd dense() const;

    bool operator==(const MonomialOperator &other) const = default;

   private:
    int root_order_;
    std::vector<std::uint32_t> target_;
    std::vector<int> phase_;
};

/// Root-of-unity order used for phases: 4 for qubits, d for odd d.
int phase_root_order(int d);

/// Tensor product over particles of the phased X^x Z^z representatives.
///
/// Qubits use i^{x z} X^x Z^z (Hermitian); odd d uses omega^{x z / 2} X^x Z^z
/// (order d). Particle 0 is the most significant digit of the computational index.
MonomialOperator weyl_operator(const WeylLabel &label, const PrimeDim &dims);
Eigen::MatrixXcd weyl_matrix(const WeylLabel &label, const PrimeDim &dims);

}  // namespace mubkit

#endif
