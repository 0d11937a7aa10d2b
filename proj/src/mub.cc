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

#include "mubkit/mub.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "mubkit/errors.h"

namespace mubkit {

double orthonormality_error(const Basis &basis) {
    const auto n = basis.vectors.cols();
    Eigen::MatrixXcd gram = basis.vectors.adjoint() * basis.vectors;
    gram -= Eigen::MatrixXcd::Identity(n, n);
    return gram.cwiseAbs().maxCoeff();
}

double diagonalization_error(const Basis &basis) {
    if (!basis.source) return 0.0;
    const auto &cls = *basis.source;
    const auto &v = basis.vectors;
    double worst = 0.0;
    for (const auto &label : cls.members()) {
        MonomialOperator u = weyl_operator(label, cls.dims());
        Eigen::MatrixXcd uv(v.rows(), v.cols());
        for (std::size_t j = 0; j < u.dim(); ++j) {
            uv.row(u.target()[j]) = u.root(u.phase()[j]) * v.row(static_cast<Eigen::Index>(j));
        }
        Eigen::MatrixXcd in_basis = v.adjoint() * uv;
        in_basis.diagonal().setZero();
        worst = std::max(worst, in_basis.cwiseAbs().maxCoeff());
    }
    return worst;
}

Certification certify_unbiased(const Basis &a, const Basis &b, double tol) {
    if (a.dim() != b.dim() || a.vectors.cols() != b.vectors.cols()) {
        throw std::invalid_argument("bases have different dimensions");
    }
    const double inv_m = 1.0 / static_cast<double>(a.dim());
    Eigen::MatrixXcd overlap = a.vectors.adjoint() * b.vectors;
    Certification out;
    out.max_dev = (overlap.cwiseAbs2().array() - inv_m).abs().maxCoeff();
    out.pass = out.max_dev < tol;
    return out;
}

std::size_t MubSet::dim() const {
    std::size_t m = 1;
    for (int d : particle_dims) m *= static_cast<std::size_t>(d);
    return m;
}

bool MubSet::prime_case() const {
    if (particle_dims.empty()) return false;
    return is_prime(particle_dims[0]) &&
           std::all_of(particle_dims.begin(), particle_dims.end(), [&](int d) { return d == particle_dims[0]; });
}

Certification certify_set(MubSet &set, const CertifyOptions &options) {
    const std::size_t m = set.dim();
    for (const auto &b : set.bases) {
        if (b.dim() != m || static_cast<std::size_t>(b.vectors.cols()) != m) {
            throw std::invalid_argument("basis dimension does not match the set");
        }
    }
    const std::size_t k = set.bases.size();
    const std::uint64_t pairs = k * (k - (k > 0)) / 2;
    const bool sampled = pairs * m * m > options.exhaustive_limit;
    const double inv_m = 1.0 / static_cast<double>(m);
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<Eigen::Index> pick(0, static_cast<Eigen::Index>(m) - 1);
    Certification out;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            double dev = 0.0;
            if (sampled) {
                const auto &a = set.bases[i].vectors;
                const auto &b = set.bases[j].vectors;
                for (std::uint64_t s = 0; s < options.samples_per_pair; ++s) {
                    const auto col_a = pick(rng), col_b = pick(rng);
                    dev = std::max(dev, std::abs(std::norm(a.col(col_a).dot(b.col(col_b))) - inv_m));
                }
            } else {
                dev = certify_unbiased(set.bases[i], set.bases[j], options.tol).max_dev;
            }
            out.max_dev = std::max(out.max_dev, dev);
        }
    }
    out.pass = k <= m + 1 && out.max_dev < options.tol;
    set.certified = out.pass;
    set.max_deviation = out.max_dev;
    set.sampled_certification = sampled;
    return out;
}

Basis eigenbasis_of_class(const CommutingClass &cls) {
    const PrimeDim &dims = cls.dims();
    const int d = dims.d();
    const int n = dims.n();
    const auto m = static_cast<Eigen::Index>(dims.m());
    const int root = phase_root_order(d);
    const int step = root / d;

    std::vector<MonomialOperator> generators;
    for (const auto &row : cls.rows()) {
        generators.push_back(weyl_operator(row, dims));
    }
    for (int i = 0; i < n; ++i) {
        if (!generators[i].pow(d).is_identity()) {
            throw ConstructionError("phase lift failed");
        }
        for (int j = i + 1; j < n; ++j) {
            if (!(generators[i] * generators[j] == generators[j] * generators[i])) {
                throw ConstructionError("phase lift failed");
            }
        }
    }

    // Group element for coefficient vector c (c_1 most significant) is prod_i U_i^{c_i}.
    std::vector<std::vector<MonomialOperator>> powers(n);
    for (int i = 0; i < n; ++i) {
        powers[i].push_back(MonomialOperator::identity(dims.m(), root));
        for (int p = 1; p < d; ++p) powers[i].push_back(generators[i] * powers[i].back());
    }
    std::vector<MonomialOperator> group;
    std::vector<std::vector<int>> coeffs;
    group.reserve(dims.m());
    std::vector<int> c(n, 0);
    const MonomialOperator identity = MonomialOperator::identity(dims.m(), root);
    for (std::size_t idx = 0; idx < dims.m(); ++idx) {
        std::size_t rest = idx;
        for (int i = n - 1; i >= 0; --i) {
            c[i] = static_cast<int>(rest % d);
            rest /= d;
        }
        MonomialOperator g = identity;
        for (int i = 0; i < n; ++i) g = g * powers[i][c[i]];
        if (idx > 0 && g.proportional_to(identity)) {
            throw ConstructionError("phase lift failed");
        }
        group.push_back(std::move(g));
        coeffs.push_back(c);
    }

    std::vector<std::complex<double>> roots(root);
    for (int e = 0; e < root; ++e) roots[e] = identity.root(e);

    Basis basis;
    basis.vectors.resize(m, m);
    Eigen::MatrixXcd projector(m, m);
    for (std::size_t t = 0; t < dims.m(); ++t) {
        const auto &k = coeffs[t];
        projector.setZero();
        for (std::size_t g = 0; g < group.size(); ++g) {
            long long kc = 0;
            for (int i = 0; i < n; ++i) kc += static_cast<long long>(k[i]) * coeffs[g][i];
            const int chi = -step * static_cast<int>(kc % d);
            const auto &op = group[g];
            for (std::size_t j = 0; j < op.dim(); ++j) {
                projector(op.target()[j], static_cast<Eigen::Index>(j)) += roots[mod(op.phase()[j] + chi, root)];
            }
        }
        projector /= static_cast<double>(m);
        const double trace = projector.trace().real();
        if (trace < 1.0 - 1e-8 || trace > 1.0 + 1e-8) {
            throw ConstructionError("degenerate projector");
        }
        Eigen::Index best = 0;
        projector.colwise().squaredNorm().maxCoeff(&best);
        Eigen::VectorXcd u = projector.col(best);
        u.normalize();
        for (Eigen::Index j = 0; j < m; ++j) {
            if (std::abs(u(j)) > 1e-8) {
                u *= std::conj(u(j)) / std::abs(u(j));
                break;
            }
        }
        if ((projector - u * u.adjoint()).cwiseAbs().maxCoeff() > 1e-8) {
            throw ConstructionError("degenerate projector");
        }
        basis.vectors.col(static_cast<Eigen::Index>(t)) = u;
    }
    basis.source = cls;
    basis.factorization = finest_factorization(cls).partition;
    return basis;
}

MubSet mub_from_partition(const MubPartition &partition) {
    MubSet set;
    set.particle_dims.assign(partition.dims.n(), partition.dims.d());
    for (const auto &cls : partition.classes) {
        set.bases.push_back(eigenbasis_of_class(cls));
    }
    certify_set(set);
    return set;
}

MubSet build_complete_mub(const PrimeDim &dims) {
    if (dims.m() > 4096) {
        throw BudgetError("complete MUB construction limited to M <= 4096");
    }
    MubSet set = mub_from_partition(find_partition(dims));
    if (!set.certified) {
        throw ConstructionError("constructed bases failed unbiasedness certification");
    }
    return set;
}

Pairing default_pairing(const MubSet &a, const MubSet &b) {
    const std::size_t count = std::min(a.bases.size(), b.bases.size());
    std::vector<bool> used(b.bases.size(), false);
    Pairing out;
    auto take = [&](std::size_t i, const std::function<bool(const Basis &, const Basis &)> &match) {
        for (std::size_t j = 0; j < b.bases.size(); ++j) {
            if (!used[j] && match(a.bases[i], b.bases[j])) {
                used[j] = true;
                out.emplace_back(i, j);
                return true;
            }
        }
        return false;
    };
    auto same_partition = [](const Basis &x, const Basis &y) {
        return x.factorization && y.factorization && *x.factorization == *y.factorization;
    };
    auto same_category = [](const Basis &x, const Basis &y) {
        return x.factorization && y.factorization &&
               x.factorization->size_profile() == y.factorization->size_profile();
    };
    auto any = [](const Basis &, const Basis &) { return true; };
    // Exact matches first across all of a, so a fallback never steals a later exact match.
    std::vector<bool> paired(count, false);
    for (std::size_t i = 0; i < count; ++i) paired[i] = take(i, same_partition);
    for (std::size_t i = 0; i < count; ++i) if (!paired[i]) paired[i] = take(i, same_category);
    for (std::size_t i = 0; i < count; ++i) if (!paired[i]) paired[i] = take(i, any);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<int> digits_of(std::size_t index, const std::vector<int> &radix) {
    std::vector<int> out(radix.size());
    for (int k = static_cast<int>(radix.size()) - 1; k >= 0; --k) {
        out[k] = static_cast<int>(index % radix[k]);
        index /= radix[k];
    }
    return out;
}

}  // namespace

MubSet tensor_mub(const MubSet &a, const MubSet &b, const Pairing &pairing, const CertifyOptions &options) {
    std::set<std::size_t> seen_a, seen_b;
    for (const auto &[i, j] : pairing) {
        if (i >= a.bases.size() || j >= b.bases.size()) {
            throw std::invalid_argument("pairing index out of range");
        }
        if (!seen_a.insert(i).second || !seen_b.insert(j).second) {
            throw std::invalid_argument("pairing must be injective");
        }
    }
    const bool interleave = a.particle_dims.size() == b.particle_dims.size();
    MubSet out;
    if (interleave) {
        for (std::size_t k = 0; k < a.particle_dims.size(); ++k) {
            out.particle_dims.push_back(a.particle_dims[k] * b.particle_dims[k]);
        }
    } else {
        out.particle_dims = a.particle_dims;
        out.particle_dims.insert(out.particle_dims.end(), b.particle_dims.begin(), b.particle_dims.end());
    }
    const std::size_t ma = a.dim(), mb = b.dim();
    // position[ia * mb + ib] = index of e_ia (x) e_ib in the result's particle order.
    std::vector<Eigen::Index> position(ma * mb);
    for (std::size_t ia = 0; ia < ma; ++ia) {
        const auto da = digits_of(ia, a.particle_dims);
        for (std::size_t ib = 0; ib < mb; ++ib) {
            std::size_t dest = ia * mb + ib;
            if (interleave) {
                const auto db = digits_of(ib, b.particle_dims);
                dest = 0;
                for (std::size_t k = 0; k < da.size(); ++k) {
                    dest = dest * out.particle_dims[k] + static_cast<std::size_t>(da[k] * b.particle_dims[k] + db[k]);
                }
            }
            position[ia * mb + ib] = static_cast<Eigen::Index>(dest);
        }
    }
    const auto m = static_cast<Eigen::Index>(ma * mb);
    for (const auto &[i, j] : pairing) {
        const auto &va = a.bases[i].vectors;
        const auto &vb = b.bases[j].vectors;
        Basis basis;
        basis.vectors = Eigen::MatrixXcd::Zero(m, m);
        for (Eigen::Index u = 0; u < va.cols(); ++u) {
            for (Eigen::Index v = 0; v < vb.cols(); ++v) {
                auto col = basis.vectors.col(u * vb.cols() + v);
                for (std::size_t ia = 0; ia < ma; ++ia) {
                    const auto x = va(static_cast<Eigen::Index>(ia), u);
                    if (x == 0.0) continue;
                    for (std::size_t ib = 0; ib < mb; ++ib) {
                        col(position[ia * mb + ib]) = x * vb(static_cast<Eigen::Index>(ib), v);
                    }
                }
            }
        }
        const auto &fa = a.bases[i].factorization;
        const auto &fb = b.bases[j].factorization;
        if (fa && fb) {
            if (interleave) {
                basis.factorization = fa->join(*fb);
            } else {
                auto blocks = fa->blocks();
                for (auto block : fb->blocks()) {
                    for (auto &p : block) p += fa->n();
                    blocks.push_back(block);
                }
                basis.factorization = ParticlePartition(std::move(blocks), fa->n() + fb->n());
            }
        }
        out.bases.push_back(std::move(basis));
    }
    certify_set(out, options);
    return out;
}

}  // namespace mubkit
