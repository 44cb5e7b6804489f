// Copyright 2026 The hqw authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hqw/tensortrain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "hqw/rng.hpp"

namespace hqw {

namespace {

using MatrixRM =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using MapRM = Eigen::Map<MatrixRM>;
using ConstMapRM = Eigen::Map<const MatrixRM>;

void check_tt(const TTVector &x, const char *where) {
    if (x.cores.empty())
        throw std::invalid_argument(std::string(where) + ": empty tensor train");
    int prev = 1;
    for (const TTCore &c : x.cores) {
        if (c.rank_left != prev || c.rank_left < 1 || c.rank_right < 1 ||
            c.mode < 1)
            throw std::invalid_argument(std::string(where) +
                                        ": inconsistent core ranks");
        if (c.values.size() != static_cast<std::size_t>(c.rank_left) * c.mode *
                                   c.rank_right)
            throw std::invalid_argument(std::string(where) +
                                        ": core storage size mismatch");
        prev = c.rank_right;
    }
    if (prev != 1)
        throw std::invalid_argument(std::string(where) +
                                    ": final rank must be 1");
}

void check_mpo(const MPO &op, const char *where) {
    if (op.cores.empty())
        throw std::invalid_argument(std::string(where) + ": empty operator");
    int prev = 1;
    for (const MpoCore &c : op.cores) {
        if (c.rank_left != prev || c.rank_left < 1 || c.rank_right < 1)
            throw std::invalid_argument(std::string(where) +
                                        ": inconsistent operator ranks");
        if (c.values.size() !=
            static_cast<std::size_t>(c.rank_left) * 4 * c.rank_right)
            throw std::invalid_argument(std::string(where) +
                                        ": operator core size mismatch");
        prev = c.rank_right;
    }
    if (prev != 1)
        throw std::invalid_argument(std::string(where) +
                                    ": final operator rank must be 1");
}

double core_frobenius(const TTCore &c) {
    double s = 0.0;
    for (double v : c.values)
        s += v * v;
    return std::sqrt(s);
}

/// Smallest kept rank whose discarded singular values satisfy
/// sum sigma_i^2 <= delta^2, optionally capped.
int select_rank(const VectorXd &sv, double delta, int cap) {
    int keep = static_cast<int>(sv.size());
    double tail = 0.0;
    const double budget = delta * delta;
    while (keep > 1) {
        const double s = sv[keep - 1];
        if (tail + s * s > budget)
            break;
        tail += s * s;
        --keep;
    }
    if (cap > 0)
        keep = std::min(keep, cap);
    return std::max(keep, 1);
}

struct ThinQr {
    MatrixXd q; // orthonormal columns
    MatrixXd r; // upper triangular, q * r reproduces the input
};

ThinQr thin_qr(const MatrixXd &m) {
    Eigen::HouseholderQR<MatrixXd> qr(m);
    const int s = static_cast<int>(std::min(m.rows(), m.cols()));
    ThinQr out;
    out.q = qr.householderQ() * MatrixXd::Identity(m.rows(), s);
    out.r = qr.matrixQR().topRows(s).triangularView<Eigen::Upper>();
    return out;
}

/// LQ on core k, carry the triangular factor into core k-1.
void right_orthogonalize_step(TTVector &x, int k) {
    TTCore &c = x.cores[k];
    const MatrixXd bt =
        ConstMapRM(c.values.data(), c.rank_left,
                   static_cast<std::size_t>(c.mode) * c.rank_right)
            .transpose();
    const ThinQr qr = thin_qr(bt);
    const int s = static_cast<int>(qr.q.cols());

    TTCore nc;
    nc.rank_left = s;
    nc.mode = c.mode;
    nc.rank_right = c.rank_right;
    nc.values.resize(static_cast<std::size_t>(s) * c.mode * c.rank_right);
    MapRM(nc.values.data(), s,
          static_cast<std::size_t>(c.mode) * c.rank_right) = qr.q.transpose();

    TTCore &p = x.cores[k - 1];
    const MatrixRM np =
        ConstMapRM(p.values.data(),
                   static_cast<std::size_t>(p.rank_left) * p.mode,
                   p.rank_right) *
        qr.r.transpose();
    p.rank_right = s;
    p.values.assign(np.data(), np.data() + np.size());
    x.cores[k] = std::move(nc);
}

/// Makes cores 1..D-1 right-orthogonal; core 0 absorbs the norm.
void right_orthogonalize(TTVector &x) {
    for (int k = x.num_cores() - 1; k >= 1; --k)
        right_orthogonalize_step(x, k);
}

/// QR on core k, carry the triangular factor into core k+1.
void left_orthogonalize_step(TTVector &x, int k) {
    TTCore &c = x.cores[k];
    const MatrixXd a =
        ConstMapRM(c.values.data(),
                   static_cast<std::size_t>(c.rank_left) * c.mode,
                   c.rank_right);
    const ThinQr qr = thin_qr(a);
    const int s = static_cast<int>(qr.q.cols());
    c.values.resize(static_cast<std::size_t>(c.rank_left) * c.mode * s);
    MapRM(c.values.data(), static_cast<std::size_t>(c.rank_left) * c.mode, s) =
        qr.q;
    c.rank_right = s;

    TTCore &n = x.cores[k + 1];
    const MatrixRM nn =
        qr.r * ConstMapRM(n.values.data(), n.rank_left,
                          static_cast<std::size_t>(n.mode) * n.rank_right);
    n.rank_left = s;
    n.values.assign(nn.data(), nn.data() + nn.size());
}

} // namespace

std::vector<int> TTVector::ranks() const {
    std::vector<int> r;
    r.reserve(cores.size() + 1);
    r.push_back(1);
    for (const TTCore &c : cores)
        r.push_back(c.rank_right);
    return r;
}

int TTVector::max_rank() const {
    int m = 1;
    for (const TTCore &c : cores)
        m = std::max(m, c.rank_right);
    return m;
}

std::size_t TTVector::dense_size() const {
    std::size_t n = 1;
    for (const TTCore &c : cores) {
        if (n > (std::size_t{1} << 58) / static_cast<std::size_t>(c.mode))
            throw std::overflow_error("TTVector::dense_size overflow");
        n *= static_cast<std::size_t>(c.mode);
    }
    return n;
}

int MPO::max_rank() const {
    int m = 1;
    for (const MpoCore &c : cores)
        m = std::max(m, c.rank_right);
    return m;
}

TTVector tt_ones(int num_cores, int mode) {
    if (num_cores < 1 || mode < 1)
        throw std::invalid_argument("tt_ones: invalid shape");
    TTVector x;
    x.cores.resize(num_cores);
    for (TTCore &c : x.cores) {
        c.rank_left = 1;
        c.mode = mode;
        c.rank_right = 1;
        c.values.assign(static_cast<std::size_t>(mode), 1.0);
    }
    return x;
}

TTVector tt_random(int num_cores, int rank, std::uint64_t seed, int mode) {
    if (num_cores < 1 || rank < 1 || mode < 2)
        throw std::invalid_argument("tt_random: invalid shape");
    // Clip bond ranks to what the mode sizes allow.
    std::vector<int> ranks(num_cores + 1, 1);
    for (int k = 1; k < num_cores; ++k) {
        double left = std::pow(static_cast<double>(mode), k);
        double right =
            std::pow(static_cast<double>(mode), num_cores - k);
        double cap = std::min({static_cast<double>(rank), left, right});
        ranks[k] = static_cast<int>(cap);
    }
    Rng rng(seed);
    TTVector x;
    x.cores.resize(num_cores);
    for (int k = 0; k < num_cores; ++k) {
        TTCore &c = x.cores[k];
        c.rank_left = ranks[k];
        c.mode = mode;
        c.rank_right = ranks[k + 1];
        c.values.resize(static_cast<std::size_t>(c.rank_left) * mode *
                        c.rank_right);
        for (double &v : c.values)
            v = rng.uniform(-1.0, 1.0);
    }
    return x;
}

TTVector tt_from_dense(const std::vector<double> &v, int num_cores, double tol,
                       int mode) {
    if (num_cores < 1 || mode < 2)
        throw std::invalid_argument("tt_from_dense: invalid shape");
    std::size_t expected = 1;
    for (int k = 0; k < num_cores; ++k)
        expected *= static_cast<std::size_t>(mode);
    if (v.size() != expected)
        throw std::invalid_argument(
            "tt_from_dense: vector length must be mode^num_cores");
    if (tol < 0.0)
        throw std::invalid_argument("tt_from_dense: negative tolerance");

    double norm = 0.0;
    for (double e : v)
        norm += e * e;
    norm = std::sqrt(norm);
    const double delta =
        tol * norm / std::sqrt(static_cast<double>(std::max(1, num_cores - 1)));

    TTVector x;
    x.cores.resize(num_cores);
    std::vector<double> cur = v;
    int r_prev = 1;
    for (int k = 0; k + 1 < num_cores; ++k) {
        const std::size_t rows = static_cast<std::size_t>(r_prev) * mode;
        const std::size_t cols = cur.size() / rows;
        Eigen::BDCSVD<MatrixXd> svd(
            ConstMapRM(cur.data(), rows, cols),
            Eigen::ComputeThinU | Eigen::ComputeThinV);
        const int keep = select_rank(svd.singularValues(), delta, 0);

        TTCore &c = x.cores[k];
        c.rank_left = r_prev;
        c.mode = mode;
        c.rank_right = keep;
        c.values.resize(rows * keep);
        MapRM(c.values.data(), rows, keep) = svd.matrixU().leftCols(keep);

        const MatrixRM rest = svd.singularValues().head(keep).asDiagonal() *
                              svd.matrixV().leftCols(keep).transpose();
        cur.assign(rest.data(), rest.data() + rest.size());
        r_prev = keep;
    }
    TTCore &last = x.cores[num_cores - 1];
    last.rank_left = r_prev;
    last.mode = mode;
    last.rank_right = 1;
    last.values = cur;
    return x;
}

std::vector<double> tt_to_dense(const TTVector &x) {
    check_tt(x, "tt_to_dense");
    const std::size_t n = x.dense_size();
    if (n > (std::size_t{1} << 24))
        throw std::invalid_argument("tt_to_dense: result larger than 2^24");
    std::vector<double> cur{1.0};
    std::size_t len = 1;
    int rank = 1;
    for (const TTCore &c : x.cores) {
        const MatrixRM next =
            ConstMapRM(cur.data(), len, rank) *
            ConstMapRM(c.values.data(), rank,
                       static_cast<std::size_t>(c.mode) * c.rank_right);
        cur.assign(next.data(), next.data() + next.size());
        len *= static_cast<std::size_t>(c.mode);
        rank = c.rank_right;
    }
    return cur;
}

double tt_dot(const TTVector &a, const TTVector &b) {
    check_tt(a, "tt_dot");
    check_tt(b, "tt_dot");
    if (a.num_cores() != b.num_cores())
        throw std::invalid_argument("tt_dot: core count mismatch");
    MatrixXd m = MatrixXd::Ones(1, 1);
    for (int k = 0; k < a.num_cores(); ++k) {
        const TTCore &ca = a.cores[k];
        const TTCore &cb = b.cores[k];
        if (ca.mode != cb.mode)
            throw std::invalid_argument("tt_dot: mode mismatch");
        MatrixXd next = MatrixXd::Zero(ca.rank_right, cb.rank_right);
        for (int mm = 0; mm < ca.mode; ++mm) {
            // Rows of a fixed-mode slice are strided by mode * rank_right.
            Eigen::Map<const MatrixRM, 0, Eigen::OuterStride<>> amap(
                ca.values.data() + static_cast<std::size_t>(mm) * ca.rank_right,
                ca.rank_left, ca.rank_right,
                Eigen::OuterStride<>(static_cast<Eigen::Index>(ca.mode) *
                                     ca.rank_right));
            Eigen::Map<const MatrixRM, 0, Eigen::OuterStride<>> bmap(
                cb.values.data() + static_cast<std::size_t>(mm) * cb.rank_right,
                cb.rank_left, cb.rank_right,
                Eigen::OuterStride<>(static_cast<Eigen::Index>(cb.mode) *
                                     cb.rank_right));
            next.noalias() += amap.transpose() * m * bmap;
        }
        m = std::move(next);
    }
    return m(0, 0);
}

double tt_norm(const TTVector &x) {
    check_tt(x, "tt_norm");
    if (x.num_cores() == 1)
        return core_frobenius(x.cores[0]);
    TTVector y = x;
    right_orthogonalize(y);
    return core_frobenius(y.cores[0]);
}

TTVector tt_add(const TTVector &a, const TTVector &b, double alpha,
                double beta) {
    check_tt(a, "tt_add");
    check_tt(b, "tt_add");
    const int d = a.num_cores();
    if (b.num_cores() != d)
        throw std::invalid_argument("tt_add: core count mismatch");
    for (int k = 0; k < d; ++k)
        if (a.cores[k].mode != b.cores[k].mode)
            throw std::invalid_argument("tt_add: mode mismatch");

    if (d == 1) {
        TTVector out = a;
        for (std::size_t i = 0; i < out.cores[0].values.size(); ++i)
            out.cores[0].values[i] = alpha * a.cores[0].values[i] +
                                     beta * b.cores[0].values[i];
        return out;
    }

    TTVector out;
    out.cores.resize(d);
    for (int k = 0; k < d; ++k) {
        const TTCore &ca = a.cores[k];
        const TTCore &cb = b.cores[k];
        const bool first = k == 0;
        const bool last = k == d - 1;
        TTCore c;
        c.mode = ca.mode;
        c.rank_left = first ? 1 : ca.rank_left + cb.rank_left;
        c.rank_right = last ? 1 : ca.rank_right + cb.rank_right;
        c.values.assign(static_cast<std::size_t>(c.rank_left) * c.mode *
                            c.rank_right,
                        0.0);
        const double sa = first ? alpha : 1.0;
        const double sb = first ? beta : 1.0;
        const int arow = 0;
        const int brow = first ? 0 : ca.rank_left;
        const int acol = 0;
        const int bcol = last ? 0 : ca.rank_right;
        for (int i = 0; i < ca.rank_left; ++i)
            for (int m = 0; m < c.mode; ++m)
                for (int j = 0; j < ca.rank_right; ++j)
                    c.at(arow + i, m, acol + j) += sa * ca.at(i, m, j);
        for (int i = 0; i < cb.rank_left; ++i)
            for (int m = 0; m < c.mode; ++m)
                for (int j = 0; j < cb.rank_right; ++j)
                    c.at(brow + i, m, bcol + j) += sb * cb.at(i, m, j);
        out.cores[k] = std::move(c);
    }
    return out;
}

TTVector tt_scale(TTVector x, double s) {
    check_tt(x, "tt_scale");
    for (double &v : x.cores[0].values)
        v *= s;
    return x;
}

TTVector tt_round(TTVector x, double tol, int max_rank) {
    check_tt(x, "tt_round");
    if (tol < 0.0)
        throw std::invalid_argument("tt_round: negative tolerance");
    const int d = x.num_cores();
    if (d == 1)
        return x;
    right_orthogonalize(x);
    const double norm = core_frobenius(x.cores[0]);
    if (norm == 0.0) {
        TTVector zero;
        zero.cores.resize(d);
        for (int k = 0; k < d; ++k) {
            zero.cores[k].rank_left = 1;
            zero.cores[k].mode = x.cores[k].mode;
            zero.cores[k].rank_right = 1;
            zero.cores[k].values.assign(x.cores[k].mode, 0.0);
        }
        return zero;
    }
    const double delta =
        tol * norm / std::sqrt(static_cast<double>(std::max(1, d - 1)));
    for (int k = 0; k + 1 < d; ++k) {
        TTCore &c = x.cores[k];
        const std::size_t rows =
            static_cast<std::size_t>(c.rank_left) * c.mode;
        Eigen::BDCSVD<MatrixXd> svd(
            ConstMapRM(c.values.data(), rows, c.rank_right),
            Eigen::ComputeThinU | Eigen::ComputeThinV);
        const int keep = select_rank(svd.singularValues(), delta, max_rank);
        const MatrixRM carry = svd.singularValues().head(keep).asDiagonal() *
                               svd.matrixV().leftCols(keep).transpose();
        c.values.resize(rows * keep);
        MapRM(c.values.data(), rows, keep) = svd.matrixU().leftCols(keep);
        c.rank_right = keep;

        TTCore &n = x.cores[k + 1];
        const MatrixRM nn =
            ConstMapRM(carry.data(), keep, n.rank_left) *
            ConstMapRM(n.values.data(), n.rank_left,
                       static_cast<std::size_t>(n.mode) * n.rank_right);
        n.rank_left = keep;
        n.values.assign(nn.data(), nn.data() + nn.size());
    }
    return x;
}

MPO mpo_identity(int num_cores) {
    if (num_cores < 1)
        throw std::invalid_argument("mpo_identity: invalid length");
    MPO op;
    op.cores.resize(num_cores);
    for (MpoCore &c : op.cores) {
        c.rank_left = 1;
        c.rank_right = 1;
        c.values.assign(4, 0.0);
        c.at(0, 0, 0, 0) = 1.0;
        c.at(0, 1, 1, 0) = 1.0;
    }
    return op;
}

MPO mpo_add(const MPO &a, const MPO &b) {
    check_mpo(a, "mpo_add");
    check_mpo(b, "mpo_add");
    const int d = a.num_cores();
    if (b.num_cores() != d)
        throw std::invalid_argument("mpo_add: core count mismatch");
    if (d == 1) {
        MPO out = a;
        for (std::size_t i = 0; i < out.cores[0].values.size(); ++i)
            out.cores[0].values[i] += b.cores[0].values[i];
        return out;
    }
    MPO out;
    out.cores.resize(d);
    for (int k = 0; k < d; ++k) {
        const MpoCore &ca = a.cores[k];
        const MpoCore &cb = b.cores[k];
        const bool first = k == 0;
        const bool last = k == d - 1;
        MpoCore c;
        c.rank_left = first ? 1 : ca.rank_left + cb.rank_left;
        c.rank_right = last ? 1 : ca.rank_right + cb.rank_right;
        c.values.assign(static_cast<std::size_t>(c.rank_left) * 4 *
                            c.rank_right,
                        0.0);
        const int brow = first ? 0 : ca.rank_left;
        const int bcol = last ? 0 : ca.rank_right;
        for (int p = 0; p < ca.rank_left; ++p)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int q = 0; q < ca.rank_right; ++q)
                        c.at(p, i, j, q) += ca.at(p, i, j, q);
        for (int p = 0; p < cb.rank_left; ++p)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int q = 0; q < cb.rank_right; ++q)
                        c.at(brow + p, i, j, bcol + q) += cb.at(p, i, j, q);
        out.cores[k] = std::move(c);
    }
    return out;
}

namespace {

// An MpoCore (R, 2, 2, R') has the same memory layout as a mode-4 TTCore
// (R, 4, R') with the row index as the high bit of the fused mode.
TTVector fuse_mpo(const MPO &op) {
    TTVector x;
    x.cores.resize(op.num_cores());
    for (int k = 0; k < op.num_cores(); ++k) {
        x.cores[k].rank_left = op.cores[k].rank_left;
        x.cores[k].mode = 4;
        x.cores[k].rank_right = op.cores[k].rank_right;
        x.cores[k].values = op.cores[k].values;
    }
    return x;
}

MPO unfuse_mpo(const TTVector &x) {
    MPO op;
    op.cores.resize(x.num_cores());
    for (int k = 0; k < x.num_cores(); ++k) {
        op.cores[k].rank_left = x.cores[k].rank_left;
        op.cores[k].rank_right = x.cores[k].rank_right;
        op.cores[k].values = x.cores[k].values;
    }
    return op;
}

} // namespace

MPO mpo_round(const MPO &op, double tol, int max_rank) {
    check_mpo(op, "mpo_round");
    return unfuse_mpo(tt_round(fuse_mpo(op), tol, max_rank));
}

TTVector mpo_apply(const MPO &op, const TTVector &x) {
    check_mpo(op, "mpo_apply");
    check_tt(x, "mpo_apply");
    const int d = op.num_cores();
    if (x.num_cores() != d)
        throw std::invalid_argument("mpo_apply: core count mismatch");
    TTVector y;
    y.cores.resize(d);
    for (int k = 0; k < d; ++k) {
        const MpoCore &w = op.cores[k];
        const TTCore &c = x.cores[k];
        if (c.mode != 2)
            throw std::invalid_argument("mpo_apply: vector mode must be 2");
        TTCore o;
        o.rank_left = w.rank_left * c.rank_left;
        o.mode = 2;
        o.rank_right = w.rank_right * c.rank_right;
        o.values.assign(static_cast<std::size_t>(o.rank_left) * 2 *
                            o.rank_right,
                        0.0);
        for (int A = 0; A < w.rank_left; ++A)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int B = 0; B < w.rank_right; ++B) {
                        const double wv = w.at(A, i, j, B);
                        if (wv == 0.0)
                            continue;
                        for (int a = 0; a < c.rank_left; ++a)
                            for (int b = 0; b < c.rank_right; ++b)
                                o.at(A * c.rank_left + a, i,
                                     B * c.rank_right + b) +=
                                    wv * c.at(a, j, b);
                    }
        y.cores[k] = std::move(o);
    }
    return y;
}

std::vector<double> mpo_to_dense(const MPO &op) {
    check_mpo(op, "mpo_to_dense");
    const int d = op.num_cores();
    if (d > 12)
        throw std::invalid_argument("mpo_to_dense: supports up to 12 cores");
    const std::vector<double> fused = tt_to_dense(fuse_mpo(op));
    const std::size_t n = std::size_t{1} << d;
    std::vector<double> m(n * n, 0.0);
    for (std::size_t flat = 0; flat < fused.size(); ++flat) {
        std::size_t row = 0;
        std::size_t col = 0;
        std::size_t rest = flat;
        for (int k = d - 1; k >= 0; --k) {
            const std::size_t digit = rest % 4;
            rest /= 4;
            row |= (digit >> 1) << (d - 1 - k);
            col |= (digit & 1) << (d - 1 - k);
        }
        m[row * n + col] = fused[flat];
    }
    return m;
}

namespace {

// Environments for the Galerkin sweeps. phi holds (bra rank, operator rank,
// ket rank) contractions of everything left or right of a bond; psi holds
// the (solution rank, rhs rank) counterparts.

std::vector<double> env_left_update(const std::vector<double> &phi,
                                    const TTCore &x, const MpoCore &w) {
    const int r = x.rank_left;
    const int r2 = x.rank_right;
    const int rw = w.rank_left;
    const int rw2 = w.rank_right;
    // t1[(a_bra, A), (m', a2)] = sum_a phi[a_bra, A, a] x[a, m', a2]
    const MatrixRM t1 =
        ConstMapRM(phi.data(), static_cast<std::size_t>(r) * rw, r) *
        ConstMapRM(x.values.data(), r, static_cast<std::size_t>(2) * r2);
    // t2[(a_bra, m), (A2, a2)] = sum_{A, m'} t1 w[A, m, m', A2]
    std::vector<double> t2(static_cast<std::size_t>(r) * 2 * rw2 * r2, 0.0);
    for (int A = 0; A < rw; ++A)
        for (int m = 0; m < 2; ++m)
            for (int mp = 0; mp < 2; ++mp)
                for (int A2 = 0; A2 < rw2; ++A2) {
                    const double wv = w.at(A, m, mp, A2);
                    if (wv == 0.0)
                        continue;
                    for (int ab = 0; ab < r; ++ab)
                        for (int a2 = 0; a2 < r2; ++a2)
                            t2[((static_cast<std::size_t>(ab) * 2 + m) * rw2 +
                                A2) *
                                   r2 +
                               a2] +=
                                wv *
                                t1(ab * rw + A, mp * r2 + a2);
                }
    // out[a2_bra, (A2, a2)] = sum_{a_bra, m} x[a_bra, m, a2_bra] t2
    const MatrixRM out =
        ConstMapRM(x.values.data(), static_cast<std::size_t>(r) * 2, r2)
            .transpose() *
        ConstMapRM(t2.data(), static_cast<std::size_t>(r) * 2,
                   static_cast<std::size_t>(rw2) * r2);
    return {out.data(), out.data() + out.size()};
}

std::vector<double> env_right_update(const std::vector<double> &phi,
                                     const TTCore &x, const MpoCore &w) {
    const int r = x.rank_left;
    const int r2 = x.rank_right;
    const int rw = w.rank_left;
    const int rw2 = w.rank_right;
    // s1[(a_ket, m'), (b_bra, B)] = sum_b x[a_ket, m', b] phi[b_bra, B, b]
    const MatrixRM s1 =
        ConstMapRM(x.values.data(), static_cast<std::size_t>(r) * 2, r2) *
        ConstMapRM(phi.data(), static_cast<std::size_t>(r2) * rw2, r2)
            .transpose();
    // s2[(A, a_ket), (m, b_bra)] = sum_{m', B} s1 w[A, m, m', B]
    std::vector<double> s2(static_cast<std::size_t>(rw) * r * 2 * r2, 0.0);
    for (int A = 0; A < rw; ++A)
        for (int m = 0; m < 2; ++m)
            for (int mp = 0; mp < 2; ++mp)
                for (int B = 0; B < rw2; ++B) {
                    const double wv = w.at(A, m, mp, B);
                    if (wv == 0.0)
                        continue;
                    for (int ak = 0; ak < r; ++ak)
                        for (int bb = 0; bb < r2; ++bb)
                            s2[((static_cast<std::size_t>(A) * r + ak) * 2 +
                                m) *
                                   r2 +
                               bb] +=
                                wv * s1(ak * 2 + mp, bb * rw2 + B);
                }
    // out[a_bra, (A, a_ket)] = sum_{m, b_bra} x[a_bra, m, b_bra] s2
    const MatrixRM out =
        ConstMapRM(x.values.data(), r, static_cast<std::size_t>(2) * r2) *
        ConstMapRM(s2.data(), static_cast<std::size_t>(rw) * r,
                   static_cast<std::size_t>(2) * r2)
            .transpose();
    return {out.data(), out.data() + out.size()};
}

std::vector<double> rhs_left_update(const std::vector<double> &psi,
                                    const TTCore &x, const TTCore &b) {
    const int r = x.rank_left;
    const int r2 = x.rank_right;
    const int rb = b.rank_left;
    const int rb2 = b.rank_right;
    // t1[c, (m, a2)] = sum_a psi[a, c] x[a, m, a2]
    const MatrixRM t1 =
        ConstMapRM(psi.data(), r, rb).transpose() *
        ConstMapRM(x.values.data(), r, static_cast<std::size_t>(2) * r2);
    std::vector<double> out(static_cast<std::size_t>(r2) * rb2, 0.0);
    for (int c = 0; c < rb; ++c)
        for (int m = 0; m < 2; ++m)
            for (int c2 = 0; c2 < rb2; ++c2) {
                const double bv = b.at(c, m, c2);
                if (bv == 0.0)
                    continue;
                for (int a2 = 0; a2 < r2; ++a2)
                    out[static_cast<std::size_t>(a2) * rb2 + c2] +=
                        bv * t1(c, m * r2 + a2);
            }
    return out;
}

std::vector<double> rhs_right_update(const std::vector<double> &psi,
                                     const TTCore &x, const TTCore &b) {
    const int r = x.rank_left;
    const int r2 = x.rank_right;
    const int rb = b.rank_left;
    const int rb2 = b.rank_right;
    // t1[c, (m, b2)] = sum_{c2} b[c, m, c2] psi[b2, c2]
    std::vector<double> t1(static_cast<std::size_t>(rb) * 2 * r2, 0.0);
    for (int c = 0; c < rb; ++c)
        for (int m = 0; m < 2; ++m)
            for (int c2 = 0; c2 < rb2; ++c2) {
                const double bv = b.at(c, m, c2);
                if (bv == 0.0)
                    continue;
                for (int b2 = 0; b2 < r2; ++b2)
                    t1[(static_cast<std::size_t>(c) * 2 + m) * r2 + b2] +=
                        bv * psi[static_cast<std::size_t>(b2) * rb2 + c2];
            }
    // out[a, c] = sum_{m, b2} x[a, m, b2] t1[c, (m, b2)]
    const MatrixRM out =
        ConstMapRM(x.values.data(), r, static_cast<std::size_t>(2) * r2) *
        ConstMapRM(t1.data(), rb, static_cast<std::size_t>(2) * r2)
            .transpose();
    return {out.data(), out.data() + out.size()};
}

// f[a, m, b] = sum_{c, c2} psiL[a, c] bcore[c, m, c2] psiR[b, c2]
std::vector<double> local_rhs(const std::vector<double> &psi_left,
                              const TTCore &bcore,
                              const std::vector<double> &psi_right, int r1,
                              int r2) {
    const int rb = bcore.rank_left;
    const int rb2 = bcore.rank_right;
    const MatrixRM t1 =
        ConstMapRM(psi_left.data(), r1, rb) *
        ConstMapRM(bcore.values.data(), rb, static_cast<std::size_t>(2) * rb2);
    std::vector<double> f(static_cast<std::size_t>(r1) * 2 * r2, 0.0);
    for (int a = 0; a < r1; ++a)
        for (int m = 0; m < 2; ++m)
            for (int b = 0; b < r2; ++b) {
                double s = 0.0;
                for (int c2 = 0; c2 < rb2; ++c2)
                    s += t1(a, m * rb2 + c2) *
                         psi_right[static_cast<std::size_t>(b) * rb2 + c2];
                f[(static_cast<std::size_t>(a) * 2 + m) * r2 + b] = s;
            }
    return f;
}

// w = (phiL . W . phiR) v with v, w of shape (r1, 2, r2).
void local_matvec(const std::vector<double> &phi_left, const MpoCore &w,
                  const std::vector<double> &phi_right, int r1, int r2,
                  const double *v, double *out) {
    const int rw = w.rank_left;
    const int rw2 = w.rank_right;
    // t1[(a_bra, A), (m', b_ket)] = sum_{a_ket} phiL v
    const MatrixRM t1 =
        ConstMapRM(phi_left.data(), static_cast<std::size_t>(r1) * rw, r1) *
        ConstMapRM(v, r1, static_cast<std::size_t>(2) * r2);
    // t2[(a_bra, m), (B, b_ket)] = sum_{A, m'} w t1
    std::vector<double> t2(static_cast<std::size_t>(r1) * 2 * rw2 * r2, 0.0);
    for (int A = 0; A < rw; ++A)
        for (int m = 0; m < 2; ++m)
            for (int mp = 0; mp < 2; ++mp)
                for (int B = 0; B < rw2; ++B) {
                    const double wv = w.at(A, m, mp, B);
                    if (wv == 0.0)
                        continue;
                    for (int ab = 0; ab < r1; ++ab)
                        for (int bk = 0; bk < r2; ++bk)
                            t2[((static_cast<std::size_t>(ab) * 2 + m) * rw2 +
                                B) *
                                   r2 +
                               bk] += wv * t1(ab * rw + A, mp * r2 + bk);
                }
    // out[(a_bra, m), b_bra] = sum_{B, b_ket} t2 phiR[b_bra, B, b_ket]
    MapRM(out, static_cast<std::size_t>(r1) * 2, r2).noalias() =
        ConstMapRM(t2.data(), static_cast<std::size_t>(r1) * 2,
                   static_cast<std::size_t>(rw2) * r2) *
        ConstMapRM(phi_right.data(), r2, static_cast<std::size_t>(rw2) * r2)
            .transpose();
}

MatrixXd assemble_local(const std::vector<double> &phi_left, const MpoCore &w,
                        const std::vector<double> &phi_right, int r1, int r2) {
    const int rw = w.rank_left;
    const int rw2 = w.rank_right;
    const std::size_t n = static_cast<std::size_t>(r1) * 2 * r2;
    MatrixXd a = MatrixXd::Zero(n, n);
    for (int A = 0; A < rw; ++A)
        for (int B = 0; B < rw2; ++B)
            for (int m = 0; m < 2; ++m)
                for (int m2 = 0; m2 < 2; ++m2) {
                    const double wv = w.at(A, m, m2, B);
                    if (wv == 0.0)
                        continue;
                    for (int p = 0; p < r1; ++p)
                        for (int p2 = 0; p2 < r1; ++p2) {
                            const double lw =
                                wv *
                                phi_left[(static_cast<std::size_t>(p) * rw +
                                          A) *
                                             r1 +
                                         p2];
                            if (lw == 0.0)
                                continue;
                            for (int q = 0; q < r2; ++q)
                                for (int q2 = 0; q2 < r2; ++q2)
                                    a((static_cast<std::size_t>(p) * 2 + m) *
                                              r2 +
                                          q,
                                      (static_cast<std::size_t>(p2) * 2 + m2) *
                                              r2 +
                                          q2) +=
                                        lw *
                                        phi_right
                                            [(static_cast<std::size_t>(q) *
                                                  rw2 +
                                              B) *
                                                 r2 +
                                             q2];
                        }
                }
    return a;
}

// Jacobi-preconditioned CG on the projected system; v holds the warm start
// and receives the solution.
void local_pcg(const std::vector<double> &phi_left, const MpoCore &w,
               const std::vector<double> &phi_right, int r1, int r2,
               const std::vector<double> &f, std::vector<double> &v,
               int max_iters, double tol) {
    const int rw = w.rank_left;
    const int rw2 = w.rank_right;
    const std::size_t n = f.size();
    std::vector<double> diag(n, 0.0);
    for (int A = 0; A < rw; ++A)
        for (int B = 0; B < rw2; ++B)
            for (int m = 0; m < 2; ++m) {
                const double wv = w.at(A, m, m, B);
                if (wv == 0.0)
                    continue;
                for (int p = 0; p < r1; ++p) {
                    const double lw =
                        wv * phi_left[(static_cast<std::size_t>(p) * rw + A) *
                                          r1 +
                                      p];
                    for (int q = 0; q < r2; ++q)
                        diag[(static_cast<std::size_t>(p) * 2 + m) * r2 + q] +=
                            lw * phi_right[(static_cast<std::size_t>(q) * rw2 +
                                            B) *
                                               r2 +
                                           q];
                }
            }
    for (double &d : diag)
        if (!(d > 0.0))
            d = 1.0;

    std::vector<double> r(n), z(n), p(n), ap(n);
    local_matvec(phi_left, w, phi_right, r1, r2, v.data(), ap.data());
    double fnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        r[i] = f[i] - ap[i];
        fnorm += f[i] * f[i];
    }
    fnorm = std::sqrt(fnorm);
    const double stop = std::max(tol * fnorm, 1e-300);
    double rz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = r[i] / diag[i];
        rz += r[i] * z[i];
    }
    p = z;
    for (int it = 0; it < max_iters; ++it) {
        double rnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            rnorm += r[i] * r[i];
        if (std::sqrt(rnorm) <= stop)
            break;
        local_matvec(phi_left, w, phi_right, r1, r2, p.data(), ap.data());
        double pap = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            pap += p[i] * ap[i];
        if (!(pap > 0.0))
            break;
        const double alpha = rz / pap;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        double rz_next = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = r[i] / diag[i];
            rz_next += r[i] * z[i];
        }
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i)
            p[i] = z[i] + beta * p[i];
    }
}

void solve_local(const std::vector<double> &phi_left, const MpoCore &w,
                 const std::vector<double> &phi_right, const TTCore &bcore,
                 const std::vector<double> &psi_left,
                 const std::vector<double> &psi_right, TTCore &xcore,
                 const AmenOptions &opts) {
    const int r1 = xcore.rank_left;
    const int r2 = xcore.rank_right;
    const std::vector<double> f =
        local_rhs(psi_left, bcore, psi_right, r1, r2);
    const std::size_t n = f.size();
    if (static_cast<int>(n) <= opts.local_direct_dim) {
        const MatrixXd a = assemble_local(phi_left, w, phi_right, r1, r2);
        Eigen::LDLT<MatrixXd> ldlt(a);
        if (ldlt.info() == Eigen::Success) {
            const VectorXd sol =
                ldlt.solve(Eigen::Map<const VectorXd>(f.data(), n));
            std::copy(sol.data(), sol.data() + n, xcore.values.begin());
            return;
        }
    }
    local_pcg(phi_left, w, phi_right, r1, r2, f, xcore.values,
              opts.local_cg_iters, opts.local_cg_tol);
}

} // namespace

AmenResult amen_solve(const MPO &a, const TTVector &b,
                      const AmenOptions &opts) {
    check_mpo(a, "amen_solve");
    check_tt(b, "amen_solve");
    const int d = a.num_cores();
    if (b.num_cores() != d)
        throw std::invalid_argument("amen_solve: core count mismatch");
    for (const TTCore &c : b.cores)
        if (c.mode != 2)
            throw std::invalid_argument("amen_solve: rhs mode must be 2");
    if (opts.max_sweeps < 1 || opts.max_rank < 1 || opts.enrich_rank < 0 ||
        !(opts.tol > 0.0))
        throw std::invalid_argument("amen_solve: invalid options");

    AmenResult result;
    const double bnorm = tt_norm(b);
    if (bnorm == 0.0) {
        result.x = tt_scale(b, 0.0);
        result.converged = true;
        return result;
    }

    TTVector x = tt_round(b, 0.0, opts.max_rank);
    TTVector residual = tt_add(b, mpo_apply(a, x), 1.0, -1.0);
    double res = tt_norm(residual) / bnorm;
    TTVector best_x = x;
    double best_res = res;
    int stagnation = 0;
    const double round_tol =
        opts.round_tol > 0.0 ? opts.round_tol : opts.tol * 0.1;

    std::vector<std::vector<double>> phi_left(d + 1), phi_right(d + 1);
    std::vector<std::vector<double>> psi_left(d + 1), psi_right(d + 1);

    for (int sweep = 1; sweep <= opts.max_sweeps && res > opts.tol; ++sweep) {
        result.sweeps = sweep;
        if (opts.enrich_rank > 0 && d > 1) {
            const TTVector z = tt_round(residual, 0.0, opts.enrich_rank);
            x = tt_add(x, z, 1.0, 0.0);
        }
        right_orthogonalize(x);

        phi_right[d] = {1.0};
        psi_right[d] = {1.0};
        for (int k = d - 1; k >= 1; --k) {
            phi_right[k] =
                env_right_update(phi_right[k + 1], x.cores[k], a.cores[k]);
            psi_right[k] =
                rhs_right_update(psi_right[k + 1], x.cores[k], b.cores[k]);
        }
        phi_left[0] = {1.0};
        psi_left[0] = {1.0};

        for (int k = 0; k < d; ++k) {
            solve_local(phi_left[k], a.cores[k], phi_right[k + 1], b.cores[k],
                        psi_left[k], psi_right[k + 1], x.cores[k], opts);
            if (k + 1 < d) {
                left_orthogonalize_step(x, k);
                phi_left[k + 1] =
                    env_left_update(phi_left[k], x.cores[k], a.cores[k]);
                psi_left[k + 1] =
                    rhs_left_update(psi_left[k], x.cores[k], b.cores[k]);
            }
        }
        for (int k = d - 1; k >= 0; --k) {
            solve_local(phi_left[k], a.cores[k], phi_right[k + 1], b.cores[k],
                        psi_left[k], psi_right[k + 1], x.cores[k], opts);
            if (k > 0) {
                right_orthogonalize_step(x, k);
                phi_right[k] =
                    env_right_update(phi_right[k + 1], x.cores[k], a.cores[k]);
                psi_right[k] =
                    rhs_right_update(psi_right[k + 1], x.cores[k], b.cores[k]);
            }
        }

        x = tt_round(x, round_tol, opts.max_rank);
        residual = tt_add(b, mpo_apply(a, x), 1.0, -1.0);
        res = tt_norm(residual) / bnorm;
        result.residual_history.push_back(res);
        if (res < best_res * (1.0 - 1e-6)) {
            best_res = res;
            best_x = x;
            stagnation = 0;
        } else {
            // Iteration continues from the current point, but the reported
            // answer never gets worse than the best seen.
            ++stagnation;
            if (stagnation >= opts.stagnation_sweeps)
                break;
        }
    }
    if (res < best_res) {
        best_res = res;
        best_x = x;
    }
    result.x = std::move(best_x);
    result.residual = best_res;
    result.converged = best_res <= opts.tol;
    return result;
}

} // namespace hqw
