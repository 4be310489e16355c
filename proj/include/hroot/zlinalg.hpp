#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"

namespace hroot {

using QVec = std::vector<BigRat>;
using QMat = std::vector<QVec>; // row-major
using IVec = std::vector<BigInt>;
using IMat = std::vector<IVec>;

namespace la {

inline BigRat dot(const QVec& a, const QVec& b) {
    BigRat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline BigInt dot(const IVec& a, const IVec& b) {
    BigInt s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline BigInt round_nearest(const BigRat& x) {
    // nearest integer, ties toward +inf
    BigRat y = x + rat(1, 2);
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    return q;
}

// Incremental rational dependency finder: feed vectors one at a time; when a
// fed vector is linearly dependent on the previous ones, returns coefficients
// c with sum(c_i * v_i) = 0 and c_last = 1.
class RowReducer {
  public:
    explicit RowReducer(size_t dim) : dim_(dim) {}

    std::optional<QVec> feed(QVec v) {
        if (v.size() != dim_) raise(errc::invalid_argument, "dimension mismatch");
        QVec combo(count_ + 1);
        combo[count_] = 1;
        for (size_t r = 0; r < rows_.size(); ++r) {
            size_t p = pivots_[r];
            if (v[p] == 0) continue;
            BigRat c = v[p];
            for (size_t j = 0; j < dim_; ++j) v[j] -= c * rows_[r][j];
            for (size_t j = 0; j < combos_[r].size(); ++j) combo[j] -= c * combos_[r][j];
        }
        size_t piv = dim_;
        for (size_t j = 0; j < dim_; ++j)
            if (v[j] != 0) { piv = j; break; }
        ++count_;
        if (piv == dim_) {
            combo.resize(count_);
            return combo;
        }
        BigRat ip = BigRat(1) / v[piv];
        for (auto& x : v) x *= ip;
        for (auto& x : combo) x *= ip;
        combo.resize(count_);
        rows_.push_back(std::move(v));
        combos_.push_back(std::move(combo));
        pivots_.push_back(piv);
        return std::nullopt;
    }

  private:
    size_t dim_;
    size_t count_ = 0;
    QMat rows_;
    QMat combos_; // expressed in terms of fed vectors
    std::vector<size_t> pivots_;
};

// Solve A x = b over Q (A square); nullopt if singular.
inline std::optional<QVec> solve(QMat A, QVec b) {
    size_t n = A.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        BigRat ip = BigRat(1) / A[col][col];
        for (auto& x : A[col]) x *= ip;
        b[col] *= ip;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col] == 0) continue;
            BigRat c = A[r][col];
            for (size_t j = col; j < n; ++j) A[r][j] -= c * A[col][j];
            b[r] -= c * b[col];
        }
    }
    return b;
}

// Row-style Hermite form: returns (H, U) with U*A = H, U unimodular, H with
// staircase of nonnegative pivots and zero rows at the bottom.
inline std::pair<IMat, IMat> row_hnf(IMat A) {
    size_t m = A.size();
    size_t n = m ? A[0].size() : 0;
    IMat U(m, IVec(m));
    for (size_t i = 0; i < m; ++i) U[i][i] = 1;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        // Euclid down the column
        while (true) {
            size_t nz = m;
            for (size_t i = row; i < m; ++i)
                if (A[i][col] != 0 && (nz == m || abs(A[i][col]) < abs(A[nz][col]))) nz = i;
            if (nz == m) break;
            std::swap(A[nz], A[row]);
            std::swap(U[nz], U[row]);
            bool clean = true;
            for (size_t i = row + 1; i < m; ++i) {
                if (A[i][col] == 0) continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), A[i][col].get_mpz_t(), A[row][col].get_mpz_t());
                if (q != 0) {
                    for (size_t j = 0; j < n; ++j) A[i][j] -= q * A[row][j];
                    for (size_t j = 0; j < m; ++j) U[i][j] -= q * U[row][j];
                }
                if (A[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (A[row][col] == 0) continue;
        if (A[row][col] < 0) {
            for (auto& x : A[row]) x = -x;
            for (auto& x : U[row]) x = -x;
        }
        // reduce rows above the pivot
        for (size_t i = 0; i < row; ++i) {
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), A[i][col].get_mpz_t(), A[row][col].get_mpz_t());
            if (q != 0) {
                for (size_t j = 0; j < n; ++j) A[i][j] -= q * A[row][j];
                for (size_t j = 0; j < m; ++j) U[i][j] -= q * U[row][j];
            }
        }
        ++row;
    }
    return {A, U};
}

// Basis of { x in Z^m : x * A = 0 } as rows.
inline IMat left_kernel(const IMat& A) {
    auto [H, U] = row_hnf(A);
    IMat out;
    for (size_t i = 0; i < H.size(); ++i) {
        bool zero = true;
        for (const auto& v : H[i])
            if (v != 0) { zero = false; break; }
        if (zero) out.push_back(U[i]);
    }
    return out;
}

// Basis of { y in Z^r : sum y_i w_i = 0 (mod k) }, k > 0.
inline IMat kernel_of_character(const IVec& w, const BigInt& k) {
    size_t r = w.size();
    IMat A(r + 1, IVec(1));
    for (size_t i = 0; i < r; ++i) A[i][0] = w[i];
    A[r][0] = k;
    IMat ker = left_kernel(A);
    IMat proj;
    for (auto& row : ker) proj.push_back(IVec(row.begin(), row.begin() + r));
    // re-reduce: projections generate the sublattice
    auto [H, U] = row_hnf(proj);
    IMat out;
    for (auto& row : H) {
        bool zero = true;
        for (const auto& v : row)
            if (v != 0) { zero = false; break; }
        if (!zero) out.push_back(row);
    }
    return out;
}

struct SmithForm {
    IMat U, D, V; // U*A*V = D, D diagonal with d_i | d_{i+1}
};

inline SmithForm smith_form(IMat A) {
    size_t m = A.size();
    size_t n = m ? A[0].size() : 0;
    IMat U(m, IVec(m)), V(n, IVec(n));
    for (size_t i = 0; i < m; ++i) U[i][i] = 1;
    for (size_t j = 0; j < n; ++j) V[j][j] = 1;

    auto row_op = [&](size_t i, size_t k, const BigInt& q) { // row_i -= q * row_k
        for (size_t j = 0; j < n; ++j) A[i][j] -= q * A[k][j];
        for (size_t j = 0; j < m; ++j) U[i][j] -= q * U[k][j];
    };
    auto col_op = [&](size_t j, size_t k, const BigInt& q) { // col_j -= q * col_k
        for (size_t i = 0; i < m; ++i) A[i][j] -= q * A[i][k];
        for (size_t i = 0; i < n; ++i) V[i][j] -= q * V[i][k];
    };

    size_t t = 0;
    while (t < m && t < n) {
        // find smallest nonzero entry in the remaining block
        size_t pi = m, pj = n;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j)
                if (A[i][j] != 0 && (pi == m || abs(A[i][j]) < abs(A[pi][pj]))) { pi = i; pj = j; }
        if (pi == m) break;
        std::swap(A[t], A[pi]);
        std::swap(U[t], U[pi]);
        if (pj != t) {
            for (size_t i = 0; i < m; ++i) std::swap(A[i][t], A[i][pj]);
            for (size_t i = 0; i < n; ++i) std::swap(V[i][t], V[i][pj]);
        }
        bool dirty = false;
        for (size_t i = t + 1; i < m; ++i) {
            if (A[i][t] == 0) continue;
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), A[i][t].get_mpz_t(), A[t][t].get_mpz_t());
            row_op(i, t, q);
            if (A[i][t] != 0) dirty = true;
        }
        for (size_t j = t + 1; j < n; ++j) {
            if (A[t][j] == 0) continue;
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), A[t][j].get_mpz_t(), A[t][t].get_mpz_t());
            col_op(j, t, q);
            if (A[t][j] != 0) dirty = true;
        }
        if (dirty) continue; // pivot shrank; repeat at same t
        // enforce divisibility d_t | A[i][j] for the rest of the block
        bool fixed = true;
        for (size_t i = t + 1; i < m && fixed; ++i)
            for (size_t j = t + 1; j < n && fixed; ++j)
                if (A[i][j] % A[t][t] != 0) {
                    // add row i to row t, creating a smaller pivot next round
                    for (size_t c = 0; c < n; ++c) A[t][c] += A[i][c];
                    for (size_t c = 0; c < m; ++c) U[t][c] += U[i][c];
                    fixed = false;
                }
        if (!fixed) continue;
        if (A[t][t] < 0) {
            for (size_t j = 0; j < n; ++j) A[t][j] = -A[t][j];
            for (size_t j = 0; j < m; ++j) U[t][j] = -U[t][j];
        }
        ++t;
    }
    return {U, A, V};
}

// Gram-Schmidt squared norms of the rows (no normalization), rational exact.
inline IVec vec_mat(const IVec& x, const IMat& A) {
    size_t m = A.size();
    size_t n = m ? A[0].size() : 0;
    if (x.size() != m) raise(errc::invalid_argument, "vector-matrix size mismatch");
    IVec out(n);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j) out[j] += x[i] * A[i][j];
    return out;
}

inline IMat mat_mul(const IMat& A, const IMat& B) {
    IMat out;
    out.reserve(A.size());
    for (const auto& row : A) out.push_back(vec_mat(row, B));
    return out;
}

inline std::vector<BigRat> gso_norms(const IMat& B) {
    size_t k = B.size();
    QMat star;
    std::vector<BigRat> norms;
    for (size_t i = 0; i < k; ++i) {
        QVec v(B[i].size());
        for (size_t j = 0; j < v.size(); ++j) v[j] = BigRat(B[i][j]);
        for (size_t r = 0; r < star.size(); ++r) {
            if (norms[r] == 0) continue;
            BigRat mu = dot(v, star[r]) / norms[r];
            for (size_t j = 0; j < v.size(); ++j) v[j] -= mu * star[r][j];
        }
        norms.push_back(dot(v, v));
        star.push_back(std::move(v));
    }
    return norms;
}

// Exact LLL (delta = 3/4) on integer rows, in place.  Small dimensions only:
// the Gram-Schmidt data is recomputed after every swap.
inline void lll_reduce(IMat& B) {
    size_t k = B.size();
    if (k <= 1) return;
    QMat star;
    QMat mu;
    std::vector<BigRat> norms;
    auto recompute = [&]() {
        star.clear();
        mu.assign(k, QVec(k));
        norms.clear();
        for (size_t i = 0; i < k; ++i) {
            QVec v(B[i].size());
            for (size_t j = 0; j < v.size(); ++j) v[j] = BigRat(B[i][j]);
            for (size_t r = 0; r < star.size(); ++r) {
                BigRat m = norms[r] == 0 ? BigRat(0) : dot(v, star[r]) / norms[r];
                mu[i][r] = m;
                for (size_t j = 0; j < v.size(); ++j) v[j] -= m * star[r][j];
            }
            norms.push_back(dot(v, v));
            star.push_back(std::move(v));
        }
    };
    recompute();
    size_t i = 1;
    while (i < k) {
        for (size_t r = i; r-- > 0;) {
            BigInt q = round_nearest(mu[i][r]);
            if (q != 0) {
                for (size_t j = 0; j < B[i].size(); ++j) B[i][j] -= q * B[r][j];
                for (size_t j = 0; j < r; ++j) mu[i][j] -= BigRat(q) * mu[r][j];
                mu[i][r] -= BigRat(q);
            }
        }
        BigRat lhs = norms[i];
        BigRat rhs = (rat(3, 4) - mu[i][i - 1] * mu[i][i - 1]) * norms[i - 1];
        if (lhs >= rhs) {
            ++i;
        } else {
            std::swap(B[i], B[i - 1]);
            recompute();
            i = i > 1 ? i - 1 : 1;
        }
    }
}

} // namespace la
} // namespace hroot
