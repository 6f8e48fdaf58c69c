#include "subtile/matrix.hpp"

#include <cstdlib>

#include "subtile/errors.hpp"

namespace subtile {

namespace {

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in matrix arithmetic");
    return r;
}

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in matrix arithmetic");
    return r;
}

}  // namespace

IMat IMat::identity(int size) {
    IMat I(size);
    for (int i = 0; i < size; ++i) I.at(i, i) = 1;
    return I;
}

IMat mat_mul(const IMat& A, const IMat& B) {
    IMat C(A.n);
    for (int i = 0; i < A.n; ++i)
        for (int k = 0; k < A.n; ++k) {
            long long aik = A.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < A.n; ++j)
                C.at(i, j) = checked_add(C.at(i, j), checked_mul(aik, B.at(k, j)));
        }
    return C;
}

IMat mat_pow(const IMat& A, int k) {
    IMat r = IMat::identity(A.n);
    IMat base = A;
    while (k > 0) {
        if (k & 1) r = mat_mul(r, base);
        k >>= 1;
        if (k > 0) base = mat_mul(base, base);
    }
    return r;
}

std::vector<long long> mat_vec(const IMat& A, const std::vector<long long>& x) {
    std::vector<long long> y(A.n, 0);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j)
            y[i] = checked_add(y[i], checked_mul(A.at(i, j), x[j]));
    return y;
}

std::vector<long long> mat_t_vec(const IMat& A, const std::vector<long long>& x) {
    std::vector<long long> y(A.n, 0);
    for (int j = 0; j < A.n; ++j)
        for (int i = 0; i < A.n; ++i)
            y[j] = checked_add(y[j], checked_mul(A.at(i, j), x[i]));
    return y;
}

std::vector<double> mat_vec(const IMat& A, const std::vector<double>& x) {
    std::vector<double> y(A.n, 0.0);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j)
            y[i] += static_cast<double>(A.at(i, j)) * x[j];
    return y;
}

std::vector<double> mat_t_vec(const IMat& A, const std::vector<double>& x) {
    std::vector<double> y(A.n, 0.0);
    for (int j = 0; j < A.n; ++j)
        for (int i = 0; i < A.n; ++i)
            y[j] += static_cast<double>(A.at(i, j)) * x[i];
    return y;
}

bool is_primitive(const IMat& S) {
    int m = S.n;
    if (m == 0) return false;
    // Work on the boolean support; entries stay 0/1 so no overflow.
    IMat B(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) B.at(i, j) = S.at(i, j) > 0 ? 1 : 0;
    auto all_positive = [m](const IMat& M) {
        for (long long v : M.a)
            if (v == 0) return false;
        return true;
    };
    int bound = m * m - 2 * m + 2;
    IMat P = B;
    for (int k = 1; k <= bound; ++k) {
        if (all_positive(P)) return true;
        IMat Q(m);
        for (int i = 0; i < m; ++i)
            for (int l = 0; l < m; ++l) {
                if (P.at(i, l) == 0) continue;
                for (int j = 0; j < m; ++j)
                    if (B.at(l, j) > 0) Q.at(i, j) = 1;
            }
        P = Q;
    }
    return all_positive(P);
}

std::vector<long long> char_poly(const IMat& A) {
    int n = A.n;
    std::vector<long long> c(n + 1, 0);
    c[n] = 1;
    IMat M(n);  // starts at zero; first step gives M_1 = A
    long long ck = 1;
    for (int k = 1; k <= n; ++k) {
        // M_k = A (M_{k-1} + c_{n-k+1} I)
        IMat T = M;
        for (int i = 0; i < n; ++i) T.at(i, i) = checked_add(T.at(i, i), ck);
        M = mat_mul(A, T);
        long long tr = 0;
        for (int i = 0; i < n; ++i) tr = checked_add(tr, M.at(i, i));
        if (tr % k != 0) throw Error("char_poly: non-integer trace quotient");
        ck = -tr / k;
        c[n - k] = ck;
    }
    return c;
}

}  // namespace subtile
