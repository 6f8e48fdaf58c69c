#pragma once

#include <cstdint>
#include <vector>

namespace subtile {

// Small dense integer matrix (row-major). Sized for incidence matrices of a
// handful of prototypes; arithmetic is checked against int64 overflow.
struct IMat {
    int n = 0;
    std::vector<long long> a;

    IMat() = default;
    explicit IMat(int size) : n(size), a(static_cast<size_t>(size) * size, 0) {}

    long long& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    long long at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    static IMat identity(int size);
    bool operator==(const IMat&) const = default;
};

// Checked products; throw OverflowError if any entry leaves int64 range.
IMat mat_mul(const IMat& A, const IMat& B);
IMat mat_pow(const IMat& A, int k);

// y = A x and y = A^t x over int64, checked.
std::vector<long long> mat_vec(const IMat& A, const std::vector<long long>& x);
std::vector<long long> mat_t_vec(const IMat& A, const std::vector<long long>& x);

// Double variants (for real-valued vectors against integer matrices).
std::vector<double> mat_vec(const IMat& A, const std::vector<double>& x);
std::vector<double> mat_t_vec(const IMat& A, const std::vector<double>& x);

// Primitivity: some power S^k, k bounded by the Wielandt exponent
// m^2 - 2m + 2, is entrywise positive. Boolean powers only.
bool is_primitive(const IMat& S);

// Coefficients of det(xI - A) as [c_0, ..., c_{n-1}, 1] via the
// Faddeev-LeVerrier recursion in exact integer arithmetic.
std::vector<long long> char_poly(const IMat& A);

}  // namespace subtile
