#pragma once

#include "lienard/errors.hpp"

namespace lienard {

/// Physicists' Hermite polynomial H_n(z) by H_{k+1} = 2zH_k − 2kH_{k−1}.
/// Works for any field-like scalar (real or std::complex).
template <typename T>
T hermite(int n, const T& z)
{
    if (n < 0)
        throw DomainError("Hermite degree must be non-negative");
    T h_prev(1);
    if (n == 0)
        return h_prev;
    T h = T(2) * z;
    for (int k = 1; k < n; ++k) {
        T next = T(2) * z * h - T(2 * k) * h_prev;
        h_prev = h;
        h = next;
    }
    return h;
}

/// H_n'(z) = 2nH_{n−1}(z).
template <typename T>
T hermite_derivative(int n, const T& z)
{
    if (n < 0)
        throw DomainError("Hermite degree must be non-negative");
    if (n == 0)
        return T(0);
    return T(2 * n) * hermite(n - 1, z);
}

}  // namespace lienard
