#pragma once

// Gauss–Legendre rules. Nodes come from the Golub–Welsch eigenproblem of the
// Jacobi matrix and are then polished by Newton iteration on P_n, with weights
// 2/((1 − x²)P_n'(x)²).

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lienard::quadrature {

template <typename Scalar = double>
class GaussLegendre {
public:
    explicit GaussLegendre(int order)
    {
        if (order < 1)
            throw std::invalid_argument("Gauss-Legendre order must be positive");
        using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
        Matrix jacobi = Matrix::Zero(order, order);
        for (int i = 1; i < order; ++i) {
            const Scalar beta = Scalar(i) / std::sqrt(Scalar(4 * i * i - 1));
            jacobi(i, i - 1) = beta;
            jacobi(i - 1, i) = beta;
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi, Eigen::EigenvaluesOnly);

        nodes_.resize(order);
        weights_.resize(order);
        for (int i = 0; i < order; ++i) {
            Scalar x = solver.eigenvalues()[i];
            Scalar dp = 1;
            for (int iter = 0; iter < 10; ++iter) {
                const auto [p, d] = legendre(order, x);
                dp = d;
                const Scalar dx = p / d;
                x -= dx;
                if (std::abs(dx) <= std::numeric_limits<Scalar>::epsilon())
                    break;
            }
            dp = legendre(order, x).second;
            nodes_[i] = x;
            weights_[i] = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
        }
    }

    int order() const { return static_cast<int>(nodes_.size()); }
    const std::vector<Scalar>& nodes() const { return nodes_; }
    const std::vector<Scalar>& weights() const { return weights_; }

    /// ∫_a^b f(x) dx with a single panel.
    template <typename F>
    auto integrate(F&& f, Scalar a, Scalar b) const
    {
        const Scalar half = (b - a) / 2;
        const Scalar mid = (a + b) / 2;
        decltype(f(mid)) sum{};
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            sum += weights_[i] * f(mid + half * nodes_[i]);
        return half * sum;
    }

    /// ∫_a^b f(x) dx split into `panels` equal sub-intervals.
    template <typename F>
    auto integrate_composite(F&& f, Scalar a, Scalar b, int panels) const
    {
        const Scalar width = (b - a) / Scalar(panels);
        decltype(f(a)) sum{};
        for (int j = 0; j < panels; ++j)
            sum += integrate(f, a + width * Scalar(j), a + width * Scalar(j + 1));
        return sum;
    }

private:
    // (P_n(x), P_n'(x)) by the Bonnet recurrence
    static std::pair<Scalar, Scalar> legendre(int n, Scalar x)
    {
        Scalar p0 = 1;
        Scalar p1 = x;
        for (int k = 2; k <= n; ++k) {
            const Scalar p2 = (Scalar(2 * k - 1) * x * p1 - Scalar(k - 1) * p0) / Scalar(k);
            p0 = p1;
            p1 = p2;
        }
        const Scalar pn = n == 0 ? Scalar(1) : p1;
        const Scalar pnm1 = n == 0 ? Scalar(0) : p0;
        const Scalar d = Scalar(n) * (x * pn - pnm1) / (x * x - Scalar(1));
        return {pn, d};
    }

    std::vector<Scalar> nodes_;
    std::vector<Scalar> weights_;
};

}  // namespace lienard::quadrature
