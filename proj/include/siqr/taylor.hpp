#pragma once

#include <array>
#include <cstddef>

namespace siqr {

/// Truncated Taylor series c0 + c1 t + ... + c_Order t^Order.
///
/// Arithmetic follows the usual truncated power-series rules, so evaluating
/// a vector field on series arguments gives the Taylor coefficients of the
/// field along a curve. Used to build exact derivative jets of model outputs.
template <std::size_t Order>
class Taylor {
public:
    static constexpr std::size_t size = Order + 1;

    constexpr Taylor() = default;
    constexpr Taylor(double constant) { c_[0] = constant; } // NOLINT: implicit by design of the arithmetic

    constexpr double& operator[](std::size_t k) { return c_[k]; }
    constexpr double operator[](std::size_t k) const { return c_[k]; }

    /// k-th time derivative at t = 0, i.e. k! * c_k.
    constexpr double derivative(std::size_t k) const
    {
        double f = 1.0;
        for (std::size_t j = 2; j <= k; ++j) {
            f *= static_cast<double>(j);
        }
        return f * c_[k];
    }

    constexpr Taylor operator-() const
    {
        Taylor r;
        for (std::size_t k = 0; k < size; ++k) {
            r.c_[k] = -c_[k];
        }
        return r;
    }

    constexpr Taylor& operator+=(const Taylor& o)
    {
        for (std::size_t k = 0; k < size; ++k) {
            c_[k] += o.c_[k];
        }
        return *this;
    }

    constexpr Taylor& operator-=(const Taylor& o)
    {
        for (std::size_t k = 0; k < size; ++k) {
            c_[k] -= o.c_[k];
        }
        return *this;
    }

    friend constexpr Taylor operator+(Taylor a, const Taylor& b) { return a += b; }
    friend constexpr Taylor operator-(Taylor a, const Taylor& b) { return a -= b; }

    friend constexpr Taylor operator*(const Taylor& a, const Taylor& b)
    {
        Taylor r;
        for (std::size_t k = 0; k < size; ++k) {
            double s = 0.0;
            for (std::size_t j = 0; j <= k; ++j) {
                s += a.c_[j] * b.c_[k - j];
            }
            r.c_[k] = s;
        }
        return r;
    }

    friend constexpr Taylor operator/(const Taylor& a, const Taylor& b)
    {
        Taylor r;
        for (std::size_t k = 0; k < size; ++k) {
            double s = a.c_[k];
            for (std::size_t j = 1; j <= k; ++j) {
                s -= b.c_[j] * r.c_[k - j];
            }
            r.c_[k] = s / b.c_[0];
        }
        return r;
    }

private:
    std::array<double, size> c_{};
};

template <std::size_t Order>
constexpr double constant_term(const Taylor<Order>& x)
{
    return x[0];
}

constexpr double constant_term(double x) { return x; }

} // namespace siqr
