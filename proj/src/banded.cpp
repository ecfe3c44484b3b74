#include "dpplab/banded.hpp"

#include "dpplab/error.hpp"

#include <algorithm>

namespace dpplab {

BandMatrix::BandMatrix(int n, int sub, int super)
    : n_(n), sub_(std::min(sub, std::max(n - 1, 0))), super_(std::min(super, std::max(n - 1, 0))) {
    require(n >= 0 && sub >= 0 && super >= 0, "BandMatrix: negative dimension");
    data_.assign(static_cast<std::size_t>(n_) * (sub_ + super_ + 1), 0.0);
}

double BandMatrix::operator()(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || !in_band(i, j)) return 0.0;
    return data_[static_cast<std::size_t>(i) * (sub_ + super_ + 1) + (j - i + sub_)];
}

double& BandMatrix::at(int i, int j) {
    require(i >= 0 && j >= 0 && i < n_ && j < n_ && in_band(i, j), "BandMatrix::at: outside band");
    return data_[static_cast<std::size_t>(i) * (sub_ + super_ + 1) + (j - i + sub_)];
}

BandMatrix BandMatrix::operator*(const BandMatrix& rhs) const {
    require(n_ == rhs.n_, "BandMatrix: size mismatch");
    BandMatrix out(n_, sub_ + rhs.sub_, super_ + rhs.super_);
    for (int i = 0; i < n_; ++i) {
        const int jlo = std::max(0, i - out.sub_);
        const int jhi = std::min(n_ - 1, i + out.super_);
        for (int j = jlo; j <= jhi; ++j) {
            const int tlo = std::max({0, i - sub_, j - rhs.super_});
            const int thi = std::min({n_ - 1, i + super_, j + rhs.sub_});
            double s = 0.0;
            for (int t = tlo; t <= thi; ++t) s += (*this)(i, t) * rhs(t, j);
            if (s != 0.0) out.at(i, j) = s;
        }
    }
    return out;
}

BandMatrix BandMatrix::power(int ell) const {
    require(ell >= 0, "BandMatrix::power: negative exponent");
    BandMatrix result(n_, 0, 0);
    for (int i = 0; i < n_; ++i) result.at(i, i) = 1.0;
    for (int p = 0; p < ell; ++p) result = result * (*this);
    return result;
}

BandMatrix BandMatrix::leading_block(int n) const {
    require(n >= 0 && n <= n_, "BandMatrix::leading_block: size out of range");
    BandMatrix out(n, sub_, super_);
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - out.sub_); j <= std::min(n - 1, i + out.super_); ++j) out.at(i, j) = (*this)(i, j);
    return out;
}

Eigen::MatrixXd BandMatrix::dense() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = std::max(0, i - sub_); j <= std::min(n_ - 1, i + super_); ++j) m(i, j) = (*this)(i, j);
    return m;
}

}  // namespace dpplab
