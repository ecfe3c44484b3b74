#pragma once

#include <Eigen/Dense>

#include <vector>

namespace dpplab {

/// Square matrix with `sub` nonzero subdiagonals and `super` nonzero
/// superdiagonals, stored row by row over the band.
class BandMatrix {
public:
    BandMatrix(int n, int sub, int super);

    int size() const { return n_; }
    int sub() const { return sub_; }
    int super() const { return super_; }

    bool in_band(int i, int j) const { return j - i <= super_ && i - j <= sub_; }
    double operator()(int i, int j) const;
    /// Writable band element; (i, j) must lie inside the band.
    double& at(int i, int j);

    BandMatrix operator*(const BandMatrix& rhs) const;
    BandMatrix power(int ell) const;
    /// Leading n x n block.
    BandMatrix leading_block(int n) const;
    Eigen::MatrixXd dense() const;

private:
    int n_;
    int sub_;
    int super_;
    std::vector<double> data_;  // row i holds columns i - sub .. i + super
};

}  // namespace dpplab
