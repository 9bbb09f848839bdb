#pragma once

#include <string>
#include <vector>

#include "yamabe/numerics.hpp"

namespace yamabe {

// Dense rank-4 covariant tensor on R^n coordinates, n <= 8.
class Tensor4 {
  public:
    explicit Tensor4(int n);
    int n() const { return n_; }
    double& at(int i, int j, int k, int l) { return a_[idx(i, j, k, l)]; }
    double at(int i, int j, int k, int l) const { return a_[idx(i, j, k, l)]; }

    Tensor4 operator+(const Tensor4& o) const;
    Tensor4 operator-(const Tensor4& o) const;
    Tensor4 operator*(double c) const;

    double max_abs() const;
    // max violation over all entries of the algebraic curvature symmetries
    // (antisymmetry in both pairs, pair swap, first Bianchi).
    double symmetry_defect() const;
    // Ricci trace g^{ik} T_{ijkl} with g = identity in these coordinates.
    std::vector<double> ricci() const;  // n*n row-major

    std::string to_json() const;
    static Tensor4 from_json(const std::string& text);

  private:
    int idx(int i, int j, int k, int l) const;
    int n_;
    std::vector<double> a_;
};

// Kulkarni-Nomizu product of symmetric 2-tensors (row-major n*n):
// (h kn k)_{ijab} = h_{ia}k_{jb} + h_{jb}k_{ia} - h_{ib}k_{ja} - h_{ja}k_{ib}.
Tensor4 kulkarni_nomizu(const std::vector<double>& h, const std::vector<double>& k, int n);

// Weyl tensor of S^p(1) x S^q(1) at a point, in an orthonormal frame with the
// first p vectors tangent to the S^p factor. Requires p, q >= 2.
Tensor4 product_sphere_weyl(int p, int q);

// Weyl part of a curvature tensor:
// W = R - (1/(n-2)) (Ric - S/(2(n-1)) g) kn g.
Tensor4 weyl_from_decomposition(const Tensor4& riemann);

// Riemann tensor of S^p(1) x S^q(1) in the same frame.
Tensor4 product_sphere_riemann(int p, int q);

}  // namespace yamabe
