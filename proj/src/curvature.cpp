#include "yamabe/curvature.hpp"

#include <cmath>
#include <json.hpp>

namespace yamabe {

Tensor4::Tensor4(int n) : n_(n) {
    if (n < 3 || n > 8) throw Error(ErrorCode::dimension_error, "rank-4 tensors supported for 3 <= n <= 8");
    a_.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
}

int Tensor4::idx(int i, int j, int k, int l) const {
    if (i < 0 || j < 0 || k < 0 || l < 0 || i >= n_ || j >= n_ || k >= n_ || l >= n_)
        throw Error(ErrorCode::invalid_argument, "tensor index out of range");
    return ((i * n_ + j) * n_ + k) * n_ + l;
}

Tensor4 Tensor4::operator+(const Tensor4& o) const {
    if (o.n_ != n_) throw Error(ErrorCode::dimension_error, "tensor dimension mismatch");
    Tensor4 r(n_);
    for (std::size_t s = 0; s < a_.size(); ++s) r.a_[s] = a_[s] + o.a_[s];
    return r;
}

Tensor4 Tensor4::operator-(const Tensor4& o) const {
    if (o.n_ != n_) throw Error(ErrorCode::dimension_error, "tensor dimension mismatch");
    Tensor4 r(n_);
    for (std::size_t s = 0; s < a_.size(); ++s) r.a_[s] = a_[s] - o.a_[s];
    return r;
}

Tensor4 Tensor4::operator*(double c) const {
    Tensor4 r(n_);
    for (std::size_t s = 0; s < a_.size(); ++s) r.a_[s] = c * a_[s];
    return r;
}

double Tensor4::max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
}

double Tensor4::symmetry_defect() const {
    double d = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k)
                for (int l = 0; l < n_; ++l) {
                    const double t = at(i, j, k, l);
                    d = std::max(d, std::abs(t + at(j, i, k, l)));
                    d = std::max(d, std::abs(t + at(i, j, l, k)));
                    d = std::max(d, std::abs(t - at(k, l, i, j)));
                    d = std::max(d, std::abs(t + at(j, k, i, l) + at(k, i, j, l)));
                }
    return d;
}

std::vector<double> Tensor4::ricci() const {
    std::vector<double> r(static_cast<std::size_t>(n_) * n_, 0.0);
    for (int j = 0; j < n_; ++j)
        for (int l = 0; l < n_; ++l) {
            double s = 0.0;
            for (int i = 0; i < n_; ++i) s += at(i, j, i, l);
            r[j * n_ + l] = s;
        }
    return r;
}

std::string Tensor4::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["n"] = n_;
    j["entries"] = a_;
    // sparse view for human consumption: nonzero components with their indices
    nlohmann::json comps = nlohmann::json::array();
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k)
            for (int l = 0; l < n_; ++l)
                for (int m = 0; m < n_; ++m)
                    if (at(i, k, l, m) != 0.0)
                        comps.push_back({{"ijkl", {i, k, l, m}}, {"value", at(i, k, l, m)}});
    j["components"] = std::move(comps);
    return j.dump();
}

Tensor4 Tensor4::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        Tensor4 t(j.at("n").get<int>());
        auto e = j.at("entries").get<std::vector<double>>();
        if (e.size() != t.a_.size()) throw Error(ErrorCode::io_error, "tensor entry count mismatch");
        t.a_ = std::move(e);
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::io_error, std::string("malformed tensor document: ") + e.what());
    }
}

Tensor4 kulkarni_nomizu(const std::vector<double>& h, const std::vector<double>& k, int n) {
    if (h.size() != static_cast<std::size_t>(n) * n || k.size() != static_cast<std::size_t>(n) * n)
        throw Error(ErrorCode::dimension_error, "symmetric 2-tensors must be n*n");
    Tensor4 t(n);
    const auto H = [&](int i, int j) { return h[i * n + j]; };
    const auto K = [&](int i, int j) { return k[i * n + j]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    t.at(i, j, a, b) =
                        H(i, a) * K(j, b) + H(j, b) * K(i, a) - H(i, b) * K(j, a) - H(j, a) * K(i, b);
    return t;
}

Tensor4 product_sphere_riemann(int p, int q) {
    if (p < 2 || q < 2) throw Error(ErrorCode::dimension_error, "product sphere requires p, q >= 2");
    const int n = p + q;
    Tensor4 r(n);
    const auto block = [&](int i) { return i < p ? 0 : 1; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    if (block(i) != block(j) || block(i) != block(k) || block(i) != block(l)) continue;
                    r.at(i, j, k, l) = (i == k ? 1.0 : 0.0) * (j == l ? 1.0 : 0.0) -
                                       (i == l ? 1.0 : 0.0) * (j == k ? 1.0 : 0.0);
                }
    return r;
}

Tensor4 weyl_from_decomposition(const Tensor4& riemann) {
    const int n = riemann.n();
    std::vector<double> ric = riemann.ricci();
    double scal = 0.0;
    for (int i = 0; i < n; ++i) scal += ric[i * n + i];
    std::vector<double> g(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) g[i * n + i] = 1.0;
    std::vector<double> schouten_like(ric);  // Ric - S/(2(n-1)) g
    for (int i = 0; i < n; ++i) schouten_like[i * n + i] -= scal / (2.0 * (n - 1));
    return riemann - kulkarni_nomizu(schouten_like, g, n) * (1.0 / (n - 2));
}

Tensor4 product_sphere_weyl(int p, int q) {
    if (p < 2 || q < 2) throw Error(ErrorCode::dimension_error, "product sphere requires p, q >= 2");
    const int n = p + q;
    const double C1 = 2.0 * q * (q - 1) / ((n - 1.0) * (n - 2.0));
    const double C2 = 2.0 * p * (p - 1) / ((n - 1.0) * (n - 2.0));
    const double C3 = 2.0 * (p - 1.0) * (q - 1.0) / ((n - 1.0) * (n - 2.0));
    std::vector<double> h(static_cast<std::size_t>(n) * n, 0.0), m(h);
    for (int i = 0; i < p; ++i) h[i * n + i] = 1.0;
    for (int i = p; i < n; ++i) m[i * n + i] = 1.0;
    return kulkarni_nomizu(h, h, n) * (C1 / 2) + kulkarni_nomizu(m, m, n) * (C2 / 2) +
           (kulkarni_nomizu(h, m, n) + kulkarni_nomizu(m, h, n)) * (-C3 / 2);
}

}  // namespace yamabe
