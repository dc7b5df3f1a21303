#include "selfaffine/similitude.hpp"

#include <cmath>
#include <cstddef>

namespace selfaffine {

Mat identity_matrix(std::size_t d) {
    Mat I(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i) I[i][i] = 1.0;
    return I;
}

Vec mat_apply(const Mat& M, const Vec& x) {
    std::size_t d = M.size();
    Vec y(d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) y[i] += M[i][j] * x[j];
    return y;
}

Mat mat_mul(const Mat& A, const Mat& B) {
    std::size_t d = A.size();
    Mat C(d, std::vector<double>(d, 0.0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            for (std::size_t j = 0; j < d; ++j) C[i][j] += A[i][k] * B[k][j];
    return C;
}

double orthogonality_defect(const Mat& M) {
    std::size_t d = M.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < d; ++k) dot += M[k][i] * M[k][j];
            double target = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(dot - target));
        }
    }
    return worst;
}

double vec_norm(const Vec& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double vec_dist(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dxi = x[i] - y[i];
        s += dxi * dxi;
    }
    return std::sqrt(s);
}

Vec Similitude::apply(const Vec& x) const {
    if (scale == 0.0) return translation;
    Vec y = mat_apply(rotation, x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = scale * y[i] + translation[i];
    return y;
}

Similitude Similitude::compose(const Similitude& other) const {
    Similitude r;
    r.scale = scale * other.scale;
    r.rotation = mat_mul(rotation, other.rotation);
    r.translation = apply(other.translation);
    return r;
}

}  // namespace selfaffine
