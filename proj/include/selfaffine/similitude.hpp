#pragma once

#include <cstddef>
#include <vector>

namespace selfaffine {

using Vec = std::vector<double>;
using Mat = std::vector<std::vector<double>>;  // row-major, square

Mat identity_matrix(std::size_t d);
Vec mat_apply(const Mat& M, const Vec& x);
Mat mat_mul(const Mat& A, const Mat& B);
// max_ij |M^T M - I|, used to test orthogonality.
double orthogonality_defect(const Mat& M);
double vec_norm(const Vec& x);
double vec_dist(const Vec& x, const Vec& y);

// Contractive similitude x -> scale * R * x + translation with R orthogonal.
// scale == 0 encodes a constant map whose value is the translation.
struct Similitude {
    double scale = 0.0;
    Mat rotation;     // d x d
    Vec translation;  // length d

    std::size_t dim() const { return translation.size(); }
    Vec apply(const Vec& x) const;
    // Composition (*this after other): x -> this(other(x)).
    Similitude compose(const Similitude& other) const;
};

}  // namespace selfaffine
