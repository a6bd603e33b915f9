#include "fieldlab/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fieldlab {

namespace {

// Pade-13 coefficients (Higham 2005).
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

template <typename Mat>
Mat expm_impl(const Mat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exp: matrix not square");
    const int n = static_cast<int>(a.rows());
    const double norm = a.template lpNorm<1>();
    int squarings = 0;
    // theta_13 for double precision
    const double theta = 5.371920351148152;
    Mat as = a;
    if (norm > theta) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / theta)));
        as /= std::pow(2.0, squarings);
    }
    const Mat id = Mat::Identity(n, n);
    const Mat a2 = as * as;
    const Mat a4 = a2 * a2;
    const Mat a6 = a2 * a4;
    Mat u = as * (a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2) +
                  kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2 + kPade13[1] * id);
    Mat v = a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2) +
            kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2 + kPade13[0] * id;
    Mat r = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    return r;
}

Eigen::MatrixXd spd_pow(const Eigen::MatrixXd& a, double exponent, double group_tol) {
    if (a.rows() != a.cols()) throw std::invalid_argument("spd_sqrt: matrix not square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw std::runtime_error("spd_sqrt: eigensolver failed");
    Eigen::VectorXd lambda = es.eigenvalues();
    // average near-degenerate clusters
    const int n = static_cast<int>(lambda.size());
    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && lambda[end] - lambda[end - 1] <= group_tol) ++end;
        const double mean = lambda.segment(start, end - start).mean();
        lambda.segment(start, end - start).setConstant(mean);
        start = end;
    }
    Eigen::VectorXd powed(n);
    for (int i = 0; i < n; ++i) {
        if (lambda[i] < -group_tol) {
            throw std::invalid_argument("spd_sqrt: matrix has negative eigenvalue " +
                                        std::to_string(lambda[i]));
        }
        const double clipped = std::max(lambda[i], 0.0);
        if (exponent < 0.0 && clipped == 0.0) {
            throw std::invalid_argument("spd_inv_sqrt: matrix is singular");
        }
        powed[i] = std::pow(clipped, exponent);
    }
    return es.eigenvectors() * powed.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& a) { return expm_impl<Eigen::MatrixXd>(a); }
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& a) { return expm_impl<Eigen::MatrixXcd>(a); }

Eigen::MatrixXd spd_sqrt(const Eigen::MatrixXd& a, double group_tol) {
    return spd_pow(a, 0.5, group_tol);
}

Eigen::MatrixXd spd_inv_sqrt(const Eigen::MatrixXd& a, double group_tol) {
    return spd_pow(a, -0.5, group_tol);
}

Eigen::VectorXd random_vector(Rng& rng, int n, double scale) {
    std::normal_distribution<double> dist(0.0, scale);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = dist(rng);
    return v;
}

Eigen::VectorXcd random_complex_vector(Rng& rng, int n, double scale) {
    std::normal_distribution<double> dist(0.0, scale);
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v[i] = std::complex<double>(dist(rng), dist(rng));
    return v;
}

Eigen::MatrixXd random_symmetric(Rng& rng, int n, double scale) {
    std::normal_distribution<double> dist(0.0, scale);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
    return 0.5 * (m + m.transpose());
}

}  // namespace fieldlab
