#include "netopt/closedform.hpp"

#include <cmath>
#include <string>

namespace netopt {
namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw DegenerateParameterError(what);
}

double sq(double x) { return x * x; }

} // namespace

GammaCoeffs gamma_coeffs(double z) {
    require(std::isfinite(z) && std::abs(z) < 1.0,
            "loop gain must satisfy |a12*a21| < 1, got z = " + std::to_string(z));
    const double den = std::pow(1.0 - z * z, 3);
    return {(1.0 + z * z) / den, 2.0 * z / den};
}

Eigen::Matrix2d twonode_covariance(const TwoNodeCycleParams& p, int family) {
    if (family < 1 || family > 4) throw ValidationError("family must be 1..4");
    const double a12 = p.a12, a21 = p.a21;
    require(a12 != 0.0 && a21 != 0.0, "both ring gains must be nonzero");
    const auto [g0, g2] = gamma_coeffs(a12 * a21);
    const double s1 = p.sigma2_1, s2 = p.sigma2_2;
    const double l1 = p.lambda_1, l2 = p.lambda_2;
    require(s1 > 0.0 && s2 > 0.0 && l1 > 0.0 && l2 > 0.0,
            "signal variances must be positive");

    const double ms = s1 * sq(a21) + s2;
    const double ns = s1 + s2 * sq(a12);
    const double ml = l1 * sq(a21) + l2;
    const double nl = l1 + l2 * sq(a12);

    Eigen::Matrix2d cov;
    switch (family) {
        case 1: {
            const double d = sq(g0) * ms * ns - sq(g0 * s1 * a21 + g2 * s2 * a12);
            require(d > 0.0, "degenerate information matrix for pattern I");
            const double c = l1 / d;
            cov(0, 0) = c * g0 * ns;
            cov(0, 1) = -c * (g0 * s1 * a21 / a12 + g2 * s2);
            cov(1, 1) = c * g0 * ms / sq(a12);
            break;
        }
        case 2: {
            const double d = sq(g0) * ms * ns - sq(g0 * s2 * a12 + g2 * s1 * a21);
            require(d > 0.0, "degenerate information matrix for pattern II");
            const double c = l2 / d;
            cov(0, 0) = c * g0 * ns / sq(a21);
            cov(0, 1) = -c * (g0 * s2 * a12 + g2 * s1 * a21) / a21;
            cov(1, 1) = c * g0 * ms;
            break;
        }
        case 3: {
            const double d = s1 * (sq(g0) * ml * nl - sq(g0 * l2 * a12 + g2 * l1 * a21));
            require(d > 0.0, "degenerate information matrix for pattern III");
            const double c = l1 * l2 / d;
            cov(0, 0) = c * g0 * nl / sq(a21);
            cov(0, 1) = -c * (g0 * l2 * a12 + g2 * l1 * a21) / a21;
            cov(1, 1) = c * g0 * ml;
            break;
        }
        default: {
            const double d = s2 * (sq(g0) * ml * nl - sq(g0 * l1 * a21 + g2 * l2 * a12));
            require(d > 0.0, "degenerate information matrix for pattern IV");
            const double c = l1 * l2 / d;
            cov(0, 0) = c * g0 * nl;
            cov(0, 1) = -c * (g0 * l1 * a21 + g2 * l2 * a12) / a12;
            cov(1, 1) = c * g0 * ml / sq(a12);
            break;
        }
    }
    cov(1, 0) = cov(0, 1);
    return cov;
}

std::array<double, 2> twonode_variances(const TwoNodeCycleParams& p, int family) {
    const Eigen::Matrix2d cov = twonode_covariance(p, family);
    return {cov(0, 0), cov(1, 1)};
}

std::array<double, 2> threenode_branch_variances(const ThreeNodeBranchParams& p,
                                                 int family) {
    if (family != 1 && family != 2) throw ValidationError("family must be 1 or 2");
    require(p.sigma2_1 > 0.0 && p.lambda_2 > 0.0 && p.lambda_3 > 0.0,
            "signal variances must be positive");
    if (family == 1) {
        require(p.a32 != 0.0, "a32 must be nonzero for pattern ({1,2},{3})");
        require(p.sigma2_2 > 0.0, "sigma2_2 must be positive for pattern ({1,2},{3})");
        return {p.lambda_3 * (sq(p.a21) / p.sigma2_2 + 1.0 / p.sigma2_1) / sq(p.a32),
                p.lambda_3 / p.sigma2_2};
    }
    require(p.a21 != 0.0, "a21 must be nonzero for pattern ({1},{2,3})");
    return {p.lambda_2 / p.sigma2_1,
            (sq(p.a32) * p.lambda_2 + p.lambda_3) / (sq(p.a21) * p.sigma2_1)};
}

double sigma2_crossover(const ThreeNodeBranchParams& p) {
    require(p.a21 != 0.0 && p.a32 != 0.0, "both chain gains must be nonzero");
    require(p.sigma2_1 > 0.0 && p.lambda_2 > 0.0 && p.lambda_3 > 0.0,
            "signal variances must be positive");
    const double a21s = sq(p.a21), a32s = sq(p.a32);
    const double num = p.lambda_3 * p.sigma2_1 * a21s * (a21s + a32s);
    const double den = p.lambda_2 * a32s * (a21s + a32s) + p.lambda_3 * (a32s - a21s);
    require(den > 0.0, "no positive excitation variance equalizes the two patterns here");
    return num / den;
}

std::array<double, 3> fournode_branch_variances(const FourNodeBranchParams& p,
                                                int family) {
    if (family < 1 || family > 4) throw ValidationError("family must be 1..4");
    const double a21s = sq(p.a21), a32s = sq(p.a32), a43s = sq(p.a43);
    const double s1 = p.sigma2_1, s2 = p.sigma2_2, s3 = p.sigma2_3;
    const double l2 = p.lambda_2, l3 = p.lambda_3, l4 = p.lambda_4;
    require(s1 > 0.0 && s2 > 0.0 && s3 > 0.0 && l2 > 0.0 && l3 > 0.0 && l4 > 0.0,
            "signal variances must be positive");
    switch (family) {
        case 1:
            require(p.a21 != 0.0 && p.a43 != 0.0, "a21 and a43 must be nonzero");
            return {l2 / s1,
                    l2 * a32s / (s1 * a21s) + l4 * a32s / (s3 * a43s) +
                        l4 / (s1 * a21s * a43s),
                    l4 / s3};
        case 2: {
            require(p.a32 != 0.0, "a32 must be nonzero");
            const double m = s1 * a21s + s2;
            const double w = l3 * a43s + l4;
            return {l3 * l4 * m / (s1 * s2 * a32s * w),
                    l3 * (s2 * w + l4 * s1 * a21s) / (s2 * w * m),
                    w / (a32s * m)};
        }
        case 3:
            require(p.a32 != 0.0 && p.a43 != 0.0, "a32 and a43 must be nonzero");
            return {l4 * (s1 * a21s + s2) / (s1 * s2 * a32s * a43s),
                    l4 * a32s / (s3 * a43s) + l4 / (s2 * a43s),
                    l4 / s3};
        default:
            require(p.a21 != 0.0 && p.a32 != 0.0, "a21 and a32 must be nonzero");
            return {l2 / s1,
                    (l2 * a32s + l3) / (s1 * a21s),
                    (l3 * a43s + l4) / (s1 * a21s * a32s)};
    }
}

} // namespace netopt
