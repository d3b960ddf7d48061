#pragma once

#include <complex>
#include <Eigen/Core>

namespace dkg {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;
using Spinor = Eigen::Vector4cd;
using Vec3 = Eigen::Vector3d;

inline constexpr cplx iu{0.0, 1.0};

// Japanese bracket <s> = sqrt(1 + s^2), used in every decay weight.
inline double jbracket(double s) { return std::sqrt(1.0 + s * s); }

}  // namespace dkg
