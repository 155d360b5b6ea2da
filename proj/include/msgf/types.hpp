#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace msgf {

using cplx = std::complex<double>;

// 2x2 in 2+1, 4x4 in 3+1; fixed upper bound keeps everything on the stack.
using KernelMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
using SpinorValue = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, 4, 1>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Failure categories; the CLI maps them onto exit codes.
enum class ErrorKind {
    Domain,       // argument outside the admissible set
    Axis,         // evaluation on or too close to the solenoid axis
    Pole,         // proper time on (or within the guard of) a pole of 1/sin
    Convergence,  // quadrature or series did not reach its tolerance
    Tail,         // contour truncation bound violated
    Validation    // malformed configuration
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

}  // namespace msgf
