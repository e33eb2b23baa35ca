#include "bistats/matrix_functions.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <sstream>

#include "bistats/errors.hpp"

namespace bistats {

namespace {

// Pade coefficients for exp, orders 3/5/7/9 (Higham 2005).
constexpr double kB3[] = {120, 60, 12, 1};
constexpr double kB5[] = {30240, 15120, 3360, 420, 30, 1};
constexpr double kB7[] = {17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
constexpr double kB9[] = {17643225600., 8821612800., 2075673600., 302702400.,
                          30270240.,    2162160.,    110880.,     3960.,
                          90.,          1.};
constexpr double kB13[] = {64764752532480000., 32382376266240000.,
                           7771770303897600.,  1187353796428800.,
                           129060195264000.,   10559470521600.,
                           670442572800.,      33522128640.,
                           1323241920.,        40840800.,
                           960960.,            16380.,
                           182.,               1.};

// 1-norm bounds below which the corresponding Pade order is accurate
// to double precision.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068;
constexpr double kTheta13 = 5.371920351148152;

double norm1(const Eigen::MatrixXd& a) {
  return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Evaluates the odd/even split r = (V-U)^{-1}(V+U) for orders 3..9.
Eigen::MatrixXd pade_low(const Eigen::MatrixXd& a, const double* b, int m) {
  const int n = static_cast<int>(a.rows());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd a2 = a * a;
  Eigen::MatrixXd u = b[1] * id;
  Eigen::MatrixXd v = b[0] * id;
  Eigen::MatrixXd pow = id;
  for (int k = 2; k <= m; k += 2) {
    pow = pow * a2;
    v += b[k] * pow;
    if (k + 1 <= m) u += b[k + 1] * pow;
  }
  u = a * u;
  return (v - u).partialPivLu().solve(v + u);
}

Eigen::MatrixXd pade13(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  const double* b = kB13;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a2 * a4;
  Eigen::MatrixXd u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
           b[3] * a2 + b[1] * id);
  Eigen::MatrixXd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                      b[4] * a4 + b[2] * a2 + b[0] * id;
  return (v - u).partialPivLu().solve(v + u);
}

// Gauss-Legendre nodes/weights on [0,1], 8 points: the partial-fraction
// form of the [8/8] Pade approximant of log(I + X). Accurate to ~1e-19
// for ||X|| <= 0.25.
constexpr int kLogPadeOrder = 8;
constexpr double kGlNodes[kLogPadeOrder] = {
    0.019855071751231884158, 0.1016667612931866302, 0.23723379504183550709,
    0.40828267875217509753,  0.59171732124782490247, 0.76276620495816449291,
    0.8983332387068133698,   0.98014492824876811584};
constexpr double kGlWeights[kLogPadeOrder] = {
    0.050614268145188129576, 0.11119051722668723527, 0.15685332293894364367,
    0.18134189168918099148,  0.18134189168918099148, 0.15685332293894364367,
    0.11119051722668723527,  0.050614268145188129576};

constexpr double kLogPadeRadius = 0.25;

Eigen::MatrixXd log_pade(const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.rows());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd result = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < kLogPadeOrder; ++j) {
    result += kGlWeights[j] *
              ((id + kGlNodes[j] * x).partialPivLu().solve(x));
  }
  return result;
}

}  // namespace

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& a) {
  const double nrm = norm1(a);
  if (nrm <= kTheta3) return pade_low(a, kB3, 3);
  if (nrm <= kTheta5) return pade_low(a, kB5, 5);
  if (nrm <= kTheta7) return pade_low(a, kB7, 7);
  if (nrm <= kTheta9) return pade_low(a, kB9, 9);

  int s = 0;
  Eigen::MatrixXd scaled = a;
  if (nrm > kTheta13) {
    s = static_cast<int>(std::ceil(std::log2(nrm / kTheta13)));
    scaled = a / std::ldexp(1.0, s);
  }
  Eigen::MatrixXd result = pade13(scaled);
  for (int i = 0; i < s; ++i) result = result * result;
  return result;
}

double spectrum_branch_distance(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, /*computeEigenvectors=*/false);
  double dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < a.rows(); ++i) {
    const std::complex<double> ev = es.eigenvalues()[i];
    const double d = ev.real() <= 0.0 ? std::abs(ev.imag()) : std::abs(ev);
    dist = std::min(dist, d);
  }
  return dist;
}

Eigen::MatrixXd matrix_sqrt(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd y = a;
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(n, n);
  constexpr int kMaxIter = 100;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    const Eigen::MatrixXd y_next = 0.5 * (y + z.partialPivLu().inverse());
    const Eigen::MatrixXd z_next = 0.5 * (z + y.partialPivLu().inverse());
    const double delta = norm1(y_next - y);
    y = y_next;
    z = z_next;
    if (delta <= 1e-14 * std::max(1.0, norm1(y))) return y;
  }
  throw NoConvergenceError("matrix_sqrt: Denman-Beavers iteration stalled");
}

Eigen::MatrixXd matrix_log(const Eigen::MatrixXd& a, double branch_tol) {
  const int n = static_cast<int>(a.rows());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);

  // Fast path: the spectrum of A lies in the disk |z-1| <= ||A-I||, so a
  // small residual certifies the branch condition without an eigensolve.
  Eigen::MatrixXd x = a;
  if (norm1(x - id) > kLogPadeRadius) {
    const double dist = spectrum_branch_distance(a);
    if (!(dist > branch_tol)) {
      std::ostringstream msg;
      msg << "matrix_log: eigenvalue within " << branch_tol
          << " of the closed negative real axis (distance " << dist << ")";
      throw OutOfDomainError(msg.str());
    }
    int s = 0;
    constexpr int kMaxRoots = 60;
    while (norm1(x - id) > kLogPadeRadius && s < kMaxRoots) {
      x = matrix_sqrt(x);
      ++s;
    }
    if (norm1(x - id) > kLogPadeRadius)
      throw NoConvergenceError("matrix_log: inverse scaling did not contract");
    return std::ldexp(1.0, s) * log_pade(x - id);
  }
  return log_pade(x - id);
}

}  // namespace bistats
