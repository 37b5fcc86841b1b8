#pragma once

#include <complex>

#include <Eigen/Dense>

#include "rigid/algebra/system.hpp"
#include "rigid/solver/solution.hpp"

namespace rigid {

enum class Predictor { Euler, RungeKutta4 };

struct TrackerOptions {
  Predictor predictor = Predictor::RungeKutta4;
  double initial_step = 0.05;
  double max_step = 0.1;
  double min_step = 1e-12;
  int max_steps = 20000;
  int max_newton = 3;
  double corrector_tol = 1e-9;  // relative Newton step for accepting a corrector
  double divergence = 1e8;
  double extended_below = 1e-7;  // step size below which corrector residuals use double-double
  double tau_im = kTauIm;
};

/// Newton refinement of F(., p) from x. Classifies as Real/Complex/Singular.
Solution refine(const PolynomialSystem& sys, const Eigen::VectorXcd& p, const Eigen::VectorXcd& x,
                double tau_im = kTauIm, int iterations = 12);

/// Extended-precision Newton polish (residual in double-double, solve in double).
Solution polish_double_double(const PolynomialSystem& sys, const Eigen::VectorXcd& p, const Solution& s,
                              double tau_im = kTauIm, int iterations = 4);

/// Max-norm residual of F(x, p).
double residual(const PolynomialSystem& sys, const Eigen::VectorXcd& p, const Eigen::VectorXcd& x);

/// Tracks start from F(., pA) to F(., pB) along p(t) = ((1-t) g pA + t pB) / ((1-t) g + t).
/// For equations linear in the parameters this is the homotopy (1-t) g F_A + t F_B up to scaling.
Solution track_path(const PolynomialSystem& sys, const Eigen::VectorXcd& pA, const Eigen::VectorXcd& pB,
                    const Eigen::VectorXcd& start, std::complex<double> gamma, const TrackerOptions& opts = {});

}  // namespace rigid
