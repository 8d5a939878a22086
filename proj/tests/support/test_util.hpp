#ifndef CVXSR_TEST_UTIL_HPP
#define CVXSR_TEST_UTIL_HPP

#include <Eigen/Dense>
#include <filesystem>
#include <functional>
#include <string>

#include "cvxsr/plane.hpp"
#include "cvxsr/prox.hpp"
#include "cvxsr/rng.hpp"

namespace testutil {

cvxsr::Plane random_plane(int w, int h, cvxsr::Rng &rng, double lo = 0.0,
                          double hi = 1.0);
cvxsr::VectorField random_field(int w, int h, cvxsr::Rng &rng,
                                double lo = -1.0, double hi = 1.0);
cvxsr::PrimalVars random_primal(int w, int h, int n, cvxsr::Rng &rng);
cvxsr::DualVars random_dual(int w, int h, int n, cvxsr::Rng &rng);

Eigen::VectorXd to_vec(const cvxsr::Plane &p);
cvxsr::Plane to_plane(const Eigen::VectorXd &v, int w, int h);
Eigen::VectorXd to_vec(const cvxsr::PrimalVars &x);
Eigen::VectorXd to_vec(const cvxsr::DualVars &y);
cvxsr::PrimalVars to_primal(const Eigen::VectorXd &v, int w, int h, int n);
cvxsr::DualVars to_dual(const Eigen::VectorXd &v, int w, int h, int n);

/// Columns are the images of the canonical basis under the map.
Eigen::MatrixXd
materialize(const std::function<Eigen::VectorXd(const Eigen::VectorXd &)> &op,
            int in_dim, int out_dim);

/// Relative error of the inner-product identity <Tx, y> = <x, T^t y>.
double adjoint_identity_error(double lhs, double rhs);

/// Fresh unique directory under the system temp root.
std::filesystem::path make_temp_dir(const std::string &tag);

/// Runs the CLI binary; captures stdout into `out` when non-null.
/// Returns the process exit code.
int run_cli(const std::string &args, std::string *out = nullptr,
            std::string *err = nullptr);

/// Reads a whole file as bytes; empty if missing.
std::string slurp(const std::filesystem::path &path);

} // namespace testutil

#endif
