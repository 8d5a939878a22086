#include "support/test_util.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace testutil {

using namespace cvxsr;

Plane random_plane(int w, int h, Rng &rng, double lo, double hi) {
  Plane p(w, h);
  for (double &v : p.data) v = rng.uniform(lo, hi);
  return p;
}

VectorField random_field(int w, int h, Rng &rng, double lo, double hi) {
  VectorField f(w, h);
  for (double &v : f.px.data) v = rng.uniform(lo, hi);
  for (double &v : f.py.data) v = rng.uniform(lo, hi);
  return f;
}

PrimalVars random_primal(int w, int h, int n, Rng &rng) {
  PrimalVars x;
  x.u = random_plane(w, h, rng, -1.0, 1.0);
  for (int i = 0; i < n; ++i) x.w.push_back(random_plane(w, h, rng, -1.0, 1.0));
  return x;
}

DualVars random_dual(int w, int h, int n, Rng &rng) {
  DualVars y;
  y.p = random_field(w, h, rng);
  for (int i = 0; i < n; ++i) y.r.push_back(random_plane(w, h, rng, -1.0, 1.0));
  return y;
}

Eigen::VectorXd to_vec(const Plane &p) {
  Eigen::VectorXd v(p.size());
  for (size_t i = 0; i < p.size(); ++i) v[static_cast<long>(i)] = p.data[i];
  return v;
}

Plane to_plane(const Eigen::VectorXd &v, int w, int h) {
  Plane p(w, h);
  for (size_t i = 0; i < p.size(); ++i) p.data[i] = v[static_cast<long>(i)];
  return p;
}

Eigen::VectorXd to_vec(const PrimalVars &x) {
  const long per = static_cast<long>(x.u.size());
  Eigen::VectorXd v(per * (1 + static_cast<long>(x.w.size())));
  v.segment(0, per) = to_vec(x.u);
  for (size_t i = 0; i < x.w.size(); ++i)
    v.segment(per * (1 + static_cast<long>(i)), per) = to_vec(x.w[i]);
  return v;
}

Eigen::VectorXd to_vec(const DualVars &y) {
  const long per = static_cast<long>(y.p.px.size());
  Eigen::VectorXd v(per * (2 + static_cast<long>(y.r.size())));
  v.segment(0, per) = to_vec(y.p.px);
  v.segment(per, per) = to_vec(y.p.py);
  for (size_t i = 0; i < y.r.size(); ++i)
    v.segment(per * (2 + static_cast<long>(i)), per) = to_vec(y.r[i]);
  return v;
}

PrimalVars to_primal(const Eigen::VectorXd &v, int w, int h, int n) {
  const long per = static_cast<long>(w) * h;
  PrimalVars x;
  x.u = to_plane(v.segment(0, per), w, h);
  for (int i = 0; i < n; ++i)
    x.w.push_back(to_plane(v.segment(per * (1 + i), per), w, h));
  return x;
}

DualVars to_dual(const Eigen::VectorXd &v, int w, int h, int n) {
  const long per = static_cast<long>(w) * h;
  DualVars y;
  y.p.px = to_plane(v.segment(0, per), w, h);
  y.p.py = to_plane(v.segment(per, per), w, h);
  for (int i = 0; i < n; ++i)
    y.r.push_back(to_plane(v.segment(per * (2 + i), per), w, h));
  return y;
}

Eigen::MatrixXd
materialize(const std::function<Eigen::VectorXd(const Eigen::VectorXd &)> &op,
            int in_dim, int out_dim) {
  Eigen::MatrixXd m(out_dim, in_dim);
  for (int j = 0; j < in_dim; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(in_dim);
    e[j] = 1.0;
    m.col(j) = op(e);
  }
  return m;
}

double adjoint_identity_error(double lhs, double rhs) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
  return std::abs(lhs - rhs) / scale;
}

std::filesystem::path make_temp_dir(const std::string &tag) {
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("cvxsr_test_" + tag + "_" + std::to_string(::getpid()) +
                    "_" + std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

int run_cli(const std::string &args, std::string *out, std::string *err) {
  const auto dir = make_temp_dir("cli_io");
  const auto out_path = dir / "stdout.txt";
  const auto err_path = dir / "stderr.txt";
  const std::string cmd = std::string(CVXSR_CLI_PATH) + " " + args + " > " +
                          out_path.string() + " 2> " + err_path.string();
  const int status = std::system(cmd.c_str());
  if (out) *out = slurp(out_path);
  if (err) *err = slurp(err_path);
  std::filesystem::remove_all(dir);
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace testutil
