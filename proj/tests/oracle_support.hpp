#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "platospec/coupling.hpp"
#include "platospec/graph.hpp"

// Second opinion on the secular condition: plane-wave Ansatz p e^{ikx} + q e^{-ikx},
// Eigen's Jacobi SVD. Shares nothing with the library beyond the graph and U.
namespace oracle {

using C = std::complex<double>;

inline Eigen::MatrixXcd plane_wave_matrix(const platospec::MetricGraph& g,
                                          const std::vector<platospec::VertexCoupling>& cs, double k) {
  const int n = g.edge_count();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  const C I(0.0, 1.0);
  const C e = std::exp(I * k);
  int row = 0;
  for (const auto& v : g.vertices()) {
    const auto& u = cs[v.id].matrix();
    const int d = v.degree();
    for (int r = 0; r < d; ++r, ++row) {
      for (int s = 0; s < d; ++s) {
        const C a = u(r, s) - (r == s ? 1.0 : 0.0);
        const C b = I * (u(r, s) + (r == s ? 1.0 : 0.0));
        const auto end = v.ends[s];
        const int p = 2 * end.edge, q = p + 1;
        if (end.end == platospec::EndSide::Zero) {
          m(row, p) += a + b * I * k;
          m(row, q) += a - b * I * k;
        } else {
          m(row, p) += (a - b * I * k) * e;
          m(row, q) += (a + b * I * k) / e;
        }
      }
      m.row(row) /= m.row(row).cwiseAbs().maxCoeff();
    }
  }
  return m;
}

inline Eigen::VectorXd plane_wave_sigmas(const platospec::MetricGraph& g,
                                         const std::vector<platospec::VertexCoupling>& cs, double k) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(plane_wave_matrix(g, cs, k));
  return svd.singularValues();
}

inline double plane_wave_sigma_min(const platospec::MetricGraph& g,
                                   const std::vector<platospec::VertexCoupling>& cs, double k) {
  const auto s = plane_wave_sigmas(g, cs, k);
  return s(s.size() - 1);
}

inline int plane_wave_nullity(const platospec::MetricGraph& g, const std::vector<platospec::VertexCoupling>& cs,
                              double k, double tol = 1e-6) {
  const auto s = plane_wave_sigmas(g, cs, k);
  int n = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) n += s(i) < tol ? 1 : 0;
  return n;
}

inline std::vector<platospec::VertexCoupling> uniform(const platospec::MetricGraph& g,
                                                      const platospec::CouplingSpec& spec) {
  std::vector<platospec::VertexCoupling> out;
  for (const auto& v : g.vertices()) out.push_back(spec.instantiate(v.degree()));
  return out;
}

inline double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace oracle
