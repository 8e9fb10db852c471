// Invert one Hermitian matrix with both kernels and check the product.
//
//   invert_one                       built-in example
//   invert_one a reb imb rec imc d ree ime f

#include <cstdio>
#include <cstdlib>

#include "herm3/herm3.hpp"

int main(int argc, char** argv) {
  using namespace herm3;
  Herm3<double> m{2.0, 3.0, 1.0, {1.0, 1.0}, {0.0, 0.0}, {0.0, 1.0}};
  if (argc == 10) {
    double v[9];
    for (int k = 0; k < 9; ++k) v[k] = std::strtod(argv[k + 1], nullptr);
    m = load_matrix(v);
  } else if (argc != 1) {
    std::fprintf(stderr, "usage: %s [a re_b im_b re_c im_c d re_e im_e f]\n", argv[0]);
    return 2;
  }

  for (Method method : {Method::Fast, Method::Cholesky}) {
    const auto r = invert(m, method);
    std::printf("%-8s status %s\n", std::string(to_string(method)).c_str(), std::string(to_string(r.status)).c_str());
    if (!r.ok()) continue;
    const auto& x = r.inverse;
    std::printf("  det %.17g  1/det %.17g\n", r.det, r.inv_det);
    std::printf("  a_i %.17g  d_i %.17g  f_i %.17g\n", x.a, x.d, x.f);
    std::printf("  b_i %.17g%+.17gi\n  c_i %.17g%+.17gi\n  e_i %.17g%+.17gi\n", x.b.re, x.b.im, x.c.re, x.c.im,
                x.e.re, x.e.im);
    std::printf("  max|M X - I| %.3g\n", residual(m, x));
  }
  std::printf("condition number (inf-norm) %.6g\n", condition_estimate(m));
}
