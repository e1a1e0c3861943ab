// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oddr/kernels/kernels.hpp"

namespace oddr::kernels {
namespace {

std::vector<const KernelTable*> variants() {
  std::vector<const KernelTable*> out;
  if (const KernelTable* t = avx2_table()) out.push_back(t);
  if (const KernelTable* t = neon_table()) out.push_back(t);
  return out;
}

// Lengths straddle every vector width and remainder.
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 50, 1200};

struct Data {
  std::vector<double> a, b, mean, var;
  std::vector<float> f;
};

Data random_data(std::size_t n, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    d.a.push_back(u(gen));
    d.b.push_back(u(gen));
    d.mean.push_back(u(gen));
    d.var.push_back(0.01 + std::abs(u(gen)));
    d.f.push_back(static_cast<float>(u(gen)));
  }
  return d;
}

double tol(double magnitude, std::size_t n) {
  return 1e-14 * (1.0 + magnitude) * static_cast<double>(n + 1);
}

TEST(Kernels, ActiveTableIsComplete) {
  const KernelTable& t = active();
  EXPECT_FALSE(t.name.empty());
  EXPECT_NE(t.dot, nullptr);
  EXPECT_NE(t.axpy, nullptr);
  EXPECT_NE(t.rotate, nullptr);
  EXPECT_NE(t.scaled_sq_distance, nullptr);
  EXPECT_NE(t.accumulate_moments, nullptr);
}

TEST(Kernels, ScalarMatchesDefinitions) {
  const KernelTable& s = scalar_table();
  const std::vector<double> a = {1, 2, 3};
  const std::vector<double> b = {4, -5, 6};
  EXPECT_EQ(s.dot(a.data(), b.data(), 3), 12.0);
  std::vector<double> y = b;
  s.axpy(2.0, a.data(), y.data(), 3);
  EXPECT_EQ(y, (std::vector<double>{6, -1, 12}));
  std::vector<double> x = {1, 0};
  std::vector<double> z = {0, 1};
  s.rotate(x.data(), z.data(), 2, 0.0, 1.0);
  EXPECT_EQ(x, (std::vector<double>{0, -1}));
  EXPECT_EQ(z, (std::vector<double>{1, 0}));
  const std::vector<float> f = {3.f};
  const std::vector<double> mu = {1.0};
  const std::vector<double> var = {4.0};
  EXPECT_EQ(s.scaled_sq_distance(f.data(), mu.data(), var.data(), 1), 1.0);
}

TEST(Kernels, SimdVariantsMatchScalar) {
  const KernelTable& s = scalar_table();
  const auto simd = variants();
  if (simd.empty()) GTEST_SKIP() << "no SIMD variant on this machine";
  std::mt19937_64 gen(21);
  for (const KernelTable* v : simd) {
    SCOPED_TRACE(std::string(v->name));
    for (std::size_t n : kLengths) {
      SCOPED_TRACE(n);
      const Data d = random_data(n, gen);

      const double ds = s.dot(d.a.data(), d.b.data(), n);
      EXPECT_NEAR(v->dot(d.a.data(), d.b.data(), n), ds, tol(std::abs(ds), n));

      std::vector<double> ys = d.b, yv = d.b;
      s.axpy(0.37, d.a.data(), ys.data(), n);
      v->axpy(0.37, d.a.data(), yv.data(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(yv[i], ys[i], 1e-15);

      std::vector<double> xs = d.a, zs = d.b, xv = d.a, zv = d.b;
      s.rotate(xs.data(), zs.data(), n, 0.8, 0.6);
      v->rotate(xv.data(), zv.data(), n, 0.8, 0.6);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(xv[i], xs[i], 1e-15);
        EXPECT_NEAR(zv[i], zs[i], 1e-15);
      }

      const double qs =
          s.scaled_sq_distance(d.f.data(), d.mean.data(), d.var.data(), n);
      EXPECT_NEAR(
          v->scaled_sq_distance(d.f.data(), d.mean.data(), d.var.data(), n),
          qs, tol(qs, n));

      std::vector<double> sum_s(n, 0.5), sq_s(n, 0.25), sum_v(n, 0.5),
          sq_v(n, 0.25);
      s.accumulate_moments(d.f.data(), sum_s.data(), sq_s.data(), n);
      v->accumulate_moments(d.f.data(), sum_v.data(), sq_v.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(sum_v[i], sum_s[i], 1e-15);
        EXPECT_NEAR(sq_v[i], sq_s[i], 1e-15);
      }
    }
  }
}

}  // namespace
}  // namespace oddr::kernels
