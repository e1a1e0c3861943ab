// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "oddr/error.hpp"
#include "oddr/fragmentation.hpp"

namespace oddr {
namespace {

Image random_image(int h, int w, int c, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<float> u(0.f, 1.f);
  Image img(h, w, c);
  for (float& v : img.data()) v = u(gen);
  return img;
}

TEST(Fragmentation, OperatingPointGrid) {
  const FragmentGrid g = fragment_image(Image(224, 224, 3), 20, 10);
  EXPECT_EQ(g.grid_rows(), 21);
  EXPECT_EQ(g.grid_cols(), 21);
  EXPECT_EQ(g.size(), 441u);
  EXPECT_EQ(g.dim(), 1200u);
}

TEST(Fragmentation, WholeImageWindow) {
  const Image img = random_image(7, 7, 3, 1);
  for (int stride : {1, 3, 7}) {
    const FragmentGrid g = fragment_image(img, 7, stride);
    ASSERT_EQ(g.size(), 1u);
    const auto v = g.vector(0);
    ASSERT_EQ(v.size(), img.size());
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i], img.data()[i]);
  }
}

TEST(Fragmentation, Errors) {
  const Image img(10, 12, 1);
  auto code = [&](int k, int s) {
    try {
      fragment_image(img, k, s);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  EXPECT_EQ(code(11, 1), ErrorCode::kKernelTooLarge);
  EXPECT_EQ(code(0, 1), ErrorCode::kOutOfRange);
  EXPECT_EQ(code(4, 0), ErrorCode::kOutOfRange);
  EXPECT_EQ(code(4, 5), ErrorCode::kOutOfRange);
  const FragmentGrid g = fragment_image(img, 4, 2);
  EXPECT_THROW(g.vector(g.size()), Error);
}

TEST(Fragmentation, WindowArithmetic) {
  const FragmentGrid g = fragment_image(Image(224, 224, 1), 20, 10);
  EXPECT_EQ(fragment_window(g, 0), (Window{0, 0, 20}));
  EXPECT_EQ(fragment_window(g, 22), (Window{10, 10, 20}));
  EXPECT_EQ(fragment_window(g, g.size() - 1), (Window{200, 200, 20}));
  const Fragment f = g.fragment(22);
  EXPECT_EQ(f.grid_row, 1);
  EXPECT_EQ(f.grid_col, 1);
}

TEST(Fragmentation, Overlap) {
  const FragmentGrid g = fragment_image(Image(224, 224, 1), 20, 10);
  EXPECT_TRUE(windows_overlap(g, 5, 5));
  EXPECT_TRUE(windows_overlap(g, 5, 6));
  EXPECT_FALSE(windows_overlap(g, 5, 7));
  EXPECT_TRUE(windows_overlap(g, 5, 5 + 21 + 1));
  EXPECT_FALSE(windows_overlap(g, 5, 5 + 42));
}

// Rectangle-intersection oracle over random grids.
TEST(Fragmentation, OverlapMatchesRectangleIntersection) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + static_cast<int>(gen() % 8);
    const int s = 1 + static_cast<int>(gen() % k);
    const int h = k + static_cast<int>(gen() % 20);
    const int w = k + static_cast<int>(gen() % 20);
    const FragmentGrid g = fragment_image(Image(h, w, 1), k, s);
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        const Window a = fragment_window(g, i);
        const Window b = fragment_window(g, j);
        const bool expect = a.row0 < b.row0 + k && b.row0 < a.row0 + k &&
                            a.col0 < b.col0 + k && b.col0 < a.col0 + k;
        ASSERT_EQ(windows_overlap(g, i, j), expect);
        ASSERT_EQ(windows_overlap(g, i, j), windows_overlap(g, j, i));
      }
    }
  }
}

TEST(Fragmentation, ClosedFormsAndReconstruction) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 60; ++trial) {
    const int h = 1 + static_cast<int>(gen() % 40);
    const int w = 1 + static_cast<int>(gen() % 40);
    const int c = (gen() % 2) ? 3 : 1;
    const int k = 1 + static_cast<int>(gen() % std::min(h, w));
    const int s = 1 + static_cast<int>(gen() % k);
    const Image img = random_image(h, w, c, gen());
    const FragmentGrid g = fragment_image(img, k, s);
    ASSERT_EQ(g.grid_rows(), (h - k) / s + 1);
    ASSERT_EQ(g.grid_cols(), (w - k) / s + 1);
    ASSERT_EQ(window_count(h, k, s), g.grid_rows());
    ASSERT_EQ(g.size(), static_cast<std::size_t>(g.grid_rows()) * g.grid_cols());

    // Each covered pixel appears at the matching offset of every covering window.
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Window win = fragment_window(g, i);
      const auto v = g.vector(i);
      for (int r = 0; r < k; ++r) {
        for (int col = 0; col < k; ++col) {
          for (int ch = 0; ch < c; ++ch) {
            ASSERT_EQ(v[(static_cast<std::size_t>(r) * k + col) * c + ch],
                      img.at(win.row0 + r, win.col0 + col, ch));
          }
        }
      }
    }
    const FragmentGrid again = fragment_image(img, k, s);
    ASSERT_TRUE(std::equal(g.vectors().begin(), g.vectors().end(),
                           again.vectors().begin()));
  }
}

}  // namespace
}  // namespace oddr
