#include "ndf/graycode.hpp"

#include <cmath>
#include <stdexcept>

namespace ndf {

uint32_t gray_encode(uint32_t n) { return n ^ (n >> 1); }

uint32_t gray_decode(uint32_t g) {
  uint32_t n = 0;
  for (; g; g >>= 1) n ^= g;
  return n;
}

PatternLayout make_layout(int display_width, int display_height) {
  if (display_width < 2 || display_height < 2)
    throw std::domain_error("gen_patterns: dimensions must be >= 2");
  PatternLayout layout;
  layout.display_width = display_width;
  layout.display_height = display_height;
  layout.bits_x = 1;
  while ((1 << layout.bits_x) < display_width) ++layout.bits_x;
  layout.bits_y = 1;
  while ((1 << layout.bits_y) < display_height) ++layout.bits_y;
  return layout;
}

Eigen::ArrayXXd pattern_image(const PatternLayout& layout, int index) {
  const int w = layout.display_width, h = layout.display_height;
  if (index < 0 || index >= layout.count())
    throw std::domain_error("pattern_image: index out of range");
  if (index == 0) return Eigen::ArrayXXd::Ones(h, w);
  if (index == 1) return Eigen::ArrayXXd::Zero(h, w);

  const int slot = index - 2;
  const bool complement = slot % 2;
  const int bit_slot = slot / 2;
  Eigen::ArrayXXd img(h, w);
  if (bit_slot < layout.bits_x) {
    const int bit = layout.bits_x - 1 - bit_slot;  // MSB first
    for (int x = 0; x < w; ++x) {
      double value = (gray_encode(uint32_t(x)) >> bit) & 1u;
      img.col(x).setConstant(complement ? 1.0 - value : value);
    }
  } else {
    const int bit = layout.bits_y - 1 - (bit_slot - layout.bits_x);
    for (int y = 0; y < h; ++y) {
      double value = (gray_encode(uint32_t(y)) >> bit) & 1u;
      img.row(y).setConstant(complement ? 1.0 - value : value);
    }
  }
  return img;
}

PatternStack gen_patterns(int display_width, int display_height) {
  PatternStack stack;
  stack.layout = make_layout(display_width, display_height);
  stack.images.reserve(stack.layout.count());
  for (int i = 0; i < stack.layout.count(); ++i)
    stack.images.push_back(pattern_image(stack.layout, i));
  return stack;
}

CorrespondenceLut decode(const PatternLayout& layout,
                         const std::vector<Eigen::ArrayXXd>& captures,
                         double contrast_threshold) {
  if (int(captures.size()) != layout.count())
    throw std::domain_error("decode: capture stack layout mismatch");
  const int h = int(captures[0].rows()), w = int(captures[0].cols());
  for (const auto& c : captures)
    if (int(c.rows()) != h || int(c.cols()) != w)
      throw std::domain_error("decode: capture stack layout mismatch");

  CorrespondenceLut lut;
  const auto& white = captures[0];
  const auto& black = captures[1];
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (white(y, x) - black(y, x) < contrast_threshold) continue;
      uint32_t gx = 0, gy = 0;
      bool ok = true;
      int idx = 2;
      for (int bit = 0; bit < layout.bits_x && ok; ++bit, idx += 2) {
        const double diff = captures[idx](y, x) - captures[idx + 1](y, x);
        if (std::abs(diff) < contrast_threshold) ok = false;
        gx = (gx << 1) | (diff > 0 ? 1u : 0u);
      }
      for (int bit = 0; bit < layout.bits_y && ok; ++bit, idx += 2) {
        const double diff = captures[idx](y, x) - captures[idx + 1](y, x);
        if (std::abs(diff) < contrast_threshold) ok = false;
        gy = (gy << 1) | (diff > 0 ? 1u : 0u);
      }
      if (!ok) continue;
      const uint32_t col = gray_decode(gx), row = gray_decode(gy);
      if (col >= uint32_t(layout.display_width) ||
          row >= uint32_t(layout.display_height))
        continue;
      CorrespondenceLut::Pair pair;
      pair.u_e = Eigen::Vector2d(x, y);
      pair.u_d = Eigen::Vector2d(col + 0.5, row + 0.5);
      lut.pairs.push_back(pair);
    }
  return lut;
}

}  // namespace ndf
