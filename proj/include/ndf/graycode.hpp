#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ndf/geometry.hpp"

namespace ndf {

// Reflected-binary gray code layout for one display resolution.
// Frame order: all-white, all-black, then per axis (columns first) the bit
// patterns MSB first, each immediately followed by its complement.
struct PatternLayout {
  int display_width = 0, display_height = 0;
  int bits_x = 0, bits_y = 0;

  int count() const { return 2 + 2 * (bits_x + bits_y); }
};

struct PatternStack {
  PatternLayout layout;
  std::vector<Eigen::ArrayXXd> images;  // height x width, values 0/1
};

struct CorrespondenceLut {
  struct Pair {
    Eigen::Vector2d u_e;
    Eigen::Vector2d u_d;
  };
  std::vector<Pair> pairs;
  EyePose pose;
};

uint32_t gray_encode(uint32_t n);
uint32_t gray_decode(uint32_t g);

PatternLayout make_layout(int display_width, int display_height);

// Single frame of the stack; full-HD stacks are streamed through this
// instead of being materialized all at once.
Eigen::ArrayXXd pattern_image(const PatternLayout& layout, int index);

PatternStack gen_patterns(int display_width, int display_height);

// Per-pixel differential decode of simulated captures (same order as the
// stack). Pixels with any bit contrast below `contrast_threshold` or with a
// low white-black reference difference are dropped. Decoded indices map to
// display pixel centers.
CorrespondenceLut decode(const PatternLayout& layout,
                         const std::vector<Eigen::ArrayXXd>& captures,
                         double contrast_threshold = 5.0 / 255.0);

}  // namespace ndf
