#include "scarlab/geometry.hpp"

#include <stdexcept>

#include "fmt/format.h"

namespace scarlab {

LadderGeometry::LadderGeometry(int L_, int k_) : L(L_), k(k_) {
  if (L < 2 || k < 2)
    throw std::invalid_argument("LadderGeometry requires L >= 2 and k >= 2");
  n_links = 2 * k * L;
  if (n_links > 64)
    throw std::invalid_argument("LadderGeometry limited to 64 links");
  n_sites = k * L;
  n_plaquettes = k * L;
}

std::string LadderGeometry::link_name(int id) const {
  return fmt::format("{}({},{})", is_horizontal(id) ? 'h' : 'v', link_col(id),
                     link_row(id));
}

std::vector<int> LadderGeometry::plaquette_links(int c, int r) const {
  return {h_link(c, r), h_link(c, r + 1), v_link(c, r), v_link(c + 1, r)};
}

std::vector<int> LadderGeometry::site_links(int c, int r) const {
  return {h_link(c - 1, r), h_link(c, r), v_link(c, r), v_link(c, r - 1)};
}

uint64_t LadderGeometry::plaquette_mask(int c, int r) const {
  uint64_t m = 0;
  for (int id : plaquette_links(c, r)) m ^= uint64_t(1) << id;
  return m;
}

uint64_t LadderGeometry::site_mask(int c, int r) const {
  uint64_t m = 0;
  for (int id : site_links(c, r)) m ^= uint64_t(1) << id;
  return m;
}

uint64_t LadderGeometry::x_ribbon_mask(int r0) const {
  uint64_t m = 0;
  for (int c = 0; c < L; ++c) m |= uint64_t(1) << v_link(c, r0);
  return m;
}

uint64_t LadderGeometry::y_ribbon_mask(int c0) const {
  uint64_t m = 0;
  for (int r = 0; r < k; ++r) m |= uint64_t(1) << h_link(c0, r);
  return m;
}

}  // namespace scarlab
