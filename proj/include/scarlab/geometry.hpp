#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace scarlab {

// Periodic L x k ladder of plaquettes (k rows, L columns, both directions
// periodic).  Degrees of freedom live on links.  Link layout, column-major:
//   h(c,r) = horizontal link leaving site (c,r) in +x direction, id = 2k*c + r
//   v(c,r) = vertical   link leaving site (c,r) in +y direction, id = 2k*c + k + r
// Bit value 1 in a basis-state word means sigma^z = -1 on that link.
//
// Plaquettes are labelled row-major starting at 1: plaquette p = r*L + c + 1
// has corners (c,r),(c+1,r),(c,r+1),(c+1,r+1) and boundary links
// { h(c,r), h(c,r+1), v(c,r), v(c+1,r) }.
struct LadderGeometry {
  int L = 0;
  int k = 0;
  int n_links = 0;
  int n_sites = 0;
  int n_plaquettes = 0;

  LadderGeometry(int L_, int k_);

  int h_link(int c, int r) const { return 2 * k * mc(c) + mr(r); }
  int v_link(int c, int r) const { return 2 * k * mc(c) + k + mr(r); }

  bool is_horizontal(int id) const { return id % (2 * k) < k; }
  int link_col(int id) const { return id / (2 * k); }
  int link_row(int id) const { return id % (2 * k) % k; }
  std::string link_name(int id) const;

  // Links on the boundary of plaquette (c,r); k=2 ladders are multigraphs, so
  // the two horizontal entries of a column coincide pairwise across rows.
  std::vector<int> plaquette_links(int c, int r) const;
  int plaquette_index(int c, int r) const { return mr2(r) * L + mc(c); }
  std::pair<int, int> plaquette_coords(int p) const { return {p % L, p / L}; }

  // Links incident on site (c,r) (the support of the Gauss operator there).
  std::vector<int> site_links(int c, int r) const;

  uint64_t plaquette_mask(int c, int r) const;  // sigma^x support
  uint64_t site_mask(int c, int r) const;       // sigma^z support

  // 'Ribbon' sigma^z strings wrapping the periodic directions: the x ribbon
  // crosses every column once (vertical links of row `r0`), the y ribbon
  // crosses every row of a single column `c0` (horizontal links).
  uint64_t x_ribbon_mask(int r0 = 0) const;
  uint64_t y_ribbon_mask(int c0 = 0) const;

 private:
  int mc(int c) const { return ((c % L) + L) % L; }
  int mr(int r) const { return ((r % k) + k) % k; }
  int mr2(int r) const { return ((r % k) + k) % k; }
};

}  // namespace scarlab
