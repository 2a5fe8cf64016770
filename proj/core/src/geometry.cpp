#include "nepcim/geometry.hpp"

#include <cmath>

namespace nepcim {

std::vector<Disk> cover_rectangle(const Rectangle& domain, int grid_x,
                                  int grid_y, Complex offset) {
  if (grid_x < 1 || grid_y < 1) {
    throw Error("cover_rectangle: grid counts must be >= 1");
  }
  if (!(domain.x_min < domain.x_max) || !(domain.y_min < domain.y_max)) {
    throw Error("cover_rectangle: degenerate rectangle");
  }
  double hx = domain.width() / grid_x;
  double hy = domain.height() / grid_y;
  double radius = 0.5 * std::hypot(hx, hy);

  std::vector<Disk> disks;
  disks.reserve(static_cast<std::size_t>(grid_x) * grid_y);
  for (int i = 0; i < grid_x; ++i) {
    for (int j = 0; j < grid_y; ++j) {
      Complex center(domain.x_min + i * hx + 0.5 * hx,
                     domain.y_min + j * hy + 0.5 * hy);
      disks.push_back(Disk{center + offset, radius});
    }
  }
  return disks;
}

std::array<Disk, 4> subdivide_disk(const Disk& d) {
  double rc = d.radius / 2.0;
  double o = rc / std::sqrt(2.0);
  return {Disk{d.center + Complex(o, o), rc},
          Disk{d.center + Complex(o, -o), rc},
          Disk{d.center + Complex(-o, o), rc},
          Disk{d.center + Complex(-o, -o), rc}};
}

bool inscribed_square_contains(const Disk& d, Complex z) {
  double half = d.square_half_side();
  return std::abs(z.real() - d.center.real()) < half &&
         std::abs(z.imag() - d.center.imag()) < half;
}

}  // namespace nepcim
