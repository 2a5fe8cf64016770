#pragma once

#include <array>
#include <vector>

#include "nepcim/types.hpp"

namespace nepcim {

// Covers a rectangle with grid_x * grid_y equal cells and returns the disks
// circumscribing them, in column-major cell order (x index outer, y inner).
// An optional global offset translates every center; it is meant for nudging
// grid lines off the coordinate axes.
std::vector<Disk> cover_rectangle(const Rectangle& domain, int grid_x,
                                  int grid_y, Complex offset = Complex(0, 0));

inline std::vector<Disk> cover_rectangle(const Rectangle& domain, int grid,
                                         Complex offset = Complex(0, 0)) {
  return cover_rectangle(domain, grid, grid, offset);
}

// Four disks of half the radius whose inscribed squares tile the parent's
// inscribed square. Order: (+,+), (+,-), (-,+), (-,-) quadrants.
std::array<Disk, 4> subdivide_disk(const Disk& d);

// Strict membership in the square the disk circumscribes.
bool inscribed_square_contains(const Disk& d, Complex z);

}  // namespace nepcim
