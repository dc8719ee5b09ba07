#include "hydrolim/grid.hpp"

#include <string>

#include "hydrolim/errors.hpp"

namespace hydrolim {

Grid::Grid(int nh_, int nz_) : nh(nh_), nz(nz_) {
  if (nh < 8 || nh % 2 != 0) {
    throw ConfigError("grid.nh must be even and >= 8 (got " +
                      std::to_string(nh) + ")");
  }
  if (nz < 4) {
    throw ConfigError("grid.nz must be >= 4 (got " + std::to_string(nz) + ")");
  }
}

}  // namespace hydrolim
