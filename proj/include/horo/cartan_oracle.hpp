#pragma once

#include "horo/marked_group.hpp"

namespace horo {

/// Independent geometric evaluation of a word over {x, y, x~, y~}: trace the
/// lattice path, close it with the chord back to the origin, and integrate the
/// winding-number function exactly over grid cells split by the chord line.
/// Shares no code with the concatenation formulas in multiply_coords.
CartanParams cartan_path_oracle(const Word& w);

}  // namespace horo
