#include "femtoho/filtering.hpp"

namespace femtoho::filtering {

Update filter_update(const FilterState& state, double sample_dbm) {
  Update u{state, 0.0};
  u.filtered = filter_step(u.state, sample_dbm);
  return u;
}

}  // namespace femtoho::filtering
