#pragma once

#include "zladder/ladder.hpp"

namespace zlt {

// One checkpoint table per process, built lazily on first use. 12800
// covers base points up to 2*pi*1592 plus the inverse-bracket headroom of
// a depth-2 chain, which is the largest configuration the unit suite runs.
inline const zladder::moment::MomentCheckpointTable& shared_table() {
  static const auto table = zladder::moment::build_checkpoints(12800.0, 1e-10);
  return table;
}

inline zladder::ladder::LadderModel quad_model() {
  zladder::ladder::LadderModel m;
  m.table = &shared_table();
  return m;
}

inline zladder::ladder::LadderModel asym_model() {
  zladder::ladder::LadderModel m;
  m.backend = zladder::moment::Backend::asymptotic;
  return m;
}

}  // namespace zlt
