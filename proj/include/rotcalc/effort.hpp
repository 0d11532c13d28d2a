#pragma once

#include <cstdlib>
#include <string>

namespace rotcalc {

// Budgets for the certification machinery. `max_iterates` caps the power of
// a map that may be materialized piece-by-piece, `max_pieces` caps the piece
// count of any materialized map, and `max_stream_steps` caps the number of
// single-point bounded-orbit steps used by the streaming certifier (which
// reaches far deeper iterates than materialization can).
//
// ROTCALC_MAX_EFFORT overrides the iterate cap; the stream budget scales
// with it (512 streamed steps per allowed iterate).
struct EffortLimits {
  long max_iterates = 1L << 15;
  long max_pieces = 1'000'000;
  long max_stream_steps = 1L << 24;

  static EffortLimits defaults() {
    EffortLimits lim;
    if (const char* env = std::getenv("ROTCALC_MAX_EFFORT")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v > 0) {
        lim.max_iterates = v;
        lim.max_stream_steps = v > (1L << 40) ? v : 512 * v;
      }
    }
    return lim;
  }
};

}  // namespace rotcalc
