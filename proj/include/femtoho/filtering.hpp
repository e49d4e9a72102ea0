#pragma once

#include <optional>

namespace femtoho {

/// First-order exponential window with unit DC gain:
///   filtered[k] = (1 - beta) * sample[k] + beta * filtered[k-1],
/// seeded with the first sample. Equivalent to the windowed sum
///   sum_j (1 - beta) beta^j sample[k-j] plus the decayed initial value.
struct FilterState {
  double beta = 0.9;
  std::optional<double> last;
};

/// Combination factor for the compensated decision parameter, in [0, 1].
struct CombineParams {
  double alpha = 0.0;
};

namespace filtering {

struct Update {
  FilterState state;
  double filtered;
};

Update filter_update(const FilterState& state, double sample_dbm);

/// In-place variant for hot loops.
inline double filter_step(FilterState& state, double sample_dbm) {
  const double out =
      state.last ? *state.last + (1.0 - state.beta) * (sample_dbm - *state.last) : sample_dbm;
  state.last = out;
  return out;
}

/// s_pro = filtered_femto + alpha * filtered_macro. Operates on dBm values
/// directly; only its ordering against thresholds is meaningful.
inline double combined_parameter(double filtered_femto_dbm, double filtered_macro_dbm,
                                 const CombineParams& params) {
  return filtered_femto_dbm + params.alpha * filtered_macro_dbm;
}

}  // namespace filtering
}  // namespace femtoho
