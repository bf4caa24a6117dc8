#pragma once
#include <cstdint>
#include <vector>

#include "rfim/core.hpp"
#include "rfim/events.hpp"

namespace rfim {

/** Largest window enumerated exactly (2^n configurations). */
constexpr int kEnumerationSiteCap = 22;
/** Largest window for exact sampling (weights are materialised). */
constexpr int kSamplingSiteCap = 20;

/** log of the partition function sum_sigma exp(-beta H(sigma)) on the window
 *  shape (lo/hi/boundary of `shape`; its spin content is ignored). */
double log_partition(const SpinWindow& shape, const DisorderField& h, const ModelParams& p,
                     const CouplingTable& t);

/** Exact Gibbs probability of the event. Complementary events sum to 1 up to
 *  a few ulp: the event and total weights accumulate in one pass with a shared
 *  scaling maximum. */
double event_probability(const SpinWindow& shape, const DisorderField& h,
                         const ModelParams& p, const CouplingTable& t, const EventSpec& e);

/** Independent exact samples by inversion of the enumerated distribution. */
std::vector<SpinWindow> exact_sample(const SpinWindow& shape, const DisorderField& h,
                                     const ModelParams& p, const CouplingTable& t,
                                     long long count, std::uint64_t seed);

}  // namespace rfim
