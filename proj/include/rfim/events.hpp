#pragma once
#include <string>

#include "rfim/core.hpp"

namespace rfim {

enum class EventKind {
  spin_at,         // spin at site a equals sign
  run_equals,      // all spins on [a, b] equal sign
  run_any,         // spins constant on [a, b]
  long_run,        // some maximal run inside [a, b] has length >= length
  well,            // spins equal sign on [a, b], both neighbours (or boundary) flipped
  small_well_at,   // maximal run through a: sign, length <= length, flanks flipped
  any_small_well,  // some maximal run of length <= length, flanks flipped, meets [a, b]
};

struct EventSpec {
  EventKind kind = EventKind::spin_at;
  int a = 0;       // site, or interval lower end
  int b = 0;       // interval upper end (unused for site kinds)
  int sign = +1;   // tau for signed kinds
  int length = 1;  // L for length-constrained kinds
  bool operator==(const EventSpec& o) const {
    return kind == o.kind && a == o.a && b == o.b && sign == o.sign && length == o.length;
  }
};

/** Whether the event holds on the configuration. Throws std::domain_error when
 *  a referenced site or interval is not inside the window. */
bool evaluate_event(const SpinWindow& w, const EventSpec& e);

/** Text form, e.g. "spin_at:0:+", "run_equals:-2..3:+", "run_any:-2..3",
 *  "long_run:-5..5:4", "well:1..3:-", "small_well_at:0:3:-",
 *  "any_small_well:-5..5:2". */
std::string to_string(const EventSpec& e);

/** Parse the text form; throws std::invalid_argument on malformed input. */
EventSpec parse_event(const std::string& s);

}  // namespace rfim
