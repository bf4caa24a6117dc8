#include "rfim/events.hpp"

#include <cstdio>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "rfim/geometry.hpp"

namespace rfim {

namespace {

void require_site(const SpinWindow& w, int i) {
  if (!w.contains(i)) throw std::domain_error("event site outside the window");
}

void require_interval(const SpinWindow& w, int a, int b) {
  if (a > b) throw std::domain_error("event interval is empty");
  if (a < w.lo || b > w.hi) throw std::domain_error("event interval outside the window");
}

void require_sign(int s) {
  if (s != 1 && s != -1) throw std::domain_error("event sign must be +1 or -1");
}

void require_length(int l) {
  if (l < 1) throw std::domain_error("event length must be >= 1");
}

bool flanks_flipped(const SpinWindow& w, const Run& r) {
  return w.extended(r.start - 1) == -r.sign && w.extended(r.end + 1) == -r.sign;
}

}  // namespace

bool evaluate_event(const SpinWindow& w, const EventSpec& e) {
  switch (e.kind) {
    case EventKind::spin_at:
      require_site(w, e.a);
      require_sign(e.sign);
      return w.at(e.a) == e.sign;

    case EventKind::run_equals: {
      require_interval(w, e.a, e.b);
      require_sign(e.sign);
      for (int i = e.a; i <= e.b; ++i)
        if (w.at(i) != e.sign) return false;
      return true;
    }

    case EventKind::run_any: {
      require_interval(w, e.a, e.b);
      for (int i = e.a + 1; i <= e.b; ++i)
        if (w.at(i) != w.at(e.a)) return false;
      return true;
    }

    case EventKind::long_run: {
      require_interval(w, e.a, e.b);
      require_length(e.length);
      for (const Run& r : maximal_blocks(w))
        if (r.start >= e.a && r.end <= e.b && r.length() >= e.length) return true;
      return false;
    }

    case EventKind::well: {
      require_interval(w, e.a, e.b);
      require_sign(e.sign);
      for (int i = e.a; i <= e.b; ++i)
        if (w.at(i) != e.sign) return false;
      return w.extended(e.a - 1) == -e.sign && w.extended(e.b + 1) == -e.sign;
    }

    case EventKind::small_well_at: {
      require_site(w, e.a);
      require_sign(e.sign);
      require_length(e.length);
      for (const Run& r : maximal_blocks(w)) {
        if (r.start <= e.a && e.a <= r.end)
          return r.sign == e.sign && r.length() <= e.length && flanks_flipped(w, r);
      }
      return false;  // unreachable: blocks tile the window
    }

    case EventKind::any_small_well: {
      require_interval(w, e.a, e.b);
      require_length(e.length);
      for (const Run& r : maximal_blocks(w)) {
        bool meets = r.end >= e.a && r.start <= e.b;
        if (meets && r.length() <= e.length && flanks_flipped(w, r)) return true;
      }
      return false;
    }
  }
  throw std::logic_error("unknown event kind");
}

namespace {

std::string sign_str(int s) { return s > 0 ? "+" : "-"; }

int parse_sign(const std::string& s) {
  if (s == "+" || s == "+1") return +1;
  if (s == "-" || s == "-1") return -1;
  throw std::invalid_argument("event sign must be + or -");
}

int parse_int(const std::string& s) {
  size_t pos = 0;
  int v = std::stoi(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("malformed integer in event: " + s);
  return v;
}

/** Split "a..b" into two integers. */
std::pair<int, int> parse_interval(const std::string& s) {
  size_t dots = s.find("..");
  if (dots == std::string::npos)
    throw std::invalid_argument("event interval must look like a..b");
  return {parse_int(s.substr(0, dots)), parse_int(s.substr(dots + 2))};
}

std::vector<std::string> split_fields(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t colon = s.find(':', start);
    if (colon == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, colon - start));
    start = colon + 1;
  }
}

}  // namespace

std::string to_string(const EventSpec& e) {
  char buf[128];
  switch (e.kind) {
    case EventKind::spin_at:
      std::snprintf(buf, sizeof buf, "spin_at:%d:%s", e.a, sign_str(e.sign).c_str());
      break;
    case EventKind::run_equals:
      std::snprintf(buf, sizeof buf, "run_equals:%d..%d:%s", e.a, e.b,
                    sign_str(e.sign).c_str());
      break;
    case EventKind::run_any:
      std::snprintf(buf, sizeof buf, "run_any:%d..%d", e.a, e.b);
      break;
    case EventKind::long_run:
      std::snprintf(buf, sizeof buf, "long_run:%d..%d:%d", e.a, e.b, e.length);
      break;
    case EventKind::well:
      std::snprintf(buf, sizeof buf, "well:%d..%d:%s", e.a, e.b, sign_str(e.sign).c_str());
      break;
    case EventKind::small_well_at:
      std::snprintf(buf, sizeof buf, "small_well_at:%d:%d:%s", e.a, e.length,
                    sign_str(e.sign).c_str());
      break;
    case EventKind::any_small_well:
      std::snprintf(buf, sizeof buf, "any_small_well:%d..%d:%d", e.a, e.b, e.length);
      break;
  }
  return buf;
}

EventSpec parse_event(const std::string& s) {
  auto fields = split_fields(s);
  auto need = [&](size_t n) {
    if (fields.size() != n)
      throw std::invalid_argument("wrong number of fields in event: " + s);
  };
  EventSpec e;
  const std::string& kind = fields.at(0);
  if (kind == "spin_at") {
    need(3);
    e.kind = EventKind::spin_at;
    e.a = parse_int(fields[1]);
    e.sign = parse_sign(fields[2]);
  } else if (kind == "run_equals") {
    need(3);
    e.kind = EventKind::run_equals;
    std::tie(e.a, e.b) = parse_interval(fields[1]);
    e.sign = parse_sign(fields[2]);
  } else if (kind == "run_any") {
    need(2);
    e.kind = EventKind::run_any;
    std::tie(e.a, e.b) = parse_interval(fields[1]);
  } else if (kind == "long_run") {
    need(3);
    e.kind = EventKind::long_run;
    std::tie(e.a, e.b) = parse_interval(fields[1]);
    e.length = parse_int(fields[2]);
  } else if (kind == "well") {
    need(3);
    e.kind = EventKind::well;
    std::tie(e.a, e.b) = parse_interval(fields[1]);
    e.sign = parse_sign(fields[2]);
  } else if (kind == "small_well_at") {
    need(4);
    e.kind = EventKind::small_well_at;
    e.a = parse_int(fields[1]);
    e.length = parse_int(fields[2]);
    e.sign = parse_sign(fields[3]);
  } else if (kind == "any_small_well") {
    need(3);
    e.kind = EventKind::any_small_well;
    std::tie(e.a, e.b) = parse_interval(fields[1]);
    e.length = parse_int(fields[2]);
  } else {
    throw std::invalid_argument("unknown event kind: " + kind);
  }
  return e;
}

}  // namespace rfim
