#pragma once
#include <string>
#include <vector>

#include "rfim/bounds.hpp"
#include "rfim/chain.hpp"
#include "rfim/events.hpp"
#include "rfim/geometry.hpp"

namespace rfim {

inline constexpr const char* kToolVersion = "1.0.0";

/** printf-style formatting into a std::string. */
std::string strprintf(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

/** Canonical shortest-roundtrip decimal for a double ("%.17g", then trimmed).
 *  Non-finite values render as "inf", "-inf", "nan". */
std::string fmt_double(double x);

// JSON renderers (pretty-printed, 2-space indent, key order fixed).
std::string to_json(const UpperBoundPlan& p);
std::string to_json(const LowerBoundPlan& p);
std::string to_json(const TheoremSummary& s);
std::string to_json(const BerryEsseenLower& r);
std::string to_json(const EventEstimate& e, const EventSpec& ev);
std::string to_json(const PeierlsReport& r);
std::string to_json(const ContourReport& r);
std::string to_json(const EntropySum& e, int m, double b, double alpha);
std::string to_json(const TriangleFamily& f);
std::string to_json(const RunDecomposition& d);

/** Deterministic CSV preamble: '# key: value' comment lines (tool version,
 *  free-form config text, seeds) followed by the header row.  No timestamps,
 *  no environment-dependent content. */
std::string csv_preamble(const std::vector<std::pair<std::string, std::string>>& meta,
                         const std::string& header_row);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace rfim
