#include "rfim/io.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rfim {

namespace {

using ordered_json = nlohmann::ordered_json;

// Numbers in emitted JSON: integer-valued doubles print as integers, and
// non-finite values print as strings so the output stays valid JSON.
ordered_json jnum(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == std::floor(v) && std::fabs(v) < 9.007199254740992e15)
    return static_cast<long long>(v);
  return v;
}

ordered_json checks_json(const std::vector<PlanCheck>& checks) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["lhs"] = jnum(c.lhs);
    j["rhs"] = jnum(c.rhs);
    j["gating"] = c.gating;
    arr.push_back(j);
  }
  return arr;
}

ordered_json upper_json(const UpperBoundPlan& p) {
  ordered_json j;
  j["regime"] = p.regime;
  j["alpha"] = jnum(p.alpha);
  j["theta"] = jnum(p.theta);
  j["beta"] = jnum(p.beta);
  j["j1"] = jnum(p.j1);
  j["B"] = jnum(p.big_b);
  j["g1"] = jnum(p.g1);
  j["delta"] = jnum(p.delta);
  j["M"] = jnum(p.m_blocks);
  j["N"] = jnum((p.two_n_plus_1 - 1.0) / 2.0);
  j["two_N_plus_1"] = jnum(p.two_n_plus_1);
  j["energy"] = jnum(p.energy);
  j["L_max"] = jnum(p.l_max);
  j["diamV"] = jnum(p.diam_v);
  j["gibbs_bound"] = jnum(p.gibbs_bound);
  j["prob_bound"] = jnum(p.prob_bound);
  ordered_json lg;
  lg["delta"] = jnum(p.log_delta);
  lg["M"] = jnum(p.log_m_blocks);
  lg["two_N_plus_1"] = jnum(p.log_two_n_plus_1);
  lg["L_max"] = jnum(p.log_l_max);
  lg["diamV"] = jnum(p.log_diam_v);
  lg["gibbs_bound"] = jnum(p.log_gibbs_bound);
  j["log"] = lg;
  j["checks"] = checks_json(p.checks);
  j["in_regime"] = p.in_regime;
  return j;
}

ordered_json lower_json(const LowerBoundPlan& p) {
  ordered_json j;
  j["regime"] = p.regime;
  j["alpha"] = jnum(p.alpha);
  j["theta"] = jnum(p.theta);
  j["beta"] = jnum(p.beta);
  j["D"] = jnum(p.d_factor);
  j["b_bar"] = jnum(p.bbar);
  j["g2"] = jnum(p.g2);
  j["L_min_real"] = jnum(p.l_min_real);
  j["L_min"] = jnum(p.l_min);
  j["V_min_real"] = jnum(p.v_min_real);
  j["V_min"] = jnum(p.v_min);
  j["measure_bound"] = jnum(p.measure_bound);
  j["prob_bound"] = jnum(p.prob_bound);
  ordered_json lg;
  lg["L_min"] = jnum(p.log_l_min);
  lg["V_min"] = jnum(p.log_v_min);
  lg["measure_bound"] = jnum(p.log_measure_bound);
  j["log"] = lg;
  j["checks"] = checks_json(p.checks);
  j["in_regime"] = p.in_regime;
  return j;
}

}  // namespace

std::string strprintf(const char* fmt, ...) {
  va_list ap;
  va_start(ap, fmt);
  va_list ap2;
  va_copy(ap2, ap);
  const int n = std::vsnprintf(nullptr, 0, fmt, ap);
  va_end(ap);
  if (n < 0) {
    va_end(ap2);
    throw std::runtime_error("strprintf: formatting failed");
  }
  std::string out(static_cast<size_t>(n) + 1, '\0');
  std::vsnprintf(out.data(), out.size(), fmt, ap2);
  va_end(ap2);
  out.resize(static_cast<size_t>(n));
  return out;
}

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string to_json(const UpperBoundPlan& p) { return upper_json(p).dump(2) + "\n"; }

std::string to_json(const LowerBoundPlan& p) { return lower_json(p).dump(2) + "\n"; }

std::string to_json(const TheoremSummary& s) {
  ordered_json j;
  j["alpha"] = jnum(s.alpha);
  j["theta"] = jnum(s.theta);
  j["beta"] = jnum(s.beta);
  j["j1"] = jnum(s.j1);
  j["B"] = jnum(s.big_b);
  j["D"] = jnum(s.d_factor);
  j["g"] = jnum(s.g_value);
  j["beta_floor"] = jnum(s.beta_floor);
  j["beta_in_regime"] = s.beta_in_regime;
  j["upper"] = upper_json(s.upper);
  j["lower"] = lower_json(s.lower);
  j["bracket_ok"] = s.bracket_ok;
  if (s.has_exponent_pair) {
    ordered_json pair;
    pair["c_small"] = jnum(s.c_small);
    pair["c_large"] = jnum(s.c_large);
    j["exponent_pair"] = pair;
  }
  j["failed_checks"] = s.failed_checks;
  j["in_regime"] = s.in_regime;
  return j.dump(2) + "\n";
}

std::string to_json(const BerryEsseenLower& r) {
  ordered_json j;
  j["theta"] = jnum(r.theta);
  j["delta"] = jnum(r.delta);
  j["phi_term"] = jnum(r.phi_term);
  j["be_term"] = jnum(r.be_term);
  j["lower"] = jnum(r.lower);
  j["minorant"] = jnum(r.minorant);
  j["log_minorant"] = jnum(r.log_minorant);
  j["log_phi_lower"] = jnum(r.log_phi_lower);
  j["positive"] = r.positive;
  return j.dump(2) + "\n";
}

std::string to_json(const EventEstimate& e, const EventSpec& ev) {
  ordered_json j;
  j["event"] = to_string(ev);
  j["mean"] = jnum(e.mean);
  j["std_error"] = jnum(e.std_error);
  j["effective_samples"] = jnum(e.effective_samples);
  j["samples"] = jnum(static_cast<double>(e.samples));
  return j.dump(2) + "\n";
}

std::string to_json(const PeierlsReport& r) {
  ordered_json j;
  ordered_json seq = ordered_json::array();
  for (double m : r.sequential_margins) seq.push_back(jnum(m));
  ordered_json con = ordered_json::array();
  for (double m : r.contour_margins) con.push_back(jnum(m));
  j["sequential_margins"] = seq;
  j["contour_margins"] = con;
  j["min_margin"] = jnum(r.min_margin);
  j["pass"] = r.pass;
  return j.dump(2) + "\n";
}

std::string to_json(const ContourReport& r) {
  ordered_json j;
  j["partition_ok"] = r.partition_ok;
  j["separation_ok"] = r.separation_ok;
  j["idempotent_ok"] = r.idempotent_ok;
  j["permutation_ok"] = r.permutation_ok;
  j["independence_ok"] = r.independence_ok;
  j["ok"] = r.ok();
  j["detail"] = r.detail;
  return j.dump(2) + "\n";
}

std::string to_json(const EntropySum& e, int m, double b, double alpha) {
  ordered_json j;
  j["m"] = m;
  j["b"] = jnum(b);
  j["alpha"] = jnum(alpha);
  j["sum"] = jnum(e.sum);
  j["bound"] = jnum(e.bound);
  j["within_bound"] = e.sum <= e.bound;
  j["family_count"] = e.family_count;
  j["shape_count"] = e.shape_count;
  return j.dump(2) + "\n";
}

std::string to_json(const TriangleFamily& f) {
  ordered_json j;
  j["lo"] = f.lo;
  j["hi"] = f.hi;
  ordered_json arr = ordered_json::array();
  for (const auto& t : f.triangles) {
    ordered_json tj;
    tj["left_x"] = t.left_x;
    tj["right_x"] = t.right_x;
    tj["supp_lo"] = t.supp_lo();
    tj["supp_hi"] = t.supp_hi();
    tj["mass"] = t.mass();
    arr.push_back(tj);
  }
  j["triangles"] = arr;
  return j.dump(2) + "\n";
}

std::string to_json(const RunDecomposition& d) {
  ordered_json j;
  ordered_json arr = ordered_json::array();
  for (size_t i = 0; i < d.blocks.size(); ++i) {
    const Run& r = d.blocks[i];
    ordered_json rj;
    rj["start"] = r.start;
    rj["end"] = r.end;
    rj["sign"] = r.sign;
    rj["length"] = r.length();
    rj["index"] = d.index_of(static_cast<int>(i));
    arr.push_back(rj);
  }
  j["blocks"] = arr;
  j["origin_block"] = d.origin_block;
  j["origin_sign"] = d.origin_sign();
  j["b_v"] = d.b_v;
  j["e_v"] = d.e_v;
  j["any_inside"] = d.any_inside;
  return j.dump(2) + "\n";
}

std::string csv_preamble(const std::vector<std::pair<std::string, std::string>>& meta,
                         const std::string& header_row) {
  std::string out;
  for (const auto& [key, value] : meta) out += "# " + key + ": " + value + "\n";
  out += header_row + "\n";
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace rfim
