#include "rfim/chain.hpp"

#include <cmath>
#include <stdexcept>

namespace rfim {

std::string to_string(UpdateRule r) {
  return r == UpdateRule::metropolis ? "metropolis" : "heat_bath";
}

UpdateRule update_rule_from_string(const std::string& s) {
  if (s == "metropolis") return UpdateRule::metropolis;
  if (s == "heat_bath") return UpdateRule::heat_bath;
  throw std::invalid_argument("unknown update rule: " + s);
}

std::string to_string(InitialState s) {
  return s == InitialState::all_boundary ? "all_boundary" : "random";
}

InitialState initial_state_from_string(const std::string& s) {
  if (s == "all_boundary") return InitialState::all_boundary;
  if (s == "random") return InitialState::random;
  throw std::invalid_argument("unknown initial state: " + s);
}

Chain::Chain(const SpinWindow& shape, const DisorderField& h, const ModelParams& p,
             const CouplingTable& t, const ChainConfig& cfg)
    : w_(shape), p_(p), t_(&t), cfg_(cfg), rng_(cfg.seed) {
  validate(p_);
  if (t.alpha() != p.alpha || t.j1() != p.j1)
    throw std::invalid_argument("coupling table does not match model parameters");
  if (p_.theta != 0.0 && !h.covers(shape.lo, shape.hi))
    throw std::invalid_argument("disorder field does not cover window");
  int n = w_.size();
  if (cfg_.initial == InitialState::all_boundary) {
    std::fill(w_.spins.begin(), w_.spins.end(), w_.boundary);
  } else {
    for (auto& s : w_.spins) s = static_cast<signed char>(rng_.pm1());
  }
  j_by_dist_.assign(static_cast<size_t>(n), 0.0);
  for (int d = 1; d < n; ++d) j_by_dist_[static_cast<size_t>(d)] = t.coupling(d);
  static_field_.assign(static_cast<size_t>(n), 0.0);
  for (int i = w_.lo; i <= w_.hi; ++i) {
    double v = double(w_.boundary) * (t.tail(i - w_.lo + 1) + t.tail(w_.hi - i + 1));
    if (p_.theta != 0.0) v += p_.theta * h.at(i);
    static_field_[static_cast<size_t>(i - w_.lo)] = v;
  }
  rebuild_pair_fields();
  e0_ = bulk_energy(w_, t) + boundary_energy(w_, t) + field_energy(w_, h, p_.theta);
}

void Chain::rebuild_pair_fields() {
  int n = w_.size();
  pair_field_.assign(static_cast<size_t>(n), 0.0);
  for (int a = 0; a < n; ++a) {
    Kahan acc;
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      acc.add(j_by_dist_[static_cast<size_t>(std::abs(a - b))] *
              double(w_.spins[static_cast<size_t>(b)]));
    }
    pair_field_[static_cast<size_t>(a)] = acc.value();
  }
}

void Chain::apply_flip(int idx, double delta) {
  int n = w_.size();
  signed char old = w_.spins[static_cast<size_t>(idx)];
  acc_.add(delta);
  ++flips_;
  w_.spins[static_cast<size_t>(idx)] = static_cast<signed char>(-old);
  double step = -2.0 * double(old);
  for (int k = 0; k < n; ++k) {
    if (k == idx) continue;
    pair_field_[static_cast<size_t>(k)] +=
        step * j_by_dist_[static_cast<size_t>(std::abs(k - idx))];
  }
}

void Chain::single_update() {
  int n = w_.size();
  int idx = static_cast<int>(rng_.uniform_int(static_cast<std::uint64_t>(n)));
  double f = pair_field_[static_cast<size_t>(idx)] + static_field_[static_cast<size_t>(idx)];
  signed char s = w_.spins[static_cast<size_t>(idx)];
  if (cfg_.update_rule == UpdateRule::metropolis) {
    double delta = 2.0 * double(s) * f;
    bool accept = delta <= 0.0 || rng_.uniform01() < std::exp(-p_.beta * delta);
    if (accept) apply_flip(idx, delta);
  } else {
    double p_plus = 1.0 / (1.0 + std::exp(-2.0 * p_.beta * f));
    signed char next = rng_.uniform01() < p_plus ? static_cast<signed char>(+1)
                                                 : static_cast<signed char>(-1);
    if (next != s) apply_flip(idx, 2.0 * double(s) * f);
  }
}

void Chain::sweep() {
  int n = w_.size();
  for (int k = 0; k < n; ++k) single_update();
  ++sweeps_done_;
  if (sweeps_done_ % 1000 == 0) rebuild_pair_fields();
}

void Chain::set_state(const SpinWindow& w) {
  if (w.lo != w_.lo || w.hi != w_.hi || w.boundary != w_.boundary)
    throw std::invalid_argument("state window mismatch");
  validate(w);
  w_ = w;
  rebuild_pair_fields();
}

EventEstimate estimate_event(const SpinWindow& shape, const DisorderField& h,
                             const ModelParams& p, const CouplingTable& t,
                             const EventSpec& ev, const ChainConfig& cfg) {
  if (cfg.thinning < 1) throw std::invalid_argument("thinning must be >= 1");
  if (cfg.burn_in < 0 || cfg.burn_in >= cfg.sweeps)
    throw std::invalid_argument("burn-in must lie inside the sweep budget");
  long long n = (cfg.sweeps - cfg.burn_in) / cfg.thinning;
  if (n < 20)
    throw std::invalid_argument(
        "insufficient samples: need at least 20 post-burn-in thinned samples");
  Chain chain(shape, h, p, t, cfg);
  std::vector<char> hits;
  hits.reserve(static_cast<size_t>(n));
  for (long long s = 1; s <= cfg.sweeps; ++s) {
    chain.sweep();
    if (s > cfg.burn_in && (s - cfg.burn_in) % cfg.thinning == 0)
      hits.push_back(evaluate_event(chain.spins(), ev) ? 1 : 0);
  }
  n = static_cast<long long>(hits.size());
  long long total = 0;
  for (char v : hits) total += v;
  EventEstimate est;
  est.samples = n;
  est.mean = double(total) / double(n);
  const int kBatches = 20;
  long long bs = n / kBatches;
  long long start = n - kBatches * bs;  // most recent 20*bs samples
  double bmeans[kBatches];
  double bbar = 0.0;
  for (int k = 0; k < kBatches; ++k) {
    long long a = start + k * bs;
    long long sum = 0;
    for (long long i = a; i < a + bs; ++i) sum += hits[static_cast<size_t>(i)];
    bmeans[k] = double(sum) / double(bs);
    bbar += bmeans[k];
  }
  bbar /= kBatches;
  double var = 0.0;
  for (int k = 0; k < kBatches; ++k) var += (bmeans[k] - bbar) * (bmeans[k] - bbar);
  var /= (kBatches - 1);
  est.std_error = std::sqrt(var / kBatches);
  est.effective_samples = est.std_error == 0.0
                              ? double(n)
                              : est.mean * (1.0 - est.mean) /
                                    (est.std_error * est.std_error);
  return est;
}

std::vector<SpinWindow> chain_snapshots(const SpinWindow& shape, const DisorderField& h,
                                        const ModelParams& p, const CouplingTable& t,
                                        const ChainConfig& cfg) {
  if (cfg.thinning < 1) throw std::invalid_argument("thinning must be >= 1");
  if (cfg.burn_in < 0 || cfg.burn_in >= cfg.sweeps)
    throw std::invalid_argument("burn-in must lie inside the sweep budget");
  Chain chain(shape, h, p, t, cfg);
  std::vector<SpinWindow> out;
  for (long long s = 1; s <= cfg.sweeps; ++s) {
    chain.sweep();
    if (s > cfg.burn_in && (s - cfg.burn_in) % cfg.thinning == 0)
      out.push_back(chain.spins());
  }
  return out;
}

}  // namespace rfim
