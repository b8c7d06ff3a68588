#include "eeqos/simulator.hpp"

#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "eeqos/csv.hpp"
#include "eeqos/effcap.hpp"
#include "eeqos/errors.hpp"

namespace eeqos {

double sample_snr(const SystemParams& params, Xoshiro256pp& rng) {
  return gamma_draw(rng, params.m, params.gamma_bar / params.m);
}

double sample_arrival(const TrafficModel& traffic, Xoshiro256pp& rng) {
  if (rng.uniform01() >= traffic.p) return 0.0;
  return exponential_draw(rng, traffic.Lbar);
}

double service_bits(double snr, double Ptx, const SystemParams& params) {
  if (snr < 0.0) throw std::domain_error("service_bits: snr must be non-negative");
  const double x = Ptx * snr / (params.Lp * params.N0 * params.Bc);
  return params.Ts * params.Bc * std::log1p(x) / std::numbers::ln2;
}

namespace {

struct Packet {
  double remaining_bits;
  std::uint64_t arrival_slot;
};

void validate(const SimConfig& c) {
  if (c.n_slots == 0) throw ConfigError("n_slots: must be at least 1");
  if (c.Ptx < 0.0) throw ConfigError("Ptx: must be non-negative");
  if (c.discard_slots >= c.n_slots)
    throw ConfigError("discard_slots: must be below n_slots");
  if (c.delay_grid_s.empty()) throw ConfigError("delay_grid_s: must not be empty");
  for (std::size_t i = 0; i < c.delay_grid_s.size(); ++i) {
    if (c.delay_grid_s[i] < 0.0)
      throw ConfigError("delay_grid_s: entries must be non-negative");
    if (i > 0 && !(c.delay_grid_s[i] > c.delay_grid_s[i - 1]))
      throw ConfigError("delay_grid_s: entries must be strictly increasing");
  }
  for (std::size_t i = 1; i < c.queue_grid_bits.size(); ++i)
    if (!(c.queue_grid_bits[i] > c.queue_grid_bits[i - 1]))
      throw ConfigError("queue_grid_bits: entries must be strictly increasing");
}

/// Smallest integer slot count k with k*Ts > t (robust to t being an exact
/// grid multiple of Ts).
std::uint64_t slots_exceeding(double t, double Ts) {
  return static_cast<std::uint64_t>(std::floor(t / Ts + 1e-9)) + 1;
}

}  // namespace

SimStats run_simulation(const SimConfig& config) {
  validate(config);
  const SystemParams& sys = config.sys;
  const TrafficModel& traffic = config.traffic;
  std::vector<double> queue_grid = config.queue_grid_bits;
  if (queue_grid.empty())
    queue_grid = {traffic.Lbar, 2.0 * traffic.Lbar, 4.0 * traffic.Lbar};

  Xoshiro256pp rng(config.seed, config.stream);
  std::deque<Packet> fifo;
  std::vector<std::uint64_t> delay_hist;  // index: delay in slots
  std::vector<std::uint64_t> queue_exceed(queue_grid.size(), 0);

  double queue_bits = 0.0;
  double arrived_total = 0.0, served_total = 0.0;
  double arrived_measured = 0.0;
  double queue_sum = 0.0;
  std::uint64_t tx_slots = 0, queue_pos_slots = 0;
  std::uint64_t packets_arrived = 0, packets_departed = 0;
  std::uint64_t delay_sum_slots = 0, delayed_packets = 0;

  for (std::uint64_t slot = 0; slot < config.n_slots; ++slot) {
    const bool measured = slot >= config.discard_slots;

    const double a = sample_arrival(traffic, rng);
    if (a > 0.0) {
      fifo.push_back({a, slot});
      queue_bits += a;
      arrived_total += a;
      if (measured) {
        arrived_measured += a;
        ++packets_arrived;
      }
    }

    const bool tx = !fifo.empty();
    if (measured && tx) ++tx_slots;

    const double snr = sample_snr(sys, rng);  // drawn every slot, used when tx
    if (tx) {
      double budget = service_bits(snr, config.Ptx, sys);
      while (budget > 0.0 && !fifo.empty()) {
        Packet& head = fifo.front();
        if (head.remaining_bits <= budget) {
          budget -= head.remaining_bits;
          served_total += head.remaining_bits;
          queue_bits -= head.remaining_bits;
          if (head.arrival_slot >= config.discard_slots) {
            const std::uint64_t d = slot - head.arrival_slot;
            if (d >= delay_hist.size()) delay_hist.resize(d + 1, 0);
            ++delay_hist[d];
            delay_sum_slots += d;
            if (d > 0) ++delayed_packets;
            ++packets_departed;
          }
          fifo.pop_front();
        } else {
          head.remaining_bits -= budget;
          served_total += budget;
          queue_bits -= budget;
          budget = 0.0;
        }
      }
      // an emptied FIFO is an exactly empty queue, not rounding dust
      if (fifo.empty()) queue_bits = 0.0;
    }

    if (measured) {
      queue_sum += queue_bits;
      if (queue_bits > 0.0) ++queue_pos_slots;
      for (std::size_t i = 0; i < queue_grid.size() && queue_bits > queue_grid[i]; ++i)
        ++queue_exceed[i];
    }
  }

  const std::uint64_t measured_slots = config.n_slots - config.discard_slots;
  const double window_s = static_cast<double>(measured_slots) * sys.Ts;

  SimStats stats;
  stats.n_slots = config.n_slots;
  stats.seed = config.seed;
  stats.stable = traffic.p * traffic.Lbar < mean_service_bits(config.Ptx, sys);
  stats.packets_arrived = packets_arrived;
  stats.packets_departed = packets_departed;
  stats.arrived_bits = arrived_total;
  stats.served_bits = served_total;
  stats.final_queue_bits = queue_bits;
  stats.p_tx_hat = static_cast<double>(tx_slots) / static_cast<double>(measured_slots);
  stats.p_idle_hat = 1.0 - stats.p_tx_hat;
  stats.p_b_hat =
      static_cast<double>(queue_pos_slots) / static_cast<double>(measured_slots);
  stats.mean_queue_bits = queue_sum / static_cast<double>(measured_slots);
  stats.mu_hat = arrived_measured / window_s;
  const double energy =
      (static_cast<double>(tx_slots) * (sys.Pc + config.Ptx) +
       static_cast<double>(measured_slots - tx_slots) * (sys.Pc + sys.Pidle)) *
      sys.Ts;
  stats.eta_hat = arrived_measured / energy;

  if (packets_departed > 0) {
    stats.p_w_hat = static_cast<double>(delayed_packets) /
                    static_cast<double>(packets_departed);
    stats.mean_delay_s = sys.Ts * static_cast<double>(delay_sum_slots) /
                         static_cast<double>(packets_departed);
  } else {
    stats.p_w_hat = std::numeric_limits<double>::quiet_NaN();
    stats.mean_delay_s = std::numeric_limits<double>::quiet_NaN();
  }

  // Suffix counts turn the delay histogram into P(D >= k slots).
  std::vector<std::uint64_t> suffix(delay_hist.size() + 1, 0);
  for (std::size_t k = delay_hist.size(); k-- > 0;)
    suffix[k] = suffix[k + 1] + delay_hist[k];
  stats.delay_ccdf.method = CcdfMethod::empirical;
  for (double t : config.delay_grid_s) {
    const std::uint64_t k = slots_exceeding(t, sys.Ts);
    const double count =
        k < suffix.size() ? static_cast<double>(suffix[k]) : 0.0;
    const double prob =
        packets_departed > 0 ? count / static_cast<double>(packets_departed) : 0.0;
    stats.delay_ccdf.points.push_back({t, prob});
  }
  for (std::size_t i = 0; i < queue_grid.size(); ++i)
    stats.queue_ccdf.push_back(
        {queue_grid[i], static_cast<double>(queue_exceed[i]) /
                            static_cast<double>(measured_slots)});
  return stats;
}

double empirical_efficiency(const SimStats& stats, const SystemParams& params,
                            double Ptx) {
  return stats.mu_hat /
         (Ptx * stats.p_tx_hat + params.Pidle * stats.p_idle_hat + params.Pc);
}

void write_stats_csv(std::ostream& os, const SimStats& stats) {
  os << "stat,value\n";
  os << "n_slots," << stats.n_slots << '\n';
  os << "seed," << stats.seed << '\n';
  os << "packets_arrived," << stats.packets_arrived << '\n';
  os << "packets_departed," << stats.packets_departed << '\n';
  os << "p_tx_hat," << fmt_g17(stats.p_tx_hat) << '\n';
  os << "p_idle_hat," << fmt_g17(stats.p_idle_hat) << '\n';
  os << "p_w_hat," << fmt_g17(stats.p_w_hat) << '\n';
  os << "p_b_hat," << fmt_g17(stats.p_b_hat) << '\n';
  os << "mean_delay_s," << fmt_g17(stats.mean_delay_s) << '\n';
  os << "mean_queue_bits," << fmt_g17(stats.mean_queue_bits) << '\n';
  os << "mu_hat," << fmt_g17(stats.mu_hat) << '\n';
  os << "eta_hat," << fmt_g17(stats.eta_hat) << '\n';
  os << "arrived_bits," << fmt_g17(stats.arrived_bits) << '\n';
  os << "served_bits," << fmt_g17(stats.served_bits) << '\n';
  os << "final_queue_bits," << fmt_g17(stats.final_queue_bits) << '\n';
  os << "stable," << (stats.stable ? 1 : 0) << '\n';
}

}  // namespace eeqos
