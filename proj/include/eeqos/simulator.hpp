#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "eeqos/delay_model.hpp"
#include "eeqos/params.hpp"
#include "eeqos/rng.hpp"

namespace eeqos {

struct SimConfig {
  SystemParams sys;
  TrafficModel traffic;
  double Ptx = 0.0;            // W, constant over the run
  std::uint64_t n_slots = 0;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;    // replication index
  std::uint64_t discard_slots = 0;  // warm-up slots excluded from statistics
  std::vector<double> delay_grid_s;     // sorted t values for the delay CCDF
  std::vector<double> queue_grid_bits;  // sorted B values for the queue CCDF
};

struct SimStats {
  DelayCcdf delay_ccdf;               // method = empirical
  std::vector<CcdfPoint> queue_ccdf;  // t field holds B in bits
  double p_tx_hat = 0.0;    // fraction of slots in transmission mode
  double p_idle_hat = 0.0;  // fraction of slots in idle mode
  double p_w_hat = 0.0;     // fraction of departed packets with delay > 0
  double p_b_hat = 0.0;     // fraction of slots with nonempty end-of-slot queue
  double mean_delay_s = 0.0;
  double mean_queue_bits = 0.0;  // end-of-slot average
  double mu_hat = 0.0;           // arrived bits per second
  double eta_hat = 0.0;          // arrived bits / consumed energy, bits/J
  double arrived_bits = 0.0;
  double served_bits = 0.0;
  double final_queue_bits = 0.0;
  std::uint64_t packets_arrived = 0;
  std::uint64_t packets_departed = 0;
  std::uint64_t n_slots = 0;
  std::uint64_t seed = 0;
  bool stable = true;  // p*Lbar < E[S] at this power; unstable runs are
                       // permitted but flagged
};

/// One SNR draw: Gamma(shape m, scale gamma_bar/m).
double sample_snr(const SystemParams& params, Xoshiro256pp& rng);

/// One arrival draw: 0 with probability 1-p, else Exp(mean Lbar) bits.
double sample_arrival(const TrafficModel& traffic, Xoshiro256pp& rng);

/// Per-slot Shannon service Ts*Bc*log2(1 + Ptx*snr/(Lp*N0*Bc)), bits.
double service_bits(double snr, double Ptx, const SystemParams& params);

/// Slot loop: arrival enters the FIFO, then the slot's service drains
/// packets fluidly; a packet fully served in its arrival slot has delay 0.
/// A slot is transmission-mode iff the buffer is nonempty after the arrival
/// step. The queue is sampled after service (end of slot).
SimStats run_simulation(const SimConfig& config);

/// Efficiency recomputed from measured mode occupancies:
/// mu_hat / (Ptx*p_tx_hat + Pidle*p_idle_hat + Pc).
double empirical_efficiency(const SimStats& stats, const SystemParams& params, double Ptx);

/// "stat,value" rows, one per scalar field.
void write_stats_csv(std::ostream& os, const SimStats& stats);

}  // namespace eeqos
