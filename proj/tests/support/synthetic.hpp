#pragma once

// Synthetic data generator used as the ground-truth oracle for the local
// projection tests and to produce the bundled fixture. It plants known
// coefficients and builds inputs bottom-up, without calling the estimator.

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "stancelp/indicator.hpp"
#include "stancelp/lp.hpp"
#include "stancelp/market.hpp"

namespace stancelp::synthetic {

struct Spec {
  int events = 47;
  int horizons = 15;
  // Planted sentiment coefficient per horizon.
  std::function<double(int)> beta = [](int) { return 0.05; };
  double intercept = 0.001;
  // ffr, fg, ap, shadow-rate coefficients.
  std::array<double, 4> controls_beta = {0.004, -0.003, 0.002, 0.0015};
  double noise_sd = 0.01;
  std::uint64_t seed = 1;
  int spacing = 20;  // trading days between consecutive events
  // When true, one event is dated on a Saturday before its anchor Monday.
  bool weekend_event = false;
};

struct Event {
  std::string event_id;
  Date event_date;
  Date anchor_date;
  std::uint64_t dovish = 0, hawkish = 0, neutral = 0;
  double sentiment = 0.0;  // (D - H) / (D + H)
  ControlRow controls;
  std::vector<double> outcomes;  // planted outcome per horizon
};

struct Data {
  std::vector<Event> events;
  MarketSeries market;
  ControlSeries controls;
  std::uint64_t seed = 0;
};

Data Generate(const Spec& spec);

std::vector<IndicatorPoint> Indicators(const Data& data);
std::vector<EventRef> Refs(const Data& data);

// A regression dataset drawn directly from the model, for Monte Carlo work.
RegressionDataset Dataset(int n, double beta, double noise_sd, std::uint64_t seed, int trial);

// Writes manifest, transcripts, labels, lexicon, market and control CSVs and
// run configs under dir.
void WriteFixture(const Data& data, const std::filesystem::path& dir, std::uint64_t run_seed);

// Same market and controls, but every Chair turn holds two sentences sharing
// one stance, so turn majorities equal the sentence labels.
void WriteUnanimousFixture(const Data& data, const std::filesystem::path& dir,
                           std::uint64_t run_seed);

}  // namespace stancelp::synthetic
