// ============================================================================
// harness.cpp -- windowed trial execution and Monte Carlo aggregation
// ============================================================================
#include "byzfuse/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "byzfuse/baselines.hpp"
#include "byzfuse/model.hpp"

namespace byzfuse {

namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr std::uint64_t kSideInfoStream = 1ULL << 63;

struct Partial {
  std::size_t windows = 0;
  std::size_t fc_errors = 0;
  std::size_t cv_errors = 0;
  std::size_t mr_errors = 0;
  std::size_t mrh_errors = 0;
  std::vector<double> frac_sum;
  std::vector<double> frac_sq;
  double gain_sum = 0.0;
  double gain_sq = 0.0;
  double identified_ratio = 0.0;
  double false_identification_ratio = 0.0;
  double unidentified_ratio = 0.0;
};

Partial run_trial(const RunContext& ctx, std::size_t trial) {
  const ExperimentConfig& cfg = *ctx.config;
  Rng rng = make_stream(cfg.seed, trial);
  World world = make_world(ctx, rng);
  std::bernoulli_distribution hypothesis(cfg.window_prior);

  Partial p;
  const auto t_len = static_cast<std::size_t>(cfg.window_length);
  p.frac_sum.assign(t_len, 0.0);
  p.frac_sq.assign(t_len, 0.0);
  WindowRecord last;
  for (int w = 0; w < cfg.windows; ++w) {
    const Bit h = hypothesis(rng) ? Bit{1} : Bit{0};
    last = run_window(world, ctx, h, rng);
    ++p.windows;
    p.fc_errors += last.fc_decision != h;
    p.cv_errors += last.cv_decision != h;
    p.mr_errors += last.mr_decision != h;
    p.mrh_errors += last.mrh_decision != h;
    for (std::size_t t = 0; t < t_len; ++t) {
      const double f = last.fraction_correct(t);
      p.frac_sum[t] += f;
      p.frac_sq[t] += f * f;
    }
    const double gain = last.fraction_correct(t_len - 1) - last.fraction_correct(0);
    p.gain_sum += gain;
    p.gain_sq += gain * gain;
  }
  const double n = cfg.n_sensors;
  const int honest = last.n_sensors - last.n_byzantine;
  p.identified_ratio = last.identified_byzantine / n;
  p.unidentified_ratio = (last.n_byzantine - last.identified_byzantine) / n;
  p.false_identification_ratio =
      honest > 0 ? static_cast<double>(last.identified_honest) / honest : 0.0;
  return p;
}

unsigned resolve_threads(unsigned requested, std::size_t work) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(work, 1)));
}

std::vector<Partial> run_trials(const RunContext& ctx, const RunOptions& opts) {
  const auto n = static_cast<std::size_t>(ctx.config->trials);
  std::vector<Partial> out(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= n) return;
      try {
        out[k] = run_trial(ctx, k);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  const unsigned threads = resolve_threads(opts.threads, n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

Estimate binomial_estimate(std::size_t successes, std::size_t n) {
  if (n == 0) return {};
  const double p = static_cast<double>(successes) / static_cast<double>(n);
  return {p, kZ95 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)), n};
}

Estimate sample_estimate(double sum, double sum_sq, std::size_t n) {
  if (n == 0) return {};
  const double dn = static_cast<double>(n);
  const double mean = sum / dn;
  if (n == 1) return {mean, 0.0, n};
  const double var = std::max(0.0, (sum_sq - dn * mean * mean) / (dn - 1.0));
  return {mean, kZ95 * std::sqrt(var / dn), n};
}

RunContext RunContext::from_config(const ExperimentConfig& cfg) {
  RunContext ctx;
  ctx.config = &cfg;
  ctx.model = cfg.model;
  ctx.sensor_op = clamp_operating_point(
      operating_point_for_lr_threshold(cfg.sensor_tau, cfg.model, cfg.allow_quadrature));
  ctx.rates = report_rates(ctx.sensor_op);
  ctx.human_avg = averaged_human_roc(cfg.human_dist, cfg.model, cfg.allow_quadrature);
  ctx.alpha_e = cfg.effective_alpha_e();
  ctx.kappa = cfg.effective_kappa();
  return ctx;
}

namespace {

void draw_thresholds(World& world, const ExperimentConfig& cfg, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (HumanState& h : world.humans) {
    h.xi = cfg.human_dist.mu_tau + cfg.human_dist.sigma_tau * gauss(rng);
    const OperatingPoint op =
        clamp_operating_point(human_operating_point(h.xi, cfg.model, cfg.allow_quadrature));
    h.beta = op.pd;
    h.gamma = op.pf;
  }
}

}  // namespace

World make_world(const RunContext& ctx, Rng& rng) {
  const ExperimentConfig& cfg = *ctx.config;
  World world;
  world.topology = build_topology(cfg.topology, cfg.n_sensors, cfg.n_humans, rng);

  const auto n = static_cast<std::size_t>(cfg.n_sensors);
  const auto n_byz = static_cast<std::size_t>(std::llround(cfg.alpha * cfg.n_sensors));
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  world.byzantine.assign(n, 0);
  for (std::size_t k = 0; k < n_byz; ++k) world.byzantine[order[k]] = 1;

  world.humans.resize(cfg.n_humans);
  for (int m = 0; m < cfg.n_humans; ++m) {
    HumanState& h = world.humans[m];
    h.id = m;
    h.connected = world.topology.sensors_of_human[m];
  }
  draw_thresholds(world, cfg, rng);
  world.fc = FcState::initial(cfg.n_sensors, ctx.kappa, cfg.eta, cfg.delta_step,
                              cfg.reputation_rule);
  return world;
}

WindowRecord run_window(World& world, const RunContext& ctx, Bit hypothesis, Rng& rng) {
  const ExperimentConfig& cfg = *ctx.config;
  const SignalModel& model = ctx.model;
  const double mu = hypothesis ? model.mu1 : model.mu0;
  const double sd = std::sqrt(hypothesis ? model.var1 : model.var0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const auto n = static_cast<std::size_t>(cfg.n_sensors);
  const auto m = static_cast<std::size_t>(cfg.n_humans);
  if (cfg.threshold_draw == ThresholdDraw::window) draw_thresholds(world, cfg, rng);
  for (HumanState& h : world.humans) human_window_init(h, ctx.alpha_e, cfg.window_prior);

  WindowRecord rec;
  rec.hypothesis = hypothesis;
  rec.n_humans = cfg.n_humans;
  rec.n_sensors = cfg.n_sensors;
  rec.correct_humans.assign(cfg.window_length, 0);

  std::vector<Bit> reports(n);
  std::vector<Bit> raw(m);
  std::vector<Bit> decisions(m);
  std::vector<SensorInput> inputs;
  for (int t = 0; t < cfg.window_length; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const Bit v = sensor_decide(mu + sd * gauss(rng), cfg.sensor_tau, model);
      reports[i] = world.byzantine[i] ? Bit(1 - v) : v;
    }
    for (std::size_t k = 0; k < m; ++k)
      raw[k] = human_decide_raw(mu + sd * gauss(rng), world.humans[k].xi, model);

    for (std::size_t k = 0; k < m; ++k) {
      HumanState& h = world.humans[k];
      if (t == 0) {
        decisions[k] = human_first_step(h, raw[k], cfg.kappa_prime);
        continue;
      }
      inputs.clear();
      for (int i : h.connected)
        inputs.push_back({reports[i], ctx.rates,
                          cfg.exclude_identified && world.fc.identified[i] != 0});
      decisions[k] = human_step(h, raw[k], inputs, cfg.kappa_prime);
    }
    rec.correct_humans[t] = static_cast<int>(
        std::count(decisions.begin(), decisions.end(), hypothesis));
  }

  rec.fc_decision = fc_decide(decisions, ctx.kappa);
  const std::vector<Bit>& voters =
      cfg.baseline_human_bits == BaselineHumanBits::raw ? raw : decisions;
  BaselineInputs in{raw, reports, ctx.alpha_e, ctx.sensor_op, ctx.human_avg, cfg.window_prior};
  rec.cv_decision = cv_fuse(in);
  rec.mr_decision = mr_fuse(voters, reports);
  rec.mrh_decision = mrh_fuse(voters);

  BeliefSnapshot snap;
  snap.edges.reserve(world.topology.edge_count());
  for (const HumanState& h : world.humans)
    for (std::size_t k = 0; k < h.connected.size(); ++k)
      snap.edges.push_back({h.id, h.connected[k], h.beliefs[k]});
  reputation_update(world.fc, snap, world.topology);

  for (std::size_t i = 0; i < n; ++i) {
    rec.n_byzantine += world.byzantine[i];
    if (world.fc.identified[i]) {
      if (world.byzantine[i])
        ++rec.identified_byzantine;
      else
        ++rec.identified_honest;
    }
  }
  return rec;
}

SideInfoMetrics run_side_info(const ExperimentConfig& cfg, const OperatingPoint& human_avg) {
  SideInfoMetrics out;
  out.beta_side = cfg.beta_side;
  out.gamma_side = cfg.gamma_side;
  out.human_avg = human_avg;
  const SideInfoQuality q{cfg.beta_side, cfg.gamma_side};
  out.analytic = side_info_errors(q, human_avg, Priors::from_pi1(cfg.window_prior));

  const auto draws = static_cast<std::size_t>(cfg.side_info_draws);
  out.draws = draws;
  if (draws == 0) return out;

  Rng rng = make_stream(cfg.seed, kSideInfoStream);
  std::bernoulli_distribution hyp(cfg.window_prior);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::size_t err_none = 0, err_or = 0, err_and = 0;
  for (std::size_t k = 0; k < draws; ++k) {
    const Bit h = hyp(rng) ? Bit{1} : Bit{0};
    const double xi = cfg.human_dist.mu_tau + cfg.human_dist.sigma_tau * gauss(rng);
    const double mu = h ? cfg.model.mu1 : cfg.model.mu0;
    const double sd = std::sqrt(h ? cfg.model.var1 : cfg.model.var0);
    const Bit b = human_decide_raw(mu + sd * gauss(rng), xi, cfg.model);
    const Bit w = unit(rng) < (h ? q.beta_side : q.gamma_side) ? Bit{1} : Bit{0};
    err_none += b != h;
    err_or += or_combine(b, w) != h;
    err_and += and_combine(b, w) != h;
  }
  out.mc_none = binomial_estimate(err_none, draws);
  out.mc_or = binomial_estimate(err_or, draws);
  out.mc_and = binomial_estimate(err_and, draws);
  return out;
}

TrialMetrics run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  cfg.validate();
  const RunContext ctx = RunContext::from_config(cfg);
  TrialMetrics out;
  out.side = run_side_info(cfg, ctx.human_avg);
  if (!cfg.simulate_network) return out;

  const std::vector<Partial> parts = run_trials(ctx, opts);
  const auto t_len = static_cast<std::size_t>(cfg.window_length);
  Partial total;
  total.frac_sum.assign(t_len, 0.0);
  total.frac_sq.assign(t_len, 0.0);
  double id_sum = 0, id_sq = 0, fid_sum = 0, fid_sq = 0, un_sum = 0, un_sq = 0;
  for (const Partial& p : parts) {  // trial order
    total.windows += p.windows;
    total.fc_errors += p.fc_errors;
    total.cv_errors += p.cv_errors;
    total.mr_errors += p.mr_errors;
    total.mrh_errors += p.mrh_errors;
    for (std::size_t t = 0; t < t_len; ++t) {
      total.frac_sum[t] += p.frac_sum[t];
      total.frac_sq[t] += p.frac_sq[t];
    }
    total.gain_sum += p.gain_sum;
    total.gain_sq += p.gain_sq;
    id_sum += p.identified_ratio;
    id_sq += p.identified_ratio * p.identified_ratio;
    fid_sum += p.false_identification_ratio;
    fid_sq += p.false_identification_ratio * p.false_identification_ratio;
    un_sum += p.unidentified_ratio;
    un_sq += p.unidentified_ratio * p.unidentified_ratio;
  }
  out.trials = parts.size();
  out.windows = total.windows;
  out.fc_error = binomial_estimate(total.fc_errors, total.windows);
  out.cv_error = binomial_estimate(total.cv_errors, total.windows);
  out.mr_error = binomial_estimate(total.mr_errors, total.windows);
  out.mrh_error = binomial_estimate(total.mrh_errors, total.windows);
  out.frac_correct.resize(t_len);
  for (std::size_t t = 0; t < t_len; ++t)
    out.frac_correct[t] = sample_estimate(total.frac_sum[t], total.frac_sq[t], total.windows);
  out.correct_gain = sample_estimate(total.gain_sum, total.gain_sq, total.windows);
  out.identified_ratio = sample_estimate(id_sum, id_sq, parts.size());
  out.false_identification_ratio = sample_estimate(fid_sum, fid_sq, parts.size());
  out.unidentified_byzantine_ratio = sample_estimate(un_sum, un_sq, parts.size());
  return out;
}

bool is_side_info_axis(std::string_view axis) {
  return axis == "beta_side" || axis == "gamma_side";
}

std::vector<SweepRow> sweep(const ExperimentConfig& cfg, std::string_view axis,
                            std::span<const double> values, const RunOptions& opts) {
  if (!is_numeric_key(axis))
    throw ConfigError("sweep_axis", "unknown sweep axis '" + std::string(axis) + "'");
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    SweepRow row;
    row.value = v;
    row.config = cfg;
    row.config.sweep_axis.clear();
    row.config.sweep_values.clear();
    set_numeric(row.config, axis, v);
    if (is_side_info_axis(axis)) row.config.simulate_network = false;
    row.metrics = run_experiment(row.config, opts);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace byzfuse
