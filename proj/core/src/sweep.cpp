#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "cfrac/error.hpp"
#include "cfrac/value_regions.hpp"

namespace cfrac {

namespace {

struct Instance {
  std::vector<Complex> ps;
  std::vector<Complex> qs;
  Complex z;
  double theta;
  double radius;
};

std::mt19937_64 sample_generator(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

Instance draw_instance(const SweepConfig& config, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> log_modulus(-2.0, 2.0);
  std::uniform_int_distribution<std::size_t> pair_count(1, config.max_pairs);

  Instance inst;
  inst.theta = config.theta_max * unit(rng);
  std::uniform_real_distribution<double> angle(-inst.theta, inst.theta);
  const auto element = [&] { return std::polar(std::pow(10.0, log_modulus(rng)), angle(rng)); };

  const std::size_t pairs = pair_count(rng);
  for (std::size_t k = 0; k < pairs; ++k) {
    inst.qs.push_back(element());
    inst.ps.push_back(element());
  }

  const double u = std::sqrt(unit(rng));
  if (config.theorem == Theorem::kOriginDisk) {
    inst.radius = origin_disk_constant(inst.ps, inst.qs, inst.theta);
    inst.z = std::polar(inst.radius * u, angle(rng));
  } else {
    inst.radius = shifted_disk_constant(inst.ps, inst.qs);
    const double psi = 2.0 * std::numbers::pi * unit(rng);
    inst.z = Complex(inst.radius) + std::polar(inst.radius * u, psi);
  }
  return inst;
}

// 1/(q_1 + 1/(p_1 + 1/(q_2 + ... 1/(q_n + 1/(p_n + z))))) by direct
// backward evaluation; independent of the Wallis-Euler path.
Complex alternating_fraction(const Instance& inst) {
  Complex v = inst.z;
  for (std::size_t k = inst.ps.size(); k-- > 0;) v = 1.0 / (inst.qs[k] + 1.0 / (inst.ps[k] + v));
  return v;
}

}  // namespace

SweepReport run_theorem_sweep(const SweepConfig& config) {
  if (config.samples < 1) throw Error(ErrorCode::kDomain, "sweep needs at least one sample");
  if (config.max_pairs < 1) throw Error(ErrorCode::kDomain, "sweep needs max_pairs >= 1");
  const double limit =
      config.theorem == Theorem::kOriginDisk ? std::numbers::pi / 4 : std::numbers::pi / 2;
  if (!(config.theta_max >= 0.0 && config.theta_max < limit)) {
    throw Error(config.theorem == Theorem::kOriginDisk ? ErrorCode::kSectorTooWide
                                                       : ErrorCode::kDomain,
                "theta_max outside the theorem's sector range");
  }

  SweepReport report{config.samples, 0, 0, 0, -std::numeric_limits<double>::infinity(), 0,
                     config.seed};
  for (std::size_t i = 0; i < config.samples; ++i) {
    auto rng = sample_generator(config.seed, i);
    const Instance inst = draw_instance(config, rng);
    const Complex v = alternating_fraction(inst);

    double margin = 0.0;
    bool sector_ok = true;
    if (config.theorem == Theorem::kOriginDisk) {
      margin = std::abs(v) / inst.radius - 1.0;
      sector_ok = Sector(inst.theta, config.slack).contains(v);
    } else {
      margin = std::abs(v - Complex(inst.radius)) / inst.radius - 1.0;
    }
    if (std::isnan(margin)) margin = std::numeric_limits<double>::infinity();

    const bool disk_ok = margin <= config.slack;
    if (!disk_ok) ++report.disk_violations;
    if (!sector_ok) ++report.sector_violations;
    if (!disk_ok || !sector_ok) ++report.violations;
    if (margin > report.worst_margin) {
      report.worst_margin = margin;
      report.worst_sample = i;
    }
  }
  return report;
}

}  // namespace cfrac
