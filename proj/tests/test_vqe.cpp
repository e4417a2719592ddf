#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "lvqe/solver.hpp"
#include "lvqe/vqe.hpp"

using namespace lvqe;
constexpr double kPi = std::numbers::pi;

namespace {

std::string pct_string(double fraction) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(5) << 100.0 * fraction;
  return out.str();
}

// Scripted energy backend: returns script[call] (the last entry repeats)
// and records the interaction weight of the Hamiltonian it was handed.
struct FakeEnergy {
  std::vector<double> script;
  std::vector<double> weights;
  std::vector<std::vector<double>> thetas_seen;
  std::size_t calls = 0;

  double operator()(const Circuit&, const PauliSum& h,
                    const std::vector<double>& thetas) {
    weights.push_back(h.coefficient(PauliString::from_word("XX")).real());
    thetas_seen.push_back(thetas);
    const double value = script[std::min(calls, script.size() - 1)];
    ++calls;
    return value;
  }
};

GuidedVqeConfig dimer_config() {
  GuidedVqeConfig cfg;
  cfg.model = ModelKind::Heisenberg;
  cfg.lattice = custom_lattice(2, {Edge{0, 1, 1.0}});
  return cfg;
}

void check_weights(const std::vector<double>& got,
                   const std::vector<double>& expected) {
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

}  // namespace

TEST_SUITE("vqe") {

TEST_CASE("relative error") {
  CHECK(pct_string(compute_relative_error(-18.0, -17.86106870)) == "0.77184");
  CHECK(pct_string(compute_relative_error(-21.5496, -21.51603053)) == "0.15578");
  CHECK(compute_relative_error(-10.0, -9.0) == doctest::Approx(0.1));
  CHECK(compute_relative_error(4.0, 5.0) == doctest::Approx(0.25));
  CHECK_THROWS_AS(compute_relative_error(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("nft solves a plain cosine in one move") {
  const auto f = [](const std::vector<double>& x) { return std::cos(x[0]); };
  NftOptions opt;
  opt.max_iter = 1;
  const NftResult r = nft_minimize(f, {0.3}, opt);
  CHECK(r.parameters[0] == doctest::Approx(kPi).epsilon(1e-10));
  CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(r.evaluations == 3);
  CHECK(r.iterations == 1);
}

TEST_CASE("nft recovers shift and scale") {
  const auto f = [](const std::vector<double>& x) {
    return 2.5 * std::cos(x[0] - 1.2) + 0.7;
  };
  NftOptions opt;
  opt.max_iter = 1;
  const NftResult r = nft_minimize(f, {0.0}, opt);
  CHECK(r.parameters[0] == doctest::Approx(1.2 + kPi).epsilon(1e-10));
  CHECK(r.value == doctest::Approx(0.7 - 2.5).epsilon(1e-10));
}

TEST_CASE("nft minimizes separable coordinates exactly") {
  const auto f = [](const std::vector<double>& x) {
    return std::cos(x[0]) + 0.5 * std::cos(x[1] - 0.4);
  };
  NftOptions opt;
  opt.max_iter = 2;
  const NftResult r = nft_minimize(f, {0.1, 0.2}, opt);
  CHECK(r.parameters[0] == doctest::Approx(kPi).epsilon(1e-9));
  CHECK(r.parameters[1] == doctest::Approx(0.4 + kPi).epsilon(1e-9));
  CHECK(r.value == doctest::Approx(-1.5).epsilon(1e-9));
  CHECK(r.evaluations == 5);
}

TEST_CASE("nft evaluation accounting per reset policy") {
  std::size_t count = 0;
  const auto f = [&count](const std::vector<double>& x) {
    ++count;
    return std::cos(x[0]) + std::cos(x[1]);
  };

  SUBCASE("per-sweep reset") {
    NftOptions opt;
    opt.max_iter = 4;  // two full sweeps over two parameters
    opt.reset_interval = kResetPerSweep;
    const NftResult r = nft_minimize(f, {0.1, 0.2}, opt);
    CHECK(r.evaluations == 10);  // anchor + 4x2 probes + 1 reset
    CHECK(r.evaluations == count);
  }
  SUBCASE("never reset") {
    NftOptions opt;
    opt.max_iter = 4;
    opt.reset_interval = 0;
    CHECK(nft_minimize(f, {0.1, 0.2}, opt).evaluations == 9);
  }
  SUBCASE("reset every update") {
    NftOptions opt;
    opt.max_iter = 4;
    opt.reset_interval = 1;
    CHECK(nft_minimize(f, {0.1, 0.2}, opt).evaluations == 12);
  }
}

TEST_CASE("nft leaves flat coordinates alone") {
  const auto f = [](const std::vector<double>& x) { return std::cos(x[0]); };
  NftOptions opt;
  opt.max_iter = 2;
  const NftResult r = nft_minimize(f, {0.3, 0.77}, opt);
  CHECK(r.parameters[1] == 0.77);
}

TEST_CASE("nft stop hook aborts mid-iteration and restores the probe") {
  std::size_t count = 0;
  const auto f = [&count](const std::vector<double>& x) {
    ++count;
    return std::cos(x[0]) + std::cos(x[1]);
  };
  NftOptions opt;
  opt.max_iter = 50;
  opt.should_stop = [&count] { return count >= 3; };
  const std::vector<double> x0{0.25, 0.5};
  const NftResult r = nft_minimize(f, x0, opt);
  CHECK(r.evaluations == 3);
  CHECK(r.iterations == 0);
  CHECK(r.parameters == x0);
  CHECK(r.value == doctest::Approx(std::cos(0.25 - kPi / 2.0) + std::cos(0.5)));
}

TEST_CASE("nft validation") {
  const auto f = [](const std::vector<double>& x) { return x[0]; };
  CHECK_THROWS_AS(nft_minimize({}, {0.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(nft_minimize(f, {}, {}), std::invalid_argument);
  NftOptions bad;
  bad.reset_interval = -2;
  CHECK_THROWS_AS(nft_minimize(f, {0.0}, bad), std::invalid_argument);
}

TEST_CASE("bias correction walks the weight down to the floor") {
  FakeEnergy fake;
  fake.script = {-29.5};
  GuidedVqeConfig cfg = dimer_config();
  cfg.expected_energy = -18.0;
  cfg.max_recursions = 0;
  cfg.optimizer_max_iter = 3;

  std::vector<std::pair<std::size_t, double>> callback_log;
  const Circuit ansatz = efficient_su2(2, 1);
  const VqeResult res =
      guided_vqe(cfg, ansatz, std::ref(fake),
                 [&callback_log](std::size_t i, double e) {
                   callback_log.emplace_back(i, e);
                 });

  // Anchor + 3 coordinate updates at 2 probes each.
  CHECK(res.evaluations == 7);
  REQUIRE(res.trace.size() == 7);
  // -29.5 undershoots -18 by more than 10, so each evaluation cuts the
  // weight by 0.25 for the NEXT one, until |weight| reaches the floor.
  check_weights(fake.weights, {1.6, 1.35, 1.10, 0.85, 0.85, 0.85, 0.85});
  for (std::size_t i = 0; i < res.trace.size(); ++i) {
    CHECK(res.trace[i].eval_index == i);
    CHECK(res.trace[i].energy == -29.5);
    CHECK(res.trace[i].weight == doctest::Approx(fake.weights[i]));
  }
  CHECK(res.final_weight == doctest::Approx(0.85));
  CHECK_FALSE(res.task_done);
  CHECK(res.recursions_used == 0);
  REQUIRE(res.relative_error_pct.has_value());
  CHECK(*res.relative_error_pct == doctest::Approx(100.0 * 11.5 / 18.0));

  // The callback mirrors the trace.
  REQUIRE(callback_log.size() == res.trace.size());
  for (std::size_t i = 0; i < callback_log.size(); ++i) {
    CHECK(callback_log[i].first == res.trace[i].eval_index);
    CHECK(callback_log[i].second == res.trace[i].energy);
  }
}

TEST_CASE("bias correction stays quiet without a deep undershoot") {
  const Circuit ansatz = efficient_su2(2, 1);

  SUBCASE("undershoot smaller than the trigger") {
    FakeEnergy fake;
    fake.script = {-25.0};  // below target but |delta| = 7 <= 10
    GuidedVqeConfig cfg = dimer_config();
    cfg.expected_energy = -18.0;
    cfg.max_recursions = 0;
    cfg.optimizer_max_iter = 2;
    guided_vqe(cfg, ansatz, std::ref(fake));
    check_weights(fake.weights, std::vector<double>(5, 1.6));
  }
  SUBCASE("estimate above the target") {
    FakeEnergy fake;
    fake.script = {-17.0};
    GuidedVqeConfig cfg = dimer_config();
    cfg.expected_energy = -18.0;
    cfg.max_recursions = 0;
    cfg.optimizer_max_iter = 2;
    guided_vqe(cfg, ansatz, std::ref(fake));
    check_weights(fake.weights, std::vector<double>(5, 1.6));
  }
  SUBCASE("large magnitude on the wrong side") {
    FakeEnergy fake;
    fake.script = {40.0};
    GuidedVqeConfig cfg = dimer_config();
    cfg.expected_energy = -18.0;
    cfg.max_recursions = 0;
    cfg.optimizer_max_iter = 2;
    guided_vqe(cfg, ansatz, std::ref(fake));
    check_weights(fake.weights, std::vector<double>(5, 1.6));
  }
}

TEST_CASE("early stop freezes the run inside the threshold band") {
  FakeEnergy fake;
  fake.script = {-5.0, -9.95};
  GuidedVqeConfig cfg = dimer_config();
  cfg.expected_energy = -10.0;
  cfg.initial_point = std::vector<double>(8, 0.25);

  const Circuit ansatz = efficient_su2(2, 1);
  const VqeResult res = guided_vqe(cfg, ansatz, std::ref(fake));

  // -9.95 is within 1% of -10: the second evaluation trips the stop, the
  // optimizer aborts, and no further estimates are requested.
  CHECK(res.task_done);
  CHECK(fake.calls == 2);
  CHECK(res.evaluations == 2);
  REQUIRE(res.trace.size() == 2);
  CHECK(res.trace[0] == TracePoint{0, -5.0, 1.6});
  CHECK(res.trace[1] == TracePoint{1, -9.95, 1.6});
  CHECK(res.value == -9.95);
  CHECK(res.thetas == std::vector<double>(8, 0.25));
  CHECK(res.recursions_used == 0);
  REQUIRE(res.relative_error_pct.has_value());
  CHECK(*res.relative_error_pct == doctest::Approx(0.5));
}

TEST_CASE("recursion retunes the weight towards the target") {
  // Run 1 lands at -16 (2 above target magnitude): weight goes UP by
  // 2/100 + 0.3. Run 2 lands at -20: weight comes back DOWN by the same.
  FakeEnergy fake;
  fake.script = {-16.0, -16.0, -16.0, -20.0};
  GuidedVqeConfig cfg = dimer_config();
  cfg.expected_energy = -18.0;
  cfg.max_recursions = 2;
  cfg.optimizer_max_iter = 1;

  const Circuit ansatz = efficient_su2(2, 1);
  const VqeResult res = guided_vqe(cfg, ansatz, std::ref(fake));

  CHECK(res.recursions_used == 2);
  CHECK(res.evaluations == 9);
  check_weights(fake.weights,
                {1.6, 1.6, 1.6, 1.92, 1.92, 1.92, 1.6, 1.6, 1.6});
  CHECK(res.final_weight == doctest::Approx(1.6));
  CHECK_FALSE(res.task_done);
}

TEST_CASE("recursion cap") {
  FakeEnergy fake;
  fake.script = {-16.0};
  GuidedVqeConfig cfg = dimer_config();
  cfg.expected_energy = -18.0;
  cfg.optimizer_max_iter = 1;  // defaults: max_recursions = 5

  const Circuit ansatz = efficient_su2(2, 1);
  const VqeResult res = guided_vqe(cfg, ansatz, std::ref(fake));

  CHECK(res.recursions_used == 5);
  CHECK(res.evaluations == 18);  // six optimizer runs, three evals each
  CHECK(res.final_weight == doctest::Approx(1.6 + 5.0 * 0.32).epsilon(1e-12));
  std::vector<double> expected_weights;
  for (int run = 0; run <= 5; ++run) {
    for (int k = 0; k < 3; ++k) {
      expected_weights.push_back(1.6 + 0.32 * run);
    }
  }
  check_weights(fake.weights, expected_weights);
}

TEST_CASE("warm start policy picks the restart parameters") {
  // The scripted values make run 1 move coordinate 0: the sinusoid fit of
  // (-16, -15, -17) sends it from 0.5 to 0.5 + 3 pi / 2. Run 2's anchor
  // then reveals which restart policy is active.
  const std::vector<double> x0(8, 0.5);
  GuidedVqeConfig cfg = dimer_config();
  cfg.expected_energy = -18.0;
  cfg.max_recursions = 1;
  cfg.optimizer_max_iter = 1;
  cfg.initial_point = x0;
  const Circuit ansatz = efficient_su2(2, 1);

  SUBCASE("final point") {
    FakeEnergy fake;
    fake.script = {-16.0, -15.0, -17.0};
    cfg.warm_start = WarmStart::FinalPoint;
    guided_vqe(cfg, ansatz, std::ref(fake));
    REQUIRE(fake.thetas_seen.size() >= 4);
    CHECK(fake.thetas_seen[3][0] ==
          doctest::Approx(0.5 + 1.5 * kPi).epsilon(1e-12));
    CHECK(fake.thetas_seen[3][1] == 0.5);
  }
  SUBCASE("initial point") {
    FakeEnergy fake;
    fake.script = {-16.0, -15.0, -17.0};
    cfg.warm_start = WarmStart::InitialPoint;
    guided_vqe(cfg, ansatz, std::ref(fake));
    REQUIRE(fake.thetas_seen.size() >= 4);
    CHECK(fake.thetas_seen[3] == x0);
  }
}

TEST_CASE("initial point is drawn uniformly in [0, pi/4)") {
  FakeEnergy fake;
  fake.script = {-1.0};
  GuidedVqeConfig cfg = dimer_config();
  cfg.optimizer_max_iter = 0;  // anchor evaluation only
  cfg.seed = 11;

  const Circuit ansatz = efficient_su2(2, 1);
  const VqeResult res = guided_vqe(cfg, ansatz, std::ref(fake));
  REQUIRE(res.thetas.size() == 8);
  for (const double t : res.thetas) {
    CHECK(t >= 0.0);
    CHECK(t < kPi / 4.0);
  }
  // Not all equal: the draw is per parameter.
  CHECK(*std::max_element(res.thetas.begin(), res.thetas.end()) !=
        *std::min_element(res.thetas.begin(), res.thetas.end()));

  // Deterministic per seed, different across seeds.
  FakeEnergy fake2;
  fake2.script = {-1.0};
  CHECK(guided_vqe(cfg, ansatz, std::ref(fake2)).thetas == res.thetas);
  cfg.seed = 12;
  FakeEnergy fake3;
  fake3.script = {-1.0};
  CHECK(guided_vqe(cfg, ansatz, std::ref(fake3)).thetas != res.thetas);

  // An explicit initial point wins over the draw.
  cfg.initial_point = std::vector<double>(8, 1.25);
  FakeEnergy fake4;
  fake4.script = {-1.0};
  CHECK(guided_vqe(cfg, ansatz, std::ref(fake4)).thetas ==
        std::vector<double>(8, 1.25));
}

TEST_CASE("no expected energy disables every guidance branch") {
  FakeEnergy fake;
  fake.script = {-16.0};
  GuidedVqeConfig cfg = dimer_config();
  cfg.optimizer_max_iter = 3;

  const Circuit ansatz = efficient_su2(2, 1);
  const VqeResult res = guided_vqe(cfg, ansatz, std::ref(fake));
  CHECK(res.evaluations == 7);
  check_weights(fake.weights, std::vector<double>(7, 1.6));
  CHECK(res.recursions_used == 0);
  CHECK_FALSE(res.task_done);
  CHECK_FALSE(res.relative_error_pct.has_value());
  CHECK(res.final_weight == doctest::Approx(1.6));
}

TEST_CASE("a zero target keeps bias correction but nothing else") {
  FakeEnergy fake;
  fake.script = {-16.0};  // below zero by more than the trigger
  GuidedVqeConfig cfg = dimer_config();
  cfg.expected_energy = 0.0;
  cfg.optimizer_max_iter = 3;

  const Circuit ansatz = efficient_su2(2, 1);
  const VqeResult res = guided_vqe(cfg, ansatz, std::ref(fake));
  CHECK(res.evaluations == 7);
  check_weights(fake.weights, {1.6, 1.35, 1.10, 0.85, 0.85, 0.85, 0.85});
  CHECK(res.recursions_used == 0);
  CHECK_FALSE(res.task_done);
  CHECK_FALSE(res.relative_error_pct.has_value());
}

TEST_CASE("guided vqe validation") {
  GuidedVqeConfig cfg = dimer_config();
  const Circuit ansatz = efficient_su2(2, 1);
  CHECK_THROWS_AS(guided_vqe(cfg, ansatz, EnergyFn{}), std::invalid_argument);

  FakeEnergy fake;
  fake.script = {-1.0};
  GuidedVqeConfig empty = cfg;
  empty.lattice = LatticeGraph{};
  CHECK_THROWS_AS(guided_vqe(empty, ansatz, std::ref(fake)),
                  std::invalid_argument);

  CHECK_THROWS_AS(guided_vqe(cfg, efficient_su2(3, 1), std::ref(fake)),
                  std::invalid_argument);

  GuidedVqeConfig bad = cfg;
  bad.max_recursions = -1;
  CHECK_THROWS_AS(guided_vqe(bad, ansatz, std::ref(fake)),
                  std::invalid_argument);
  bad = cfg;
  bad.threshold_pct = 0.0;
  CHECK_THROWS_AS(guided_vqe(bad, ansatz, std::ref(fake)),
                  std::invalid_argument);
  bad = cfg;
  bad.initial_point = std::vector<double>{0.1, 0.2};
  CHECK_THROWS_AS(guided_vqe(bad, ansatz, std::ref(fake)),
                  std::invalid_argument);
}

TEST_CASE("guided vqe reaches the dimer ground state with a real estimator") {
  GuidedVqeConfig cfg = dimer_config();
  cfg.expected_energy = -3.0;
  cfg.initial_weight = 1.0;
  cfg.optimizer_max_iter = 60;
  cfg.seed = 1;

  const Circuit ansatz = efficient_su2(2, 1);
  const VqeResult res = guided_vqe(cfg, ansatz);
  CHECK(res.task_done);
  REQUIRE(res.relative_error_pct.has_value());
  CHECK(*res.relative_error_pct <= 1.0);
  CHECK(res.value == doctest::Approx(-3.0).epsilon(0.02));
  CHECK(res.evaluations == res.trace.size());
}

TEST_CASE("estimator-backed overload matches an explicit exact backend") {
  GuidedVqeConfig cfg = dimer_config();
  cfg.expected_energy = -3.0;
  cfg.initial_weight = 1.0;
  cfg.optimizer_max_iter = 20;
  cfg.seed = 3;

  const Circuit ansatz = efficient_su2(2, 1);
  const VqeResult via_config = guided_vqe(cfg, ansatz);
  const VqeResult via_fn = guided_vqe(
      cfg, ansatz,
      [](const Circuit& c, const PauliSum& h, const std::vector<double>& t) {
        return estimate(c, h, t, EstimatorConfig{});
      });
  CHECK(via_config.value == via_fn.value);
  CHECK(via_config.thetas == via_fn.thetas);
  CHECK(via_config.evaluations == via_fn.evaluations);
  CHECK(via_config.trace == via_fn.trace);
}

}  // TEST_SUITE
