#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hubring/scenarios.hpp"

using namespace hubring;

namespace {

std::uint64_t mask_of(std::initializer_list<int> sites) {
  std::uint64_t m = 0;
  for (const int s : sites) m |= std::uint64_t{1} << (s - 1);
  return m;
}

ScenarioSpec reference_spec(double t_max = 40.0, double dt = 0.05) {
  return ScenarioSpec{"test",       default_sector(),  default_params(),
                      InitialStateSpec::symmetric(), TimeGrid(t_max, dt), std::nullopt};
}

}  // namespace

TEST_CASE("the symmetric superposition expands into its four Fock states") {
  const SectorBasis basis = enumerate_sector(default_sector());
  const QuantumState psi = build_initial_state(InitialStateSpec::symmetric(), basis);
  CHECK(std::abs(psi.norm() - 1.0) <= 1e-15);

  const FockState expected[] = {
      {mask_of({1, 4}), mask_of({4})},
      {mask_of({1, 5}), mask_of({5})},
      {mask_of({4, 8}), mask_of({4})},
      {mask_of({5, 8}), mask_of({5})},
  };
  int nonzero = 0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const std::complex<double> a = psi.amplitudes[static_cast<Eigen::Index>(k)];
    if (a != 0.0) ++nonzero;
  }
  CHECK(nonzero == 4);
  for (const FockState& s : expected) {
    CHECK(psi.amplitudes[static_cast<Eigen::Index>(basis.index(s))] == std::complex<double>(0.5));
  }

  CHECK_THROWS_AS(build_initial_state(InitialStateSpec::symmetric(), enumerate_sector({7, 2, 1})),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_initial_state(InitialStateSpec::symmetric(), enumerate_sector({8, 2, 2})),
                  std::invalid_argument);
}

TEST_CASE("product and superposition initial states") {
  const SectorBasis basis = enumerate_sector(default_sector());

  SUBCASE("a product state is one basis vector") {
    const QuantumState psi = build_initial_state(
        InitialStateSpec::product(
            {Placement{4, SiteContent::Doublon}, Placement{1, SiteContent::Up}}),
        basis);
    const auto k = static_cast<Eigen::Index>(basis.index({mask_of({1, 4}), mask_of({4})}));
    CHECK(psi.amplitudes[k] == std::complex<double>(1.0));
    CHECK(psi.norm() == 1.0);
  }

  SUBCASE("unnormalized amplitudes are normalized") {
    const QuantumState psi = build_initial_state(
        InitialStateSpec::superposition(
            {{1.0, {Placement{4, SiteContent::Doublon}, Placement{1, SiteContent::Up}}},
             {1.0, {Placement{5, SiteContent::Doublon}, Placement{8, SiteContent::Up}}}}),
        basis);
    const auto a = static_cast<Eigen::Index>(basis.index({mask_of({1, 4}), mask_of({4})}));
    const auto b = static_cast<Eigen::Index>(basis.index({mask_of({5, 8}), mask_of({5})}));
    CHECK(std::abs(psi.amplitudes[a].real() - 1.0 / std::sqrt(2.0)) <= 1e-15);
    CHECK(std::abs(psi.amplitudes[b].real() - 1.0 / std::sqrt(2.0)) <= 1e-15);
  }

  SUBCASE("conflicting placements are rejected") {
    CHECK_THROWS_AS(build_initial_state(
                        InitialStateSpec::product({Placement{4, SiteContent::Up},
                                                   Placement{4, SiteContent::Doublon},
                                                   Placement{1, SiteContent::Down}}),
                        basis),
                    std::invalid_argument);
  }
  SUBCASE("wrong particle count is rejected") {
    CHECK_THROWS_AS(build_initial_state(
                        InitialStateSpec::product({Placement{4, SiteContent::Doublon}}), basis),
                    std::invalid_argument);
  }
  SUBCASE("cancelling superpositions are rejected") {
    CHECK_THROWS_AS(
        build_initial_state(
            InitialStateSpec::superposition(
                {{1.0, {Placement{4, SiteContent::Doublon}, Placement{1, SiteContent::Up}}},
                 {-1.0, {Placement{4, SiteContent::Doublon}, Placement{1, SiteContent::Up}}}}),
            basis),
        std::invalid_argument);
  }
}

TEST_CASE("biased preparations sit beside their barriers") {
  const InitialStateSpec a = biased_initial(BiasConfig::A, 8);
  REQUIRE(a.terms.size() == 1);
  CHECK(a.terms[0].placements[0].site == 4);  // zero-potential site next to alpha*h at 3
  CHECK(a.terms[0].placements[0].content == SiteContent::Doublon);
  CHECK(a.terms[0].placements[1].site == 8);  // opposite side of the ring
  CHECK(a.terms[0].placements[1].content == SiteContent::Up);

  const InitialStateSpec b = biased_initial(BiasConfig::B, 8);
  CHECK(b.terms[0].placements[0].site == 5);  // zero-potential site next to h at 6
  CHECK(b.terms[0].placements[1].site == 1);

  CHECK_THROWS_AS(biased_initial(BiasConfig::A, 6), std::invalid_argument);
}

TEST_CASE("alpha scan grids are strictly increasing and bracket the endpoints") {
  const AlphaScanSpec scan{0.1, 1.2, 0.02};
  const auto values = scan.values();
  REQUIRE(values.size() == 56);
  CHECK(values.front() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(values.back() == doctest::Approx(1.2).epsilon(1e-12));
  for (std::size_t k = 1; k < values.size(); ++k) CHECK(values[k] > values[k - 1]);

  CHECK_THROWS_AS((AlphaScanSpec{0.5, 0.4, 0.1}.values()), std::invalid_argument);
  CHECK_THROWS_AS((AlphaScanSpec{0.1, 1.0, -0.1}.values()), std::invalid_argument);
}

TEST_CASE("scenario runs are deterministic in exact mode") {
  const ScenarioSpec spec = reference_spec(5.0, 0.05);
  const ScenarioRun first = simulate(spec);
  const ScenarioRun second = simulate(spec);
  REQUIRE(first.records.size() == second.records.size());
  for (std::size_t m = 0; m < first.records.size(); ++m) {
    CHECK(first.records[m].current_up == second.records[m].current_up);
    CHECK(first.records[m].charge_dn == second.records[m].charge_dn);
    CHECK(first.records[m].n == second.records[m].n);
  }
}

TEST_CASE("frozen dynamics produce identically zero streams") {
  ScenarioSpec spec = reference_spec(2.0, 0.25);
  spec.params.tunneling = 0.0;
  const BarrierComparisonResult result = run_barrier_comparison(spec);
  for (const ScenarioRun* run : {&result.asymmetric, &result.symmetric}) {
    for (const auto& record : run->records) {
      CHECK(record.current_up == 0.0);
      CHECK(record.current_dn == 0.0);
      CHECK(record.charge_up == 0.0);
      CHECK(record.charge_dn == 0.0);
    }
  }
}

TEST_CASE("at alpha = 1 the two biased configurations mirror each other") {
  ScenarioSpec spec = reference_spec(10.0, 0.05);
  spec.params.barrier.asymmetry = 1.0;
  const ScenarioRun a = run_direction_flip(BiasConfig::A, spec);
  const ScenarioRun b = run_direction_flip(BiasConfig::B, spec);
  REQUIRE(a.records.size() == b.records.size());
  double worst = 0.0;
  for (std::size_t m = 0; m < a.records.size(); ++m) {
    worst = std::max(worst, std::abs(a.records[m].charge_up + b.records[m].charge_up));
    worst = std::max(worst, std::abs(a.records[m].charge_dn + b.records[m].charge_dn));
    worst = std::max(worst, std::abs(a.records[m].current_up + b.records[m].current_up));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("scan points are independent of execution order") {
  const ScenarioSpec base = reference_spec(5.0, 0.05);
  const AlphaScanSpec scan{0.4, 0.6, 0.1};
  const AlphaScanResult forward = run_alpha_scan(scan, BiasConfig::A, base);
  const AlphaScanResult again = run_alpha_scan(scan, BiasConfig::A, base);
  REQUIRE(forward.points.size() == 3);
  REQUIRE(again.points.size() == 3);

  for (std::size_t p = 0; p < forward.points.size(); ++p) {
    CHECK(forward.points[p].mean_charge_up == again.points[p].mean_charge_up);
    CHECK(forward.points[p].mean_charge_dn == again.points[p].mean_charge_dn);
  }

  // A single-point scan reproduces the matching point of the full scan.
  const AlphaScanResult solo = run_alpha_scan(AlphaScanSpec{0.5, 0.5001, 0.1}, BiasConfig::A, base);
  REQUIRE(solo.points.size() == 1);
  CHECK(solo.points[0].mean_charge_up == forward.points[1].mean_charge_up);
  CHECK(solo.points[0].mean_charge_dn == forward.points[1].mean_charge_dn);
}

TEST_CASE("final_half_mean averages the trailing half of the window") {
  const TimeGrid grid(1.0, 0.25);  // 5 points
  CHECK(final_half_mean({1, 1, 4, 4, 4}, grid) == 4.0);
  CHECK_THROWS_AS(final_half_mean({1, 2}, grid), std::invalid_argument);
}

TEST_CASE("biased runs at alpha = 0.5 counter-propagate with the expected signs") {
  const ScenarioSpec base = reference_spec();
  const ScenarioRun a = run_direction_flip(BiasConfig::A, base);

  std::vector<double> q_up(a.records.size()), q_dn(a.records.size());
  for (std::size_t m = 0; m < a.records.size(); ++m) {
    q_up[m] = a.records[m].charge_up;
    q_dn[m] = a.records[m].charge_dn;
  }
  // Doublon beside the alpha*h barrier: up charge positive, down negative.
  CHECK(final_half_mean(q_up, base.grid) > 0.0);
  CHECK(final_half_mean(q_dn, base.grid) < 0.0);
}

TEST_CASE("conservation reports stay within contract on the reference run") {
  const ScenarioRun run = simulate(reference_spec(10.0, 0.05));
  CHECK(run.conservation.max_norm_error <= 1e-10);
  CHECK(run.conservation.max_energy_drift <= 1e-9);
  CHECK(run.conservation.max_particle_error <= 1e-9);
}
